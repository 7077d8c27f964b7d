"""Runs every CLI command on sample inputs and validates the JSON against
the shipped schema. Also runs each command twice and compares bytes."""
import json
import subprocess
import sys

import jsonschema

JOBS = [
    ["bfunction", "--f", "x^2"],
    ["bfunction", "--f", "x^2 + y^3", "--check-groebner"],
    ["bfunction", "--f", "x*y"],
    ["nearby", "--f", "x", "--alpha", "0"],
    ["nearby", "--f", "x^2", "--alpha", "1/2"],
    ["nearby", "--f", "x^2 + y^3", "--alpha", "-1/6"],
    ["nearby", "--f", "x", "--alpha", "1/2"],
    ["vanishing", "--f", "x*y"],
    ["vanishing", "--f", "x"],
    ["jordan", "--alpha", "1/3", "--m", "3"],
    ["jordan", "--alpha", "1/2", "--m", "2", "--f", "x^2"],
    ["corpus", "run", "--output", "json"],
]


def main(binary, schema_path, corpus_path):
    schema = json.load(open(schema_path))
    validator = jsonschema.Draft202012Validator(schema)
    failed = False
    for job in JOBS:
        args = [binary] + job
        if job[0] == "corpus":
            args += ["--file", corpus_path]
        first = subprocess.run(args, capture_output=True, text=True)
        second = subprocess.run(args, capture_output=True, text=True)
        errors = []
        if first.returncode != 0:
            errors.append(f"exit {first.returncode}: {first.stderr.strip()}")
        else:
            errors += [e.message for e in validator.iter_errors(json.loads(first.stdout))]
        if first.stdout != second.stdout:
            errors.append("output differs between two runs")
        print(" ".join(job), "ok" if not errors else "FAILED")
        for e in errors[:5]:
            print("   ", e)
        failed = failed or bool(errors)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:4]))
