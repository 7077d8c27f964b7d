"""Writes corpus/catalog.jsonl.

Expected values are written down from closed forms, not read back from the
engine; only the certificate (a hint that is re-verified on every load)
comes from `bscycles bfunction`.
"""
import json
import subprocess
import sys

import sympy as sp

s = sp.Symbol("s")

# f, roots of b with multiplicity, expected nilpotency order per alpha
CATALOG = [
    ("x", {-1: 1}, {"0": 1, "1/2": 0, "1": 1, "-1": 1}),
    ("x^2", {-1: 1, sp.Rational(-1, 2): 1}, {"0": 1, "1/2": 1, "1/3": 0}),
    ("x^3", {-1: 1, sp.Rational(-1, 3): 1, sp.Rational(-2, 3): 1},
     {"0": 1, "1/3": 1, "2/3": 1, "1/2": 0}),
    ("x^4", {-1: 1, sp.Rational(-1, 4): 1, sp.Rational(-1, 2): 1, sp.Rational(-3, 4): 1},
     {"1/4": 1, "1/2": 1, "1/3": 0}),
    ("x*y", {-1: 2}, {"0": 2, "1/2": 0}),
    ("x^2 + y^2", {-1: 2}, {"0": 2, "1/3": 0}),
    ("x^2 + y^3", {-1: 1, sp.Rational(-5, 6): 1, sp.Rational(-7, 6): 1},
     {"0": 1, "1/6": 1, "-1/6": 1, "5/6": 1, "1/2": 0}),
]

PROVENANCE = {
    "expected_b": "derived: closed-form root product",
    "expected_lambda_classes": "derived: roots of expected_b modulo Z",
    "expected_nilpotency": "derived: Jordan block sizes of the local monodromy "
                           "(smooth or quasi-homogeneous isolated: 1, normal crossing: 2); "
                           "0 where -alpha misses roots + Z",
    "certificate": "derived: ansatz search, re-verified on load",
}


def rat(q):
    q = sp.Rational(q)
    return str(q.p) if q.q == 1 else f"{q.p}/{q.q}"


def main(binary, out_path):
    with open(out_path, "w") as out:
        for f, roots, nilpotency in CATALOG:
            b = sp.Poly(sp.prod([(s - r) ** m for r, m in roots.items()]), s)
            coeffs = [rat(c) for c in reversed(b.all_coeffs())]
            classes = sorted({sp.Rational(r) - sp.floor(r) for r in roots})
            report = json.loads(subprocess.run([binary, "bfunction", "--f", f], check=True,
                                               capture_output=True, text=True).stdout)
            cert = {k: report[k] for k in ("f", "b", "P", "bounds", "backend", "verified")}
            record = {
                "f": f,
                "expected_b": coeffs,
                "expected_lambda_classes": [rat(c) for c in classes],
                "expected_nilpotency": nilpotency,
                "certificate": cert,
                "provenance": PROVENANCE,
            }
            out.write(json.dumps(record, sort_keys=True) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
