"""Independent check of b-function certificates with sympy.

Reads certificate records (one JSON object per line) and, for integer
s = 0..D, applies P to f^(s+1) by plain differentiation and compares with
b(s) f^s. After dividing by f^s both sides are polynomials in s of degree
below D, so agreement at these points proves the functional equation.
"""
import json
import sys

import sympy as sp

VARS = sp.symbols("x y z")


def check(record):
    f = sp.sympify(record["f"].replace("^", "**"))
    terms = record["P"]
    n = len(terms[0]["x"])
    degree = max(sum(t["d"]) + t["s"] for t in terms) + len(record["b"])
    for sv in range(degree + 1):
        lhs = 0
        for t in terms:
            g = f ** (sv + 1)
            for i in range(n):
                if t["d"][i]:
                    g = sp.diff(g, VARS[i], t["d"][i])
            for i in range(n):
                g *= VARS[i] ** t["x"][i]
            lhs += sp.Rational(t["c"]) * sv ** t["s"] * g
        b = sum(sp.Rational(c) * sv**k for k, c in enumerate(record["b"]))
        if sp.expand(lhs - b * f**sv) != 0:
            return False
    return True


def main(path):
    failed = False
    s = sp.Symbol("s")
    for line in open(path):
        if not line.strip():
            continue
        record = json.loads(line)
        cert = record.get("certificate", record)
        ok = check(cert)
        b = sum(sp.Rational(c) * s**k for k, c in enumerate(cert["b"]))
        print(cert["f"], sp.factor(b), "ok" if ok else "FAILED")
        failed = failed or not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
