#!/usr/bin/env python3
"""Arbitrary-precision reference values frozen into the C++ tests.

Reads the case-study document directly and recomputes every stage with
mpmath at 40 digits using the plain product formulas (no logarithms, no
sorting). Run it after changing the dataset and update the constants in
tests/reference_values.hpp.
"""
import json
import pathlib

from mpmath import mp, mpf

mp.dps = 40
ROOT = pathlib.Path(__file__).resolve().parents[2]
doc = json.loads((ROOT / "data/study/reference_study.json").read_text())


def nth_root_of_product(values):
    return mp.fprod(values) ** (mpf(1) / len(values))


def show(label, values):
    print(label, ", ".join(mp.nstr(v, 17) for v in values))


print("# screening")
scores = []
for barrier, row in zip(doc["screening"]["barriers"], doc["screening"]["ratings"]):
    lo = min(mpf(t[0]) for t in row)
    mid = nth_root_of_product([mpf(t[1]) for t in row])
    hi = max(mpf(t[2]) for t in row)
    scores.append((lo + mid + hi) / 3)
    show(barrier["id"], [lo, mid, hi, scores[-1]])
show("threshold", [sum(scores) / len(scores)])

print("# ranking")
matrix = [[tuple(mpf(str(x)) for x in cell) for cell in row] for row in doc["ranking"]["matrix"]]
means = [tuple(nth_root_of_product([c[k] for c in row]) for k in range(3)) for row in matrix]
total = tuple(sum(r[k] for r in means) for k in range(3))
inverse = (1 / total[2], 1 / total[1], 1 / total[0])
weights = [tuple(r[k] * inverse[k] for k in range(3)) for r in means]
averaged = [sum(w) / 3 for w in weights]
normalized = [a / sum(averaged) for a in averaged]
for i, crit in enumerate(doc["ranking"]["criteria"]):
    show(crit["id"] + " r", means[i])
    show(crit["id"] + " w", weights[i])
    show(crit["id"] + " M N", [averaged[i], normalized[i]])
show("total", total)
show("inverse", inverse)

print("# small cases")
show("gm(7,7,7,8)", [nth_root_of_product([mpf(7), mpf(7), mpf(7), mpf(8)])])
show("gm(10,9,9,10)", [nth_root_of_product([mpf(10), mpf(9), mpf(9), mpf(10)])])
show("gm(10,9,10,10)", [nth_root_of_product([mpf(10), mpf(9), mpf(10), mpf(10)])])
show("product", [mpf("0.4911269") * mpf("0.0625397"), mpf("0.593166") * mpf("0.0748270"),
                 mpf("0.723203") * mpf("0.0908207")])
show("1/(6,7,8)", [1 / mpf(8), 1 / mpf(7), 1 / mpf(6)])
