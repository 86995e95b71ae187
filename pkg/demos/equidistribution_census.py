#!/usr/bin/env python3
"""A small census: the refined equidistribution made visible.

For k = 3 both avoidance classes are counted by the Catalan numbers, and for
every k the two classes share their whole descent-set (hence major-index)
distribution.  The census below re-derives this at desk scale.

Run:  python3 demos/equidistribution_census.py
"""
from descentbij import distribution, dt_counts, render_descent_key

print("class sizes for k = 3 (both sides Catalan):")
for n in range(9):
    g = distribution(n, 3, "G", "descents")
    f = distribution(n, 3, "F", "descents")
    print(f"  n={n}: |G-avoiders|={g.total():5d}  |F-avoiders|={f.total():5d}")

print("\ndescent-set distribution at n = 5, k = 4 (side by side):")
g = distribution(5, 4, "G", "descents")
f = distribution(5, 4, "F", "descents")
for key in sorted(set(g.entries) | set(f.entries)):
    label = render_descent_key(key) or "(none)"
    print(f"  D = {label:8s}  G-side {g.entries.get(key, 0):3d}   "
          f"F-side {f.entries.get(key, 0):3d}")
assert g.entries == f.entries

print("\nmajor-index distribution at n = 6, k = 3:")
g = distribution(6, 3, "G", "maj")
f = distribution(6, 3, "F", "maj")
for key in sorted(g.entries):
    print(f"  maj = {key:2d}: {g.entries[key]:3d} on each side")
assert g.entries == f.entries

print("\ncounts at the periodic descent sets {t, 2t, ...}:")
for t in (1, 2, 3):
    for n in (6, 7, 8):
        pair = dt_counts(n, 3, t)
        assert pair[0] == pair[1]
        print(f"  t={t} n={n}: {pair[0]} avoiders on each side")
