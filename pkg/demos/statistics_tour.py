#!/usr/bin/env python3
"""A tour of the permutation statistics on one worked example.

Run:  python3 demos/statistics_tour.py
"""
from descentbij import (
    ascent_set,
    blocks,
    descent_set,
    inversion_number,
    major_index,
    parse,
    ranks,
    to_text,
)

p = parse("1,3,5,7,6,8,9,4,10,2,11")
print("permutation      :", to_text(p))
print("descent set      :", descent_set(p))
print("ascent set       :", ascent_set(p))
print("major index      :", major_index(p), "(= sum of descents)")
print("inversions       :", inversion_number(p))

print("\nascending-run blocks (position ranges and their values):")
for start, end in blocks(p):
    run = ",".join(str(v) for v in p[start - 1:end])
    print(f"  positions {start}..{end}: {run}")

print("\nranks (longest increasing subsequence ending at each position):")
r = ranks(p)
print(" ", r)
print("  positions with rank >= 5:", [i + 1 for i, v in enumerate(r) if v >= 5])
print("  (these are the entries the refill bijection rearranges for k = 6)")
