#!/usr/bin/env python3
"""Both bijection routes on small inputs, with the rewrite trace shown.

Route 1 (refill): entries of rank >= k-1 are redistributed block by block,
largest-eligible-first; the inverse hands out smallest-eligible-first.

Route 2 (rewrite): the extremal H/Q occurrence is rewritten into an F-shaped
configuration until none remains; the reverse protocol undoes it step by
step.  The two routes compose into a descent-preserving bijection between
the G(k)-avoiders and the F(k)-avoiders.

Run:  python3 demos/bijection_walkthrough.py
"""
from descentbij import (
    descent_set,
    f_map,
    g_map,
    parse,
    phi_map,
    phi_select,
    psi_map,
    theta_f_to_g,
    theta_g_to_f,
    to_text,
)

print("--- refill route (k = 6) ---")
p = parse("1,3,5,7,6,8,9,4,10,2,11")
q = f_map(p, 6)
print("p        :", to_text(p), "  descents", descent_set(p))
print("f(p)     :", to_text(q), "  descents", descent_set(q))
print("g(f(p))  :", to_text(g_map(q, 6)))

print("\n--- rewrite route (k = 3) ---")
p = parse("1,3,2,4")
print("p        :", to_text(p))
print("selection:", phi_select(p, 3))
print("trace    : (index kind case squares result)")
out = phi_map(p, 3, trace=lambda line: print("   ", line))
print("phi(p)   :", to_text(out))
print("psi back :", to_text(psi_map(out, 3)))

print("\n--- composed bijection (k = 6) ---")
p = parse("1,3,5,7,6,8,9,4,10,2,11")
th = theta_g_to_f(p, 6)
print("theta(p) :", to_text(th), "  descents", descent_set(th))
print("inverse  :", to_text(theta_f_to_g(th, 6)))
