"""Shared test oracles.

Everything here recomputes results straight from the definitions, using
itertools-based enumeration instead of the library's search/backtracking
code, so that production outputs are checked against an independent route.
"""
from itertools import combinations, permutations

import pytest


def all_perms(n):
    return permutations(range(1, n + 1))


def order_isomorphic(vals, pat):
    return all((vals[a] < vals[b]) == (pat[a] < pat[b])
               for a in range(len(pat)) for b in range(a + 1, len(pat)))


def naive_contains_classical(p, pat):
    n, m = len(p), len(pat)
    return any(order_isomorphic([p[i - 1] for i in pos], pat)
               for pos in combinations(range(1, n + 1), m))


def naive_is_H(p, k, pos):
    vals = [p[i - 1] for i in pos]
    if len(pos) != k or any(a >= b for a, b in zip(vals, vals[1:])):
        return False
    return any(p[j - 1] > p[j] for j in range(pos[-2], pos[-1]))


def naive_is_Q(p, k, pos):
    if len(pos) != k:
        return False
    vals = [p[i - 1] for i in pos]
    gk = list(range(1, k - 1)) + [k, k - 1]
    if not order_isomorphic(vals, gk):
        return False
    run = [p[j - 1] for j in range(pos[-2], pos[-1] + 1)]
    return all(a < b for a, b in zip(run[:-2], run[1:-1])) and run[-2] > run[-1]


def naive_has_H(p, k):
    return any(naive_is_H(p, k, pos)
               for pos in combinations(range(1, len(p) + 1), k))


def naive_has_Q(p, k):
    return any(naive_is_Q(p, k, pos)
               for pos in combinations(range(1, len(p) + 1), k))


def naive_hq_above(p, k, row):
    """Is there an H(k) or Q(k) occurrence using only values above row?"""
    for pos in combinations(range(1, len(p) + 1), k):
        if min(p[i - 1] for i in pos) > row and (naive_is_H(p, k, pos) or naive_is_Q(p, k, pos)):
            return True
    return False


def naive_avoiders(n, predicates):
    """All of S_n avoiding every predicate(p) -> bool containment check."""
    return [p for p in all_perms(n) if not any(pred(p) for pred in predicates)]


def oracle_phi_selection(p, k):
    """Filter-chain reading of the forward protocol over all occurrences."""
    occs = []
    for pos in combinations(range(1, len(p) + 1), k):
        if naive_is_H(p, k, pos):
            occs.append(("H", pos))
        if naive_is_Q(p, k, pos):
            occs.append(("Q", pos))
    if not occs:
        return None
    top = max(p[pos[0] - 1] for _, pos in occs)
    occs = [o for o in occs if p[o[1][0] - 1] == top]
    for j in range(1, k - 1):
        left = min(o[1][j] for o in occs)
        occs = [o for o in occs if o[1][j] == left]
    hs = [pos for kind, pos in occs if kind == "H"]
    if hs:
        kind, sel = "H", max(hs, key=lambda pos: p[pos[-1] - 1])
    else:
        qs = [pos for kind_, pos in occs if kind_ == "Q"]
        kind, sel = "Q", min(qs, key=lambda pos: pos[-1])
    return kind, tuple((p[c - 1], c) for c in sel)


def oracle_psi_selection(q, k):
    """Filter-chain reading of the reverse protocol over all occurrences."""
    fpat = list(range(2, k + 1)) + [1]
    occs = [pos for pos in combinations(range(1, len(q) + 1), k)
            if order_isomorphic([q[i - 1] for i in pos], fpat)]
    if not occs:
        return None
    for j in range(k - 1, -1, -1):
        low = min(q[pos[j] - 1] for pos in occs)
        occs = [pos for pos in occs if q[pos[j] - 1] == low]
    return tuple((q[c - 1], c) for c in occs[0])


def catalan(n):
    c = [1]
    for m in range(1, n + 1):
        c.append(sum(c[i] * c[m - 1 - i] for i in range(m)))
    return c[n]


@pytest.fixture(scope="session")
def class_cache():
    """Memoized avoidance-class lists shared by the expensive tests."""
    from descentbij import avoiders
    from descentbij.patterns import F, G, special_h, special_q

    cache = {}

    def get(side, n, k):
        key = (side, n, k)
        if key not in cache:
            specs = {"G": [G(k)], "F": [F(k)],
                     "HQ": [special_h(k), special_q(k)]}[side]
            cache[key] = list(avoiders(n, specs))
        return cache[key]

    return get
