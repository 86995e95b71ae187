"""Rank-based refill bijections.

Both maps leave every entry of rank at most k-2 in place and redistribute the
entries of rank k-1 or higher among their own positions, block by block from
left to right.  Within a block the high-rank positions form a contiguous
suffix (ranks strictly increase along an ascending run), and the eligible
values for a block are those exceeding the rightmost rank-(k-2) entry found
to the left of the block's first high-rank position.

``f_map`` hands each block the largest eligible unplaced values, ``g_map``
the smallest; filled left to right in increasing order.  The two procedures
are mutually inverse between the ``G(k)``-avoiders and the permutations
avoiding both ``H(k)`` and ``Q(k)``, and neither moves a descent.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParameter, InputContainsPattern, InternalExhaustion
from .patterns import G, contains_classical, contains_H, contains_Q, has_H, has_Q
from .permutation import Perm, blocks, descent_set, ranks


@dataclass(frozen=True)
class RefillPlan:
    """The scaffolding shared by both refill maps.

    ``cells`` holds, per block, the positions carrying rank >= k-1 entries (a
    contiguous suffix of the block); ``pool`` is the ascending list of values
    to redistribute; ``thresholds`` gives, per block, the value of the
    rightmost rank-(k-2) entry left of the block's first cell (None for
    blocks without cells).
    """

    k: int
    cells: tuple[tuple[int, ...], ...]
    pool: tuple[int, ...]
    thresholds: tuple[int | None, ...]


def refill_plan(p: Perm, k: int) -> RefillPlan:
    """Compute the refill scaffolding of ``p`` (no domain check)."""
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")
    if not p:
        return RefillPlan(k, (), (), ())
    rank = ranks(p)
    pool = tuple(sorted(v for v, r in zip(p, rank) if r >= k - 1))
    cells = []
    thresholds: list[int | None] = []
    for start, end in blocks(p):
        block_cells = tuple(i for i in range(start, end + 1) if rank[i - 1] >= k - 1)
        cells.append(block_cells)
        if not block_cells:
            thresholds.append(None)
            continue
        threshold = None
        for j in range(block_cells[0] - 1, 0, -1):
            if rank[j - 1] == k - 2:
                threshold = p[j - 1]
                break
        if threshold is None:
            raise InternalExhaustion(
                f"no rank-{k - 2} entry left of position {block_cells[0]}")
        thresholds.append(threshold)
    return RefillPlan(k, tuple(cells), pool, tuple(thresholds))


def _refill(p: Perm, k: int, largest: bool) -> Perm:
    plan = refill_plan(p, k)
    if not plan.pool:
        return p
    out = list(p)
    pool = list(plan.pool)
    for block_cells, threshold in zip(plan.cells, plan.thresholds):
        if not block_cells:
            continue
        eligible = [v for v in pool if v > threshold]
        if len(eligible) < len(block_cells):
            raise InternalExhaustion(
                f"{len(block_cells)} cells but only {len(eligible)} eligible values")
        chosen = eligible[-len(block_cells):] if largest \
            else eligible[: len(block_cells)]
        for i, v in zip(block_cells, chosen):
            out[i - 1] = v
            pool.remove(v)
    return tuple(out)


def f_map(p: Perm, k: int) -> Perm:
    """Map a G(k)-avoider to an H(k)- and Q(k)-avoider, descent set intact."""
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")
    occ = contains_classical(p, G(k).values)
    if occ is not None:
        raise InputContainsPattern(f"G{k}", occ)
    out = _refill(p, k, largest=True)
    assert descent_set(out) == descent_set(p), "descent set must be preserved"
    return out


def g_map(q: Perm, k: int) -> Perm:
    """Map an H(k)- and Q(k)-avoider to a G(k)-avoider; inverse of f_map."""
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")
    if has_H(q, k):
        raise InputContainsPattern(f"H:{k}", contains_H(q, k))
    if has_Q(q, k):
        raise InputContainsPattern(f"Q:{k}", contains_Q(q, k))
    out = _refill(q, k, largest=False)
    assert descent_set(out) == descent_set(q), "descent set must be preserved"
    return out
