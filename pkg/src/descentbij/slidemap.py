"""Single-step matrix rewrites and their iterated closures.

Permutations are viewed as 0/1 matrices with the square ``(value, position)``
filled.  ``phi_select`` finds the extremal H(k)- or Q(k)-occurrence demanded
by the forward protocol, ``phi_step`` rewrites it into an F(k)-shaped
configuration, and ``phi_map`` iterates until no H or Q occurrence remains.
``psi_*`` run the reverse protocol: the extremal F(k)-occurrence is rewritten
back into an H or Q shape until none is left.

Every rewrite only reassigns rows within an explicit set of columns, so each
step is a pure square-edit on the matrix view, converted back to one-line
notation at the end.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import (
    BadParameter,
    HypothesisViolation,
    InputContainsPattern,
    NonTermination,
    SelectionMismatch,
)
from .patterns import F, _chain_before, contains_classical, contains_H, contains_Q, has_H, has_Q
from .permutation import Perm, descent_set, to_text

Square = tuple[int, int]  # (row = value, col = position), both 1-based

TraceFn = Callable[[str], None]


@dataclass(frozen=True)
class PhiSelection:
    """The k squares picked by the forward protocol plus its case data.

    ``squares`` are (row, col) pairs in column order.  ``s`` is set in case 1,
    ``t`` in cases 2 and 4.
    """

    squares: tuple[Square, ...]
    kind: str  # "H" or "Q"
    case: int  # 1..4
    s: int | None = None
    t: int | None = None


@dataclass(frozen=True)
class PsiSelection:
    """The k squares picked by the reverse protocol plus its case data.

    ``squares`` are (row, col) pairs in column order; they carry an
    F(k)-shaped filling.  ``t`` is set in cases 2, 3 and 4.
    """

    squares: tuple[Square, ...]
    case: int  # 1..4
    t: int | None = None


class _Ctx:
    """Per-permutation arrays shared by the selection searches (1-based)."""

    def __init__(self, p: Sequence[int]):
        n = len(p)
        self.n = n
        self.v = [0] + list(p)  # v[i] = value at position i
        self.pos = [0] * (n + 1)
        for i, val in enumerate(p):
            self.pos[val] = i + 1
        nd: list[int | None] = [None] * (n + 2)
        for i in range(n - 1, 0, -1):
            nd[i] = i if p[i - 1] > p[i] else nd[i + 1]
        self.nd = nd
        lis = [0] * (n + 2)  # longest increasing subsequence starting here
        for i in range(n, 0, -1):
            best = 0
            for j in range(i + 1, n + 1):
                if self.v[j] > self.v[i] and lis[j] > best:
                    best = lis[j]
            lis[i] = best + 1
        self.lis_start = lis
        suf = [0] * (n + 2)
        for i in range(n, 0, -1):
            suf[i] = max(self.v[i], suf[i + 1])
        self.sufmax = suf


def _complete_h(ctx: _Ctx, k: int, chain: tuple[int, ...]) -> bool:
    """Can ``chain`` (positions with increasing values) be the leftmost
    entries of an H(k) occurrence?"""
    v = ctx.v
    if len(chain) == k - 1:
        d = ctx.nd[chain[-1]]
        return d is not None and ctx.sufmax[d + 1] > v[chain[-1]]
    need = k - len(chain)
    last = chain[-1]
    for m in range(last + 1, ctx.n + 1):
        if v[m] > v[last] and ctx.lis_start[m] >= need and _complete_h(ctx, k, chain + (m,)):
            return True
    return False


def _complete_q(ctx: _Ctx, k: int, chain: tuple[int, ...]) -> bool:
    """Can ``chain`` be the leftmost entries of a Q(k) occurrence?

    Slots 1..k-2 form the low increasing run, slot k-1 is the peak, and the
    final square is forced to column d+1 for d the first descent at or after
    the peak.
    """
    v = ctx.v
    j = len(chain)
    if j == k - 1:
        u = chain[-1]
        d = ctx.nd[u]
        return d is not None and v[chain[-2]] < v[d + 1] < v[u]
    last = chain[-1]
    if j == k - 2:
        for u in range(last + 1, ctx.n + 1):
            if v[u] > v[last]:
                d = ctx.nd[u]
                if d is not None and v[last] < v[d + 1] < v[u]:
                    return True
        return False
    for m in range(last + 1, ctx.n + 1):
        if v[m] > v[last] and ctx.lis_start[m] >= k - 1 - j and _complete_q(ctx, k, chain + (m,)):
            return True
    return False


def phi_select(p: Perm, k: int) -> PhiSelection | None:
    """Run the forward selection protocol; None iff p avoids H(k) and Q(k).

    The first square is the highest one that starts an occurrence; squares
    2..k-1 are the leftmost ones keeping the prefix extendable to an H or Q
    occurrence; an H completion is preferred (taking the highest completing
    square), otherwise the Q completion's leftmost square is taken.
    """
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")
    n = len(p)
    if n < k:
        return None
    ctx = _Ctx(p)

    q1 = None
    for row in range(n, 0, -1):
        u = ctx.pos[row]
        if _complete_h(ctx, k, (u,)) or _complete_q(ctx, k, (u,)):
            q1 = u
            break
    if q1 is None:
        return None

    chain = (q1,)
    for _ in range(k - 2):
        nxt = None
        for c in range(chain[-1] + 1, n + 1):
            if ctx.v[c] > ctx.v[chain[-1]] and (
                _complete_h(ctx, k, chain + (c,)) or _complete_q(ctx, k, chain + (c,))
            ):
                nxt = c
                break
        assert nxt is not None, "extendable prefix lost its completion"
        chain = chain + (nxt,)

    last = chain[-1]
    vlast = ctx.v[last]
    d = ctx.nd[last]
    h_best = None
    if d is not None:
        for m in range(d + 1, n + 1):
            if ctx.v[m] > vlast and (h_best is None or ctx.v[m] > ctx.v[h_best]):
                h_best = m
    if h_best is not None:
        kind, qk = "H", h_best
    else:
        assert d is not None and ctx.v[chain[-2]] < ctx.v[d + 1] < vlast, \
            "prefix admits neither an H nor a Q completion"
        kind, qk = "Q", d + 1

    squares = tuple((ctx.v[c], c) for c in chain + (qk,))

    if kind == "H":
        if qk == n or ctx.v[qk - 1] > ctx.v[qk + 1]:
            s = None
            for cand in range(qk - 1, last, -1):
                if ctx.v[cand - 1] > ctx.v[cand]:
                    s = cand
                    break
            assert s is not None and last < s < qk, "case 1 needs a descent strictly inside"
            return PhiSelection(squares, "H", 1, s=s)
        t = _least_ascent_after(ctx, qk)
        return PhiSelection(squares, "H", 2, t=t)
    if qk < n and ctx.v[qk] < ctx.v[qk + 1]:
        return PhiSelection(squares, "Q", 3)
    t = _least_ascent_after(ctx, qk)
    return PhiSelection(squares, "Q", 4, t=t)


def _least_ascent_after(ctx: _Ctx, col: int) -> int:
    for j in range(col + 1, ctx.n):
        if ctx.v[j] < ctx.v[j + 1]:
            return j
    return ctx.n


def _apply_edits(p: Perm, edits: dict[int, int]) -> Perm:
    out = list(p)
    for col, row in edits.items():
        out[col - 1] = row
    assert sorted(out) == list(range(1, len(p) + 1)), "rewrite must permute rows"
    return tuple(out)


def _phi_apply(p: Perm, k: int, sel: PhiSelection) -> Perm:
    rows = [r for r, _ in sel.squares]
    cols = [c for _, c in sel.squares]
    edits: dict[int, int] = {}
    if sel.case == 1:
        for i in range(k - 1):
            edits[cols[i]] = rows[i + 1]
        edits[sel.s] = rows[0]
        for j in range(sel.s + 1, cols[-1] + 1):
            edits[j] = p[j - 2]
    elif sel.case == 2:
        for i in range(k - 1):
            edits[cols[i]] = rows[i + 1]
        for j in range(cols[-1], sel.t):
            edits[j] = p[j]
        edits[sel.t] = rows[0]
    elif sel.case == 3:
        for i in range(k - 3):
            edits[cols[i]] = rows[i + 1]
        edits[cols[k - 3]] = rows[k - 1]
        edits[cols[k - 1]] = rows[0]
    else:
        for i in range(k - 3):
            edits[cols[i]] = rows[i + 1]
        edits[cols[k - 3]] = rows[k - 1]
        for j in range(cols[-1], sel.t):
            edits[j] = p[j]
        edits[sel.t] = rows[0]
    return _apply_edits(p, edits)


def phi_step(p: Perm, k: int, sel: PhiSelection) -> Perm:
    """Apply one forward rewrite.  ``sel`` must equal ``phi_select(p, k)``."""
    if phi_select(p, k) != sel:
        raise SelectionMismatch("selection is not reproducible from the input")
    return _phi_apply(p, k, sel)


def psi_select(q: Perm, k: int) -> PsiSelection | None:
    """Run the reverse selection protocol; None iff q avoids F(k).

    The last square is the lowest one ending an F(k) occurrence; squares
    k-1..1 are then the lowest ones keeping the suffix completable.  Raises
    HypothesisViolation when an H or Q occurrence lies strictly above the
    selected square's row, which the protocol's domain excludes.
    """
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")
    n = len(q)
    if n < k:
        return None
    ctx = _Ctx(q)

    bottom: Square | None = None
    for row in range(1, n + 1):
        u = ctx.pos[row]
        if _chain_before(q, u, row, n + 1, k - 1):
            bottom = (row, u)
            break
    if bottom is None:
        return None
    floor = bottom[0]
    if has_H(q, k, floor=floor) or has_Q(q, k, floor=floor):
        raise HypothesisViolation(
            f"an H({k}) or Q({k}) occurrence lies strictly above row {floor}")

    squares: list[Square] = [None] * k  # type: ignore[list-item]
    squares[-1] = bottom
    hi = n + 1
    right = bottom[1]
    for slot in range(k - 2, -1, -1):
        found = None
        for row in range(floor + 1, hi):
            u = ctx.pos[row]
            if u < right and _chain_before(q, u, floor, row, slot):
                found = (row, u)
                break
        assert found is not None, "completable suffix lost its completion"
        squares[slot] = found
        hi, right = found

    qs = [c for _, c in squares]
    ps = [r for r, _ in squares]
    qk = qs[-1]
    v = ctx.v

    if qk < n and v[qk - 1] > v[qk + 1]:
        run_ok = all(v[j] < v[j + 1] for j in range(qs[-2], qk - 1))
        if run_ok and v[qk + 1] > ps[-3]:
            return PsiSelection(tuple(squares), 1)
        t = _least_descent_after(ctx, qk)
        return PsiSelection(tuple(squares), 2, t=t)
    if any(v[s - 1] > v[s] < v[s + 1] for s in range(qs[-2] + 1, qk)):
        t = None
        for cand in range(qk, qs[-2], -1):
            if v[cand - 1] < v[cand]:
                t = cand
                break
        assert t is not None, "case 3 valley guarantees an ascent"
        return PsiSelection(tuple(squares), 3, t=t)
    peak = max(range(qs[-2], qk + 1), key=lambda j: v[j])
    assert qs[-2] <= peak < qk, "unimodal segment must peak before its end"
    return PsiSelection(tuple(squares), 4, t=peak + 1)


def _least_descent_after(ctx: _Ctx, col: int) -> int:
    for j in range(col + 1, ctx.n):
        if ctx.v[j] > ctx.v[j + 1]:
            return j
    return ctx.n


def _psi_apply(q: Perm, k: int, sel: PsiSelection) -> Perm:
    rows = [r for r, _ in sel.squares]
    cols = [c for _, c in sel.squares]
    edits: dict[int, int] = {}
    edits[cols[0]] = rows[-1]
    if sel.case == 1:
        for i in range(1, k - 2):
            edits[cols[i]] = rows[i - 1]
        edits[cols[-1]] = rows[k - 3]
    elif sel.case == 2:
        for i in range(1, k - 1):
            edits[cols[i]] = rows[i - 1]
        for j in range(cols[-1], sel.t):
            edits[j] = q[j]
        edits[sel.t] = rows[k - 2]
    elif sel.case == 3:
        for i in range(1, k - 1):
            edits[cols[i]] = rows[i - 1]
        edits[sel.t] = rows[k - 2]
        for j in range(sel.t + 1, cols[-1] + 1):
            edits[j] = q[j - 2]
    else:
        for i in range(1, k - 2):
            edits[cols[i]] = rows[i - 1]
        edits[sel.t] = rows[k - 3]
        for j in range(sel.t + 1, cols[-1] + 1):
            edits[j] = q[j - 2]
    return _apply_edits(q, edits)


def psi_step(q: Perm, k: int, sel: PsiSelection) -> Perm:
    """Apply one reverse rewrite.  ``sel`` must equal ``psi_select(q, k)``."""
    if psi_select(q, k) != sel:
        raise SelectionMismatch("selection is not reproducible from the input")
    return _psi_apply(q, k, sel)


def _trace_line(idx: int, kind: str, case: int, squares: Sequence[Square], result: Perm) -> str:
    sq = "".join(f"({r},{c})" for r, c in squares)
    return f"{idx} {kind} {case} {sq} {to_text(result)}"


def _has_f_below(p: Perm, k: int, row_cap: int) -> bool:
    """Is there an F(k) occurrence whose last entry's value is below row_cap?"""
    for u in range(1, len(p) + 1):
        if p[u - 1] < row_cap and _chain_before(p, u, p[u - 1], len(p) + 1, k - 1):
            return True
    return False


def phi_map(p: Perm, k: int, trace: TraceFn | None = None, debug: bool = False) -> Perm:
    """Iterate the forward rewrite until no H(k) or Q(k) occurrence remains.

    Input must avoid F(k) (checked).  The result has the same descent set and
    is reached within n^2 steps; the selection's first square moves weakly
    down and, within a row, strictly right, which is asserted per iteration.
    With ``debug`` the step additionally asserts that no F(k) occurrence ends
    strictly below the selection row.
    """
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")
    occ = contains_classical(p, F(k).values)
    if occ is not None:
        raise InputContainsPattern(f"F{k}", occ)
    base = descent_set(p)
    cur = p
    prev: Square | None = None
    for it in range(len(p) * len(p) + 1):
        sel = phi_select(cur, k)
        if sel is None:
            assert descent_set(cur) == base, "descent set must be preserved"
            return cur
        row, col = sel.squares[0]
        if prev is not None:
            assert row < prev[0] or (row == prev[0] and col > prev[1]), \
                "selection must move down or slide right"
        prev = (row, col)
        cur = _phi_apply(cur, k, sel)
        if debug:
            assert not _has_f_below(cur, k, row), \
                "no F occurrence may end below the selection row"
        if trace is not None:
            trace(_trace_line(it, sel.kind, sel.case, sel.squares, cur))
    raise NonTermination(f"no fixpoint within {len(p) ** 2 + 1} iterations")


def psi_map(q: Perm, k: int, trace: TraceFn | None = None) -> Perm:
    """Iterate the reverse rewrite until no F(k) occurrence remains.

    Input must avoid H(k) and Q(k) (checked).  The result has the same
    descent set and is reached within n^2 steps; the selection's last square
    moves weakly up and, within a row, strictly left.
    """
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")
    if has_H(q, k):
        raise InputContainsPattern(f"H:{k}", contains_H(q, k))
    if has_Q(q, k):
        raise InputContainsPattern(f"Q:{k}", contains_Q(q, k))
    base = descent_set(q)
    cur = q
    prev: Square | None = None
    for it in range(len(q) * len(q) + 1):
        sel = psi_select(cur, k)
        if sel is None:
            assert descent_set(cur) == base, "descent set must be preserved"
            return cur
        row, col = sel.squares[-1]
        if prev is not None:
            assert row > prev[0] or (row == prev[0] and col < prev[1]), \
                "selection must move up or slide left"
        prev = (row, col)
        cur = _psi_apply(cur, k, sel)
        if trace is not None:
            trace(_trace_line(it, "F", sel.case, sel.squares, cur))
    raise NonTermination(f"no fixpoint within {len(q) ** 2 + 1} iterations")
