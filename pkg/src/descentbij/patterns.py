"""Pattern containment and avoidance-class generation.

Three kinds of pattern are supported:

* classical patterns, given as an explicit value sequence (a subsequence
  order-isomorphic to it is an occurrence);
* ``H(k)``: an increasing subsequence of length k whose last two entries are
  separated by a descent (they land in different ascending runs);
* ``Q(k)``: a subsequence order-isomorphic to ``G(k) = 1 2 .. (k-2) k (k-1)``
  whose last two entries are joined by a contiguous increasing run that ends
  in a descent: with positions i_1 < .. < i_k, the consecutive entries from
  position i_{k-1} through i_k - 1 strictly increase and then drop to p_{i_k}.

Named classical shorthands: ``J(k) = 1 2 .. k``, ``F(k) = 2 3 .. k 1`` and
``G(k)`` as above.

Witness-returning searches (`contains_*`) run the definitional brute force
and return the lexicographically least position tuple, so outputs are
deterministic.  Boolean checks (`has_H`, `has_Q`) use equivalent rank-based
shortcuts; the test suite pins them to the definitional search exhaustively.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BadParameter, MalformedToken
from .permutation import Perm, as_permutation, parse

Occurrence = tuple[int, ...]

CLASSICAL = "classical"
SPECIAL_H = "H"
SPECIAL_Q = "Q"


@dataclass(frozen=True)
class PatternSpec:
    """A classical pattern or one of the special predicates H(k) / Q(k)."""

    kind: str
    values: Perm = ()
    k: int = 0

    @property
    def label(self) -> str:
        if self.kind == CLASSICAL:
            return "".join(map(str, self.values)) if len(self.values) <= 9 \
                else ",".join(map(str, self.values))
        return f"{self.kind}:{self.k}"


def classical(values: Sequence[int]) -> PatternSpec:
    return PatternSpec(CLASSICAL, values=as_permutation(values))


def special_h(k: int) -> PatternSpec:
    _check_k(k)
    return PatternSpec(SPECIAL_H, k=k)


def special_q(k: int) -> PatternSpec:
    _check_k(k)
    return PatternSpec(SPECIAL_Q, k=k)


def J(k: int) -> PatternSpec:
    """The increasing pattern 1 2 .. k."""
    _check_k(k)
    return classical(range(1, k + 1))


def F(k: int) -> PatternSpec:
    """The pattern 2 3 .. k 1."""
    _check_k(k)
    return classical(tuple(range(2, k + 1)) + (1,))


def G(k: int) -> PatternSpec:
    """The pattern 1 2 .. (k-2) k (k-1)."""
    _check_k(k)
    return classical(tuple(range(1, k - 1)) + (k, k - 1))


def parse_spec(text: str) -> PatternSpec:
    """Parse CLI pattern syntax.

    ``"132"`` or ``"1,3,2"`` for classical patterns, ``"H:5"`` / ``"Q:5"`` for
    the special predicates, and ``"J4"`` / ``"F4"`` / ``"G4"`` as shorthands.

    >>> parse_spec("G4").values
    (1, 2, 4, 3)
    >>> parse_spec("H:5").k
    5
    """
    if ":" in text:
        head, _, tail = text.partition(":")
        if head not in (SPECIAL_H, SPECIAL_Q) or not tail.isdigit():
            raise MalformedToken(f"bad pattern spec {text!r}")
        k = int(tail)
        _check_k(k)
        return PatternSpec(head, k=k)
    if text[:1] in ("J", "F", "G") and text[1:].isdigit():
        k = int(text[1:])
        _check_k(k)
        return {"J": J, "F": F, "G": G}[text[0]](k)
    return classical(parse(text))


def _check_k(k: int) -> None:
    if k < 3:
        raise BadParameter(f"k must be at least 3, got {k}")


# --- classical containment ---------------------------------------------------

def contains_classical(p: Sequence[int], pat: Sequence[int]) -> Occurrence | None:
    """Lexicographically least occurrence of ``pat`` in ``p``, if any.

    >>> contains_classical((3, 5, 1, 4, 2), (2, 4, 1, 3))
    (1, 2, 3, 4)
    """
    n, m = len(p), len(pat)
    if m == 0:
        return ()
    if m > n:
        return None

    def extend(chosen: list[int]) -> Occurrence | None:
        j = len(chosen)
        if j == m:
            return tuple(c + 1 for c in chosen)
        start = chosen[-1] + 1 if chosen else 0
        for c in range(start, n - (m - j) + 1):
            v = p[c]
            if all((v > p[chosen[a]]) == (pat[j] > pat[a]) for a in range(j)):
                found = extend(chosen + [c])
                if found:
                    return found
        return None

    return extend([])


def is_classical_occurrence(p: Sequence[int], pat: Sequence[int],
                            positions: Sequence[int]) -> bool:
    """Do the given 1-based positions witness an occurrence of ``pat``?"""
    if len(positions) != len(pat):
        return False
    if any(not 1 <= i <= len(p) for i in positions):
        return False
    if any(a >= b for a, b in zip(positions, positions[1:])):
        return False
    vals = [p[i - 1] for i in positions]
    return all((vals[a] < vals[b]) == (pat[a] < pat[b])
               for a in range(len(pat)) for b in range(a + 1, len(pat)))


# --- shared scaffolding for the special predicates ---------------------------

def _next_descents(p: Sequence[int]) -> list[int | None]:
    """nd[i] = least 1-based descent position >= i, for i in 1..n (index 0 unused)."""
    n = len(p)
    nd: list[int | None] = [None] * (n + 2)
    for i in range(n - 1, 0, -1):
        nd[i] = i if p[i - 1] > p[i] else nd[i + 1]
    return nd


def _chain_before(p: Sequence[int], end: int, lo: int, hi: int, need: int) -> bool:
    """Is there an increasing subsequence of length >= need among positions
    1..end-1 (1-based) with all values strictly between lo and hi?"""
    if need <= 0:
        return True
    tails: list[int] = []
    for v in p[: end - 1]:
        if lo < v < hi:
            i = bisect_left(tails, v)
            if i == len(tails):
                tails.append(v)
                if len(tails) >= need:
                    return True
            else:
                tails[i] = v
    return False


# --- H(k): witness search and rank-based boolean check -----------------------

def contains_H(p: Sequence[int], k: int) -> Occurrence | None:
    """Lexicographically least H(k) occurrence, or None.

    An occurrence is i_1 < .. < i_k with increasing values and some descent j
    satisfying i_{k-1} <= j < i_k.
    """
    _check_k(k)
    n = len(p)
    if n < k:
        return None
    nd = _next_descents(p)

    def extend(chosen: list[int]) -> Occurrence | None:
        if len(chosen) == k - 1:
            d = nd[chosen[-1]]
            if d is None:
                return None
            v = p[chosen[-1] - 1]
            for m in range(d + 1, n + 1):
                if p[m - 1] > v:
                    return tuple(chosen) + (m,)
            return None
        start = chosen[-1] + 1 if chosen else 1
        for c in range(start, n + 1):
            if not chosen or p[c - 1] > p[chosen[-1] - 1]:
                found = extend(chosen + [c])
                if found:
                    return found
        return None

    return extend([])


def is_H_occurrence(p: Sequence[int], k: int, positions: Sequence[int]) -> bool:
    """Do the given 1-based positions witness an H(k) occurrence?"""
    _check_k(k)
    if len(positions) != k or not is_classical_occurrence(p, tuple(range(1, k + 1)), positions):
        return False
    return any(p[j - 1] > p[j] for j in range(positions[-2], positions[-1]))


def has_H(p: Sequence[int], k: int, floor: int = 0) -> bool:
    """Does ``p`` contain an H(k) occurrence with all values above ``floor``?

    Equivalent to the definitional search: an occurrence exists iff some
    entry of rank >= k-1 (rank computed among values above the floor) is
    followed, beyond a descent, by a larger entry.
    """
    _check_k(k)
    n = len(p)
    if n < k:
        return False
    rank = [0] * n
    for i in range(n):
        if p[i] <= floor:
            continue
        best = 0
        for j in range(i):
            if floor < p[j] < p[i] and rank[j] > best:
                best = rank[j]
        rank[i] = best + 1
    sufmax = [0] * (n + 2)
    for i in range(n, 0, -1):
        sufmax[i] = max(p[i - 1], sufmax[i + 1])
    nd = _next_descents(p)
    for i in range(n):
        if rank[i] >= k - 1:
            d = nd[i + 1]
            if d is not None and sufmax[d + 1] > p[i]:
                return True
    return False


# --- Q(k): witness search and boolean check ----------------------------------

def contains_Q(p: Sequence[int], k: int) -> Occurrence | None:
    """Lexicographically least Q(k) occurrence, or None.

    Once the peak position u = i_{k-1} is fixed, the run condition forces
    i_k = d + 1 where d is the first descent at or after u.
    """
    _check_k(k)
    n = len(p)
    if n < k:
        return None
    nd = _next_descents(p)

    def extend(chosen: list[int]) -> Occurrence | None:
        j = len(chosen)
        if j == k - 2:
            v2 = p[chosen[-1] - 1]
            for u in range(chosen[-1] + 1, n + 1):
                if p[u - 1] > v2:
                    d = nd[u]
                    if d is not None and v2 < p[d] < p[u - 1]:
                        return tuple(chosen) + (u, d + 1)
            return None
        start = chosen[-1] + 1 if chosen else 1
        for c in range(start, n + 1):
            if not chosen or p[c - 1] > p[chosen[-1] - 1]:
                found = extend(chosen + [c])
                if found:
                    return found
        return None

    return extend([])


def is_Q_occurrence(p: Sequence[int], k: int, positions: Sequence[int]) -> bool:
    """Do the given 1-based positions witness a Q(k) occurrence?"""
    _check_k(k)
    gk = tuple(range(1, k - 1)) + (k, k - 1)
    if len(positions) != k or not is_classical_occurrence(p, gk, positions):
        return False
    a, b = positions[-2], positions[-1]
    if any(p[j - 1] >= p[j] for j in range(a, b - 1)):
        return False
    return p[b - 2] > p[b - 1]


def has_Q(p: Sequence[int], k: int, floor: int = 0) -> bool:
    """Does ``p`` contain a Q(k) occurrence with all values above ``floor``?

    For each candidate peak u the final entry is forced to d + 1 (d = first
    descent at or after u); it remains to find k-2 increasing values below
    the final entry's value, left of u.
    """
    _check_k(k)
    n = len(p)
    if n < k:
        return False
    nd = _next_descents(p)
    for u in range(1, n + 1):
        if p[u - 1] <= floor:
            continue
        d = nd[u]
        if d is None:
            continue
        w = p[d]
        if not floor < w < p[u - 1]:
            continue
        if _chain_before(p, u, floor, w, k - 2):
            return True
    return False


# --- dispatch and avoidance-class generation ---------------------------------

def contains(p: Sequence[int], spec: PatternSpec) -> Occurrence | None:
    """Definitional witness search for any spec kind."""
    if spec.kind == CLASSICAL:
        return contains_classical(p, spec.values)
    if spec.kind == SPECIAL_H:
        return contains_H(p, spec.k)
    return contains_Q(p, spec.k)


def avoids(p: Sequence[int], spec: PatternSpec) -> bool:
    if spec.kind == CLASSICAL:
        return contains_classical(p, spec.values) is None
    if spec.kind == SPECIAL_H:
        return not has_H(p, spec.k)
    return not has_Q(p, spec.k)


def _ends_occurrence(prefix: Sequence[int], pat: Sequence[int]) -> bool:
    """Does ``prefix`` contain ``pat`` with an occurrence ending at its last entry?"""
    m = len(pat)
    n = len(prefix)
    if n < m:
        return False
    last = n - 1

    def pick(chosen: list[int]) -> bool:
        j = len(chosen)
        if j == m - 1:
            return True
        start = chosen[-1] + 1 if chosen else 0
        for c in range(start, last - (m - 2 - j)):
            v = prefix[c]
            ok = all((v > prefix[chosen[a]]) == (pat[j] > pat[a]) for a in range(j))
            if ok and (v > prefix[last]) == (pat[j] > pat[m - 1]):
                if pick(chosen + [c]):
                    return True
        return False

    return pick([])


def avoiders(n: int, specs: Sequence[PatternSpec],
             first_value: int | None = None) -> Iterator[Perm]:
    """Yield every length-n permutation avoiding all ``specs``, in
    lexicographic order of one-line notation.

    Prefixes already containing a classical spec are pruned; the special
    predicates are only filtered on completed permutations.  ``first_value``
    restricts the stream to permutations starting with that value, which is
    how the harness partitions work across processes.
    """
    if n < 0:
        raise BadParameter(f"n must be non-negative, got {n}")
    if first_value is not None and not 1 <= first_value <= n:
        return
    classical_pats = [s.values for s in specs if s.kind == CLASSICAL]
    special = [(s.kind, s.k) for s in specs if s.kind != CLASSICAL]
    if n == 0:
        yield ()
        return

    prefix: list[int] = []
    used = [False] * (n + 1)

    def rec() -> Iterator[Perm]:
        if len(prefix) == n:
            p = tuple(prefix)
            for kind, k in special:
                if kind == SPECIAL_H and has_H(p, k):
                    return
                if kind == SPECIAL_Q and has_Q(p, k):
                    return
            yield p
            return
        choices = (first_value,) if not prefix and first_value is not None \
            else range(1, n + 1)
        for v in choices:
            if used[v]:
                continue
            used[v] = True
            prefix.append(v)
            if not any(_ends_occurrence(prefix, pat) for pat in classical_pats):
                yield from rec()
            prefix.pop()
            used[v] = False

    yield from rec()
