"""One-line permutations of {1..n} and their classical statistics.

A permutation is stored as a plain tuple of values in one-line notation:
``p[i]`` is the value at position ``i + 1``.  All positions reported by the
functions below (descents, blocks, occurrence witnesses) are 1-based, matching
the usual combinatorial convention.

Text format: comma-separated decimal values without whitespace, e.g.
``"1,3,5,7,6,8,9,4,10,2,11"``.  On input only, a contiguous digit string such
as ``"4321"`` is accepted as a shorthand when every value is a single digit.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import EmptyInput, MalformedToken, RepeatedValue, ValueOutOfRange

Perm = tuple[int, ...]


def as_permutation(values: Iterable[int]) -> Perm:
    """Validate that ``values`` is a bijection on {1..n} and freeze it.

    >>> as_permutation([2, 1])
    (2, 1)
    """
    p = tuple(int(v) for v in values)
    n = len(p)
    seen = bytearray(n + 1)
    for v in p:
        if not 1 <= v <= n:
            raise ValueOutOfRange(f"value {v} outside 1..{n}")
        if seen[v]:
            raise RepeatedValue(f"value {v} repeated")
        seen[v] = 1
    return p


def parse(text: str) -> Perm:
    """Parse one-line permutation text.

    >>> parse("1,3,2")
    (1, 3, 2)
    >>> parse("4321")
    (4, 3, 2, 1)
    """
    if text == "":
        raise MalformedToken("empty permutation text")
    if "," in text:
        tokens = text.split(",")
    else:
        if not text.isdigit():
            raise MalformedToken(f"not a digit string: {text!r}")
        tokens = list(text)
    values = []
    for tok in tokens:
        if not tok.isdigit() or (len(tok) > 1 and tok[0] == "0"):
            raise MalformedToken(f"bad token {tok!r}")
        values.append(int(tok))
    return as_permutation(values)


def to_text(p: Sequence[int]) -> str:
    """Canonical comma-separated rendering (inverse of :func:`parse`)."""
    return ",".join(str(v) for v in p)


def descent_set(p: Sequence[int]) -> tuple[int, ...]:
    """Positions i with p_i > p_{i+1}.

    >>> descent_set((1, 3, 5, 7, 6, 8, 9, 4, 10, 2, 11))
    (4, 7, 9)
    """
    return tuple(i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1])


def ascent_set(p: Sequence[int]) -> tuple[int, ...]:
    """Positions i with p_i < p_{i+1}; the complement of the descent set."""
    return tuple(i + 1 for i in range(len(p) - 1) if p[i] < p[i + 1])


def major_index(p: Sequence[int]) -> int:
    """Sum of the descent positions.

    >>> major_index((3, 2, 1))
    3
    """
    return sum(descent_set(p))


def inversion_number(p: Sequence[int]) -> int:
    """Number of pairs i < j with p_i > p_j."""
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def blocks(p: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Maximal ascending runs as (start, end) position ranges.

    The runs are delimited by the descents, cover 1..n, and there are exactly
    ``len(descent_set(p)) + 1`` of them.

    >>> blocks((1, 3, 5, 7, 6, 8, 9, 4, 10, 2, 11))
    ((1, 4), (5, 7), (8, 9), (10, 11))
    """
    n = len(p)
    if n == 0:
        raise EmptyInput("blocks of the empty permutation are undefined")
    out = []
    start = 1
    for d in descent_set(p):
        out.append((start, d))
        start = d + 1
    out.append((start, n))
    return tuple(out)


def ranks(p: Sequence[int]) -> tuple[int, ...]:
    """Length of the longest increasing subsequence ending at each position.

    Quadratic scan; instances here are tiny.

    >>> ranks((4, 3, 2, 1))
    (1, 1, 1, 1)
    >>> ranks((1, 2, 3))
    (1, 2, 3)
    """
    n = len(p)
    r = [1] * n
    for i in range(n):
        best = 0
        for j in range(i):
            if p[j] < p[i] and r[j] > best:
                best = r[j]
        r[i] = best + 1
    return tuple(r)
