"""Composed bijections and refined distribution bookkeeping.

``theta_g_to_f`` carries a G(k)-avoider through the refill map and then the
reverse rewrite closure, landing on an F(k)-avoider with the same descent
set (hence the same major index); ``theta_f_to_g`` is its two-sided inverse.

``CountTable`` tallies an avoidance class by descent set or by major index.
Descent sets are keyed internally as bitmasks over {1..n-1} (bit i-1 set when
i is a descent) and rendered as sorted comma-joined positions, e.g. "2,4".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadParameter
from .patterns import F, G, PatternSpec, avoiders
from .permutation import Perm, descent_set, major_index
from .slidemap import phi_map, psi_map
from .westmap import f_map, g_map

KEY_DESCENTS = "descents"
KEY_MAJ = "maj"


def theta_g_to_f(p: Perm, k: int, trace=None) -> Perm:
    """G(k)-avoiders -> F(k)-avoiders, preserving the descent set."""
    return psi_map(f_map(p, k), k, trace=trace)


def theta_f_to_g(q: Perm, k: int, trace=None) -> Perm:
    """F(k)-avoiders -> G(k)-avoiders; inverse of :func:`theta_g_to_f`."""
    return g_map(phi_map(q, k, trace=trace), k)


def descent_key(dset: Iterable[int]) -> int:
    """Bitmask key for a descent set."""
    mask = 0
    for i in dset:
        mask |= 1 << (i - 1)
    return mask


def render_descent_key(mask: int) -> str:
    """Sorted comma-joined positions; empty string for the empty set."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(str(i))
        mask >>= 1
        i += 1
    return ",".join(out)


def dt_descent_set(n: int, t: int) -> tuple[int, ...]:
    """The descent set {t, 2t, 3t, ...} cut off at n-1."""
    if t < 1:
        raise BadParameter(f"t must be positive, got {t}")
    return tuple(range(t, n, t))


@dataclass
class CountTable:
    """Distribution of an avoidance class, keyed by descent set or maj."""

    n: int
    k: int | None
    pattern: str
    key_kind: str  # "descents" or "maj"
    entries: dict[int, int] = field(default_factory=dict)

    def add(self, key: int) -> None:
        self.entries[key] = self.entries.get(key, 0) + 1

    def total(self) -> int:
        return sum(self.entries.values())

    def merge(self, other: "CountTable") -> None:
        for key, cnt in other.entries.items():
            self.entries[key] = self.entries.get(key, 0) + cnt

    def render_key(self, key: int) -> str:
        if self.key_kind == KEY_MAJ:
            return str(key)
        return render_descent_key(key)

    def to_json_dict(self) -> dict:
        rendered = {self.render_key(key): cnt for key, cnt in sorted(self.entries.items())}
        return {
            "n": self.n,
            "k": self.k,
            "pattern": self.pattern,
            "key_kind": self.key_kind,
            "total": self.total(),
            "entries": rendered,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def to_csv(self) -> str:
        lines = ["key,count"]
        for key, cnt in sorted(self.entries.items()):
            rendered = self.render_key(key)
            if "," in rendered:
                rendered = f'"{rendered}"'
            lines.append(f"{rendered},{cnt}")
        return "\n".join(lines) + "\n"


def tally(n: int, specs: Sequence[PatternSpec], key_kind: str,
          k: int | None = None, label: str | None = None,
          perms: Iterable[Perm] | None = None) -> CountTable:
    """Tally an avoidance class (or any iterable of permutations)."""
    if key_kind not in (KEY_DESCENTS, KEY_MAJ):
        raise BadParameter(f"unknown key kind {key_kind!r}")
    if label is None:
        label = "&".join(s.label for s in specs) if specs else "all"
    table = CountTable(n, k, label, key_kind)
    if perms is None:
        perms = avoiders(n, specs)
    for p in perms:
        if key_kind == KEY_DESCENTS:
            table.add(descent_key(descent_set(p)))
        else:
            table.add(major_index(p))
    return table


def distribution(n: int, k: int, side: str, key_kind: str) -> CountTable:
    """Distribution of S_n(G(k)) or S_n(F(k)) by descent set or major index."""
    if side not in ("G", "F"):
        raise BadParameter(f"side must be 'G' or 'F', got {side!r}")
    spec = G(k) if side == "G" else F(k)
    return tally(n, [spec], key_kind, k=k, label=spec.label)


def dt_counts(n: int, k: int, t: int) -> tuple[int, int]:
    """How many G(k)- and F(k)-avoiders have descent set exactly {t, 2t, ...}.

    The two components agree; the t = 1 column is 1 (only the decreasing
    permutation has a full descent set) and so is any t >= n (only the
    identity has an empty one).
    """
    key = descent_key(dt_descent_set(n, t))
    g_table = distribution(n, k, "G", KEY_DESCENTS)
    f_table = distribution(n, k, "F", KEY_DESCENTS)
    return g_table.entries.get(key, 0), f_table.entries.get(key, 0)
