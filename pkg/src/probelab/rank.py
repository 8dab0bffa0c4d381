"""Rank certificates over a sorted table.

The rank of x in a set S is |{s in S : s <= x}|.  Storing S sorted, one
cell per element, lets a two-cell probe certify any rank: an adjacent pair
of entries bracketing x pins the rank exactly, and a single boundary entry
certifies rank 0 or rank n.  The prover finds the bracketing pair by
binary search (free computation); the verifier checks adjacency and the
bracketing inequalities from the probed cells alone.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .errors import WidthTooSmall
from .memory import REJECT, CertificateTable


@dataclass(frozen=True)
class RankInstance:
    """A set of distinct integers drawn from the universe 0..universe-1."""

    universe: int
    elements: frozenset[int]

    def __post_init__(self):
        if self.universe < 1:
            raise ValueError(f"universe must be positive, got {self.universe}")
        object.__setattr__(self, "elements", frozenset(self.elements))
        for e in self.elements:
            if not 0 <= e < self.universe:
                raise ValueError(f"element {e} outside universe [0, {self.universe})")

    @property
    def n(self) -> int:
        return len(self.elements)


def true_rank(x: int, elements) -> int:
    """Direct-counting oracle: number of elements <= x."""
    return sum(1 for e in elements if e <= x)


@dataclass(frozen=True)
class RankTable:
    """Sorted elements in cells 1..n; cell i holds the i-th smallest."""

    entries: tuple[int, ...]
    universe: int
    table: CertificateTable

    @property
    def n(self) -> int:
        return len(self.entries)


def rank_build(inst: RankInstance, width: int) -> RankTable:
    """Encode the instance as a table of n cells of ``width`` bits each.

    Raises WidthTooSmall unless 2**width > universe, so every element fits
    with room to spare.
    """
    if (1 << width) <= inst.universe:
        raise WidthTooSmall(
            f"width {width} cannot hold values from a universe of {inst.universe}"
        )
    entries = tuple(sorted(inst.elements))
    return RankTable(entries, inst.universe, CertificateTable(entries, width))


def rank_prove(table: RankTable, x: int) -> frozenset[int]:
    """Indices of at most two cells certifying the rank of x.

    Interior ranks get the adjacent bracketing pair; ranks 0 and n need
    only the first or last cell.
    """
    if not 0 <= x < table.universe:
        raise ValueError(f"query {x} outside universe [0, {table.universe})")
    n = table.n
    if n == 0:
        return frozenset()
    entries = table.entries
    if x < entries[0]:
        return frozenset((1,))
    if x >= entries[-1]:
        return frozenset((n,))
    i = bisect.bisect_right(entries, x)
    return frozenset((i, i + 1))


def rank_verify(x: int, probes, n: int):
    """Check a probe set against the rank of x in a table of n cells.

    ``probes`` is any iterable of (index, word) pairs drawn from the
    table.  Returns the certified rank, or REJECT when the probes do not
    pin it down.  Accepting cases:

      adjacent pair (i, lo), (i+1, up) with lo <= x < up  ->  i
      (1, lo) with x < lo                                 ->  0
      (n, up) with x >= up                                ->  n
      no probes, n == 0                                   ->  0
    """
    pairs = list(probes)
    k = len(pairs)
    if k == 0:
        return 0 if n == 0 else REJECT
    if k == 1:
        i, v = pairs[0]
        if i < 1 or i > n:
            return REJECT
        if i == 1 and x < v:
            return 0
        if i == n and x >= v:
            return n
        return REJECT
    if k == 2:
        a, b = pairs
        if a[0] > b[0]:
            a, b = b, a
        i, lo = a
        j, up = b
        if i < 1 or j > n:
            return REJECT
        if i + 1 == j and lo <= x < up:
            return i
        if i == 1 and x < lo:
            return 0
        if j == n and x >= up:
            return n
        return REJECT
    return REJECT
