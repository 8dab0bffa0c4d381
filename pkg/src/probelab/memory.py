"""Simulated cell-probe machine.

The cost model charges one probe per cell read or write; all other
computation is free.  Memory is an unbounded array of w-bit cells,
zero-initialized, backed by a sparse map that never stores zero words (so
two memories hold identical contents iff their maps compare equal).

The change log supports nested frames: ``push_frame`` opens a frame,
``pop_frame`` undoes every write recorded since the matching push, in
reverse order.  Frame bookkeeping is not charged probes; only ``read``
and ``write`` count.

``REJECT`` and ``verify_generic`` express the prover/verifier game played
over an immutable ``CertificateTable``: a prover picks a small set of cells
(a ``ProbeSet``), and a verifier seeing only those cells must produce the
correct answer or reject.
"""

from __future__ import annotations

from .errors import NoOpenFrame, ValueTooWide


class _Reject:
    """Singleton verification-failure marker (an answer value, not an error)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "REJECT"


REJECT = _Reject()


def default_width(update_count: int) -> int:
    """Default cell width for an instance with the given number of updates.

    Wide enough to pack a traversal timestamp next to the payload of any
    structure this package builds, with a 64-bit floor so small instances
    never hit width limits.
    """
    if update_count < 1:
        return 64
    return max(64, 2 * (2 * update_count - 1).bit_length())


class InstrumentedMemory:
    """Addressable w-bit cells with probe accounting and a revertible log.

    Addresses are arbitrary non-negative integers; a never-written address
    reads as zero.  ``probe_count`` counts exactly the ``read`` and
    ``write`` calls issued, nothing else.  Instances are not synchronized:
    one writer per memory, though distinct memories are independent.
    """

    def __init__(self, width: int):
        if width < 1:
            raise ValueError(f"cell width must be >= 1, got {width}")
        self.width = width
        self.probe_count = 0
        self._limit = 1 << width
        self._cells: dict[int, int] = {}
        self._frames: list[list[tuple[int, int]]] = []

    def read(self, addr: int) -> int:
        """Return the cell's contents (zero if never written). One probe."""
        if addr < 0:
            raise ValueError(f"address must be non-negative, got {addr}")
        self.probe_count += 1
        return self._cells.get(addr, 0)

    def write(self, addr: int, value: int) -> None:
        """Store ``value`` at ``addr``, logging the overwritten word. One probe."""
        if addr < 0:
            raise ValueError(f"address must be non-negative, got {addr}")
        if not 0 <= value < self._limit:
            raise ValueTooWide(f"value {value} does not fit in {self.width} bits")
        if self._frames:
            self._frames[-1].append((addr, self._cells.get(addr, 0)))
        if value:
            self._cells[addr] = value
        else:
            self._cells.pop(addr, None)
        self.probe_count += 1

    def peek(self, addr: int) -> int:
        """Accounting-free read, for provers and test harnesses only."""
        return self._cells.get(addr, 0)

    def push_frame(self) -> None:
        self._frames.append([])

    def pop_frame(self) -> None:
        """Undo, in reverse order, every write since the matching push.

        Restoration bypasses probe accounting; after the pop, contents are
        identical to the state at the push.
        """
        if not self._frames:
            raise NoOpenFrame("pop_frame with no open frame")
        for addr, prev in reversed(self._frames.pop()):
            if prev:
                self._cells[addr] = prev
            else:
                self._cells.pop(addr, None)

    def frame_records(self) -> tuple[tuple[int, int], ...]:
        """(addr, overwritten word) records of the innermost open frame."""
        if not self._frames:
            raise NoOpenFrame("no open frame to inspect")
        return tuple(self._frames[-1])

    @property
    def open_frames(self) -> int:
        return len(self._frames)

    def snapshot(self) -> dict[int, int]:
        """Copy of all nonzero cells; equal snapshots mean identical contents."""
        return dict(self._cells)

    @property
    def cells_materialized(self) -> int:
        return len(self._cells)


class CertificateTable:
    """Immutable table of ``size`` w-bit cells at addresses 1..size."""

    def __init__(self, words, width: int):
        if width < 1:
            raise ValueError(f"cell width must be >= 1, got {width}")
        self.width = width
        limit = 1 << width
        entries = tuple(words)
        for word in entries:
            if not 0 <= word < limit:
                raise ValueTooWide(f"word {word} does not fit in {width} bits")
        self._entries = entries

    @property
    def size(self) -> int:
        return len(self._entries)

    def cell(self, index: int) -> int:
        """Contents of cell ``index`` (1-based)."""
        if not 1 <= index <= len(self._entries):
            raise IndexError(f"cell index {index} outside 1..{len(self._entries)}")
        return self._entries[index - 1]

    def probe_set(self, indices) -> "ProbeSet":
        return ProbeSet.from_table(self, indices)


class ProbeSet:
    """A set of (address, word) pairs handed from prover to verifier."""

    def __init__(self, pairs):
        items = frozenset(pairs)
        addresses = {addr for addr, _ in items}
        if len(addresses) != len(items):
            raise ValueError("probe set repeats an address with differing words")
        self.items = items

    @classmethod
    def from_table(cls, table: CertificateTable, indices) -> "ProbeSet":
        """Probe the given table cells; pairs are guaranteed honest."""
        return cls((i, table.cell(i)) for i in indices)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __repr__(self):
        inner = ", ".join(f"({a}, {w})" for a, w in sorted(self.items))
        return f"ProbeSet({{{inner}}})"


def verify_generic(verifier, query, probes):
    """Run a verifier on a probed cell set.

    The verifier sees only the probes (and whatever scheme parameters it
    was built with) and must return the query's answer or ``REJECT``.
    Soundness, never answering wrongly, is each concrete verifier's
    obligation and is tested per scheme.
    """
    return verifier(query, probes)
