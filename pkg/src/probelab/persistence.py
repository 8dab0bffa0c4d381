"""Non-deterministic full persistence for any dynamic structure.

A version tree assigns each node a sequence of updates; a query names a
version and must be answered as if exactly the root-to-version updates had
run.  The transformation performs one depth-first traversal: entering a
node opens a change-log frame and applies its updates, leaving it pops the
frame.  Each memory cell gets an event table with one entry per traversal
time at which its contents actually changed, storing the contents right
after the change, packed next to the event time in a single word.

Answering a query then simulates the structure's query procedure; every
simulated read of a cell becomes a rank certificate over that cell's event
times: the prover picks the (at most two) entries bracketing the version's
discovery time, the verifier checks the bracket and emits the predecessor
entry's contents.  Rank 0 means the cell was still untouched at that
point in the traversal, so the zero word is returned.  One discovery-time
lookup plus at most two probes per simulated read keeps the query cost
within a constant factor of the wrapped structure's.

``replay_oracle`` is the definitional ground truth: run the path's updates
on a fresh memory and answer directly.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from .dynamic import DynamicStructure
from .errors import VerificationRejected, WidthTooSmall
from .memory import REJECT, CertificateTable, InstrumentedMemory, default_width
from .rank import rank_verify

ZERO_WORD = 0


@dataclass
class VersionTree:
    """Rooted tree of update sequences; node 0 is the root.

    ``children[u]`` lists u's children in traversal order and
    ``updates[u]`` the updates applied on entering u.  Node identifiers
    are the consecutive integers 0..size-1.
    """

    children: tuple[tuple[int, ...], ...]
    updates: tuple[tuple, ...]
    parents: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        self.children = tuple(tuple(c) for c in self.children)
        self.updates = tuple(tuple(u) for u in self.updates)
        size = len(self.children)
        if size == 0:
            raise ValueError("version tree needs at least a root")
        if len(self.updates) != size:
            raise ValueError("children and updates must list every node")
        parents = [-1] * size
        seen = 1
        stack = [0]
        while stack:
            u = stack.pop()
            for c in self.children[u]:
                if not 0 <= c < size:
                    raise ValueError(f"child {c} of node {u} is not a node")
                if c == 0 or parents[c] != -1:
                    raise ValueError(f"node {c} has two parents or is the root")
                parents[c] = u
                seen += 1
                stack.append(c)
        if seen != size:
            raise ValueError("version tree is not connected")
        self.parents = tuple(parents)

    @property
    def size(self) -> int:
        return len(self.children)

    @property
    def update_count(self) -> int:
        return sum(len(u) for u in self.updates)

    def path_from_root(self, version: int) -> list[int]:
        self.check_version(version)
        path = [version]
        while path[-1] != 0:
            path.append(self.parents[path[-1]])
        path.reverse()
        return path

    def check_version(self, version: int) -> None:
        if not 0 <= version < self.size:
            raise ValueError(f"version {version} outside 0..{self.size - 1}")


class ProbeCounter:
    """Per-query probe tally; each concurrent query should own one."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, probes: int) -> None:
        self.count += probes


@dataclass(frozen=True)
class CellEventTable:
    """Events of one cell: strictly increasing times, contents after each.

    ``packed`` is the certificate-table form, each entry holding the time
    in the high bits and the contents in the low ``contents_bits``.
    """

    addr: int
    times: tuple[int, ...]
    contents: tuple[int, ...]
    packed: CertificateTable
    contents_bits: int

    def __len__(self):
        return len(self.times)


class PersistentStore:
    """Per-cell event tables plus the version-to-discovery-time map.

    ``measured_cells`` counts the certificate cells materialized: one per
    event-table entry plus one discovery entry per version.  The discovery
    map is a direct-indexed array since version identifiers are
    consecutive integers.  Immutable once built, so a store may serve
    queries from several threads as long as each query owns its counter.
    """

    def __init__(self, width, inner_width, time_bits, tables, discovery, finish,
                 update_count, update_probes_max):
        self.width = width
        self.inner_width = inner_width
        self.time_bits = time_bits
        self.tables: dict[int, CellEventTable] = tables
        self.discovery_times: tuple[int, ...] = discovery
        self.finish_times: tuple[int, ...] = finish
        self.update_count = update_count
        self.update_probes_max = update_probes_max

    @property
    def version_count(self) -> int:
        return len(self.discovery_times)

    @property
    def measured_cells(self) -> int:
        return sum(len(t) for t in self.tables.values()) + self.version_count

    def lookup_discovery(self, version: int, counter: ProbeCounter | None = None) -> int:
        """Discovery time of a version; one probe into the auxiliary map."""
        if not 0 <= version < self.version_count:
            raise ValueError(f"version {version} outside 0..{self.version_count - 1}")
        if counter is not None:
            counter.add(1)
        return self.discovery_times[version]

    def event_table(self, addr: int) -> CellEventTable | None:
        return self.tables.get(addr)

    def table_length(self, addr: int) -> int:
        table = self.tables.get(addr)
        return 0 if table is None else len(table)


def build_store(tree: VersionTree, structure: DynamicStructure,
                width: int | None = None) -> PersistentStore:
    """Depth-first traversal recording per-cell change events.

    Entering a node pushes a frame and applies its updates; leaving pops
    the frame.  A cell gets a discovery event when the node's updates net
    a change to it, and a finish event when the revert nets one; no-op
    events are suppressed, so event times are exactly the times the
    contents change.  Multiple writes to one cell inside a node collapse
    into the single final value.

    Raises WidthTooSmall when ``width`` (default ``default_width(m)``)
    cannot pack a timestamp next to the structure's cell contents.
    """
    inner_width = structure.cell_width
    time_bits = (2 * tree.size).bit_length()
    if width is None:
        width = default_width(tree.update_count)
    if width < time_bits + inner_width:
        raise WidthTooSmall(
            f"width {width} < {time_bits} time bits + {inner_width} contents bits"
        )

    mem = InstrumentedMemory(inner_width)
    clock = 1
    events: dict[int, list[tuple[int, int]]] = {}
    size = tree.size
    discovery = [0] * size
    finish = [0] * size
    update_probes_max = 0

    # explicit stack so chain-shaped version trees of any length traverse
    stack: list[tuple[int, tuple[int, ...] | None]] = [(0, None)]
    while stack:
        u, touched = stack.pop()
        if touched is None:
            discovery[u] = clock
            clock += 1
            mem.push_frame()
            for update in tree.updates[u]:
                before = mem.probe_count
                structure.apply_update(mem, update)
                probes = mem.probe_count - before
                if probes > update_probes_max:
                    update_probes_max = probes
            order = []
            first_prev = {}
            for addr, prev in mem.frame_records():
                if addr not in first_prev:
                    first_prev[addr] = prev
                    order.append(addr)
            for addr in order:
                now = mem.peek(addr)
                if now != first_prev[addr]:
                    events.setdefault(addr, []).append((discovery[u], now))
            stack.append((u, tuple(order)))
            for child in reversed(tree.children[u]):
                stack.append((child, None))
        else:
            finish[u] = clock
            clock += 1
            before_pop = [(addr, mem.peek(addr)) for addr in touched]
            mem.pop_frame()
            for addr, before in before_pop:
                after = mem.peek(addr)
                if after != before:
                    events.setdefault(addr, []).append((finish[u], after))

    tables = {}
    for addr, evts in events.items():
        times = tuple(t for t, _ in evts)
        contents = tuple(c for _, c in evts)
        packed = CertificateTable(
            ((t << inner_width) | c for t, c in evts), width
        )
        tables[addr] = CellEventTable(addr, times, contents, packed, inner_width)

    store = PersistentStore(width, inner_width, time_bits, tables,
                            tuple(discovery), tuple(finish),
                            tree.update_count, update_probes_max)
    # one entry per change event, at most two per cell a node's updates touch
    assert store.measured_cells <= 4 * (store.update_count * update_probes_max
                                        + tree.size)
    return store


def prove_cell(store: PersistentStore, addr: int, time: int) -> tuple[int, ...]:
    """Prover: event-table indices bracketing ``time``, by binary search."""
    table = store.event_table(addr)
    if table is None:
        return ()
    n = len(table)
    r = bisect.bisect_right(table.times, time)
    if r == 0:
        return (1,)
    if r == n:
        return (n,)
    return (r, r + 1)


def verify_cell(store: PersistentStore, addr: int, time: int, indices,
                counter: ProbeCounter | None = None):
    """Verifier: contents of the cell at the given traversal time, or REJECT.

    Reads only the probed entries of the cell's event table (each probe
    charged) plus the table length, unpacks the event times, and runs the
    rank-certificate check on them.  Rank 0 certifies the cell was
    untouched before ``time`` and yields the zero word; otherwise the
    predecessor entry's contents field is the answer.
    """
    n = store.table_length(addr)
    indices = tuple(indices)
    if len(indices) != len(set(indices)):
        return REJECT
    table = store.tables.get(addr)
    probes = []
    for i in indices:
        if table is None or not 1 <= i <= n:
            return REJECT
        if counter is not None:
            counter.add(1)
        probes.append((i, table.packed.cell(i)))
    shift = store.inner_width
    mask = (1 << shift) - 1
    rank = rank_verify(time, [(i, word >> shift) for i, word in probes], n)
    if rank is REJECT:
        return REJECT
    if rank == 0:
        return ZERO_WORD
    for i, word in probes:
        if i == rank:
            return word & mask
    return REJECT


def cell_at_version(store: PersistentStore, addr: int, version: int,
                    counter: ProbeCounter | None = None) -> int:
    """Contents of a cell as of a version's discovery: lookup, prove, verify."""
    time = store.lookup_discovery(version, counter)
    result = verify_cell(store, addr, time, prove_cell(store, addr, time), counter)
    if result is REJECT:
        raise VerificationRejected(f"prover failed on cell {addr} at version {version}")
    return result


class _VersionReader:
    """Read-only memory view answering reads from the event tables."""

    __slots__ = ("_store", "_time", "_counter")

    def __init__(self, store: PersistentStore, time: int, counter: ProbeCounter | None):
        self._store = store
        self._time = time
        self._counter = counter

    def read(self, addr: int) -> int:
        store = self._store
        result = verify_cell(store, addr, self._time,
                             prove_cell(store, addr, self._time), self._counter)
        if result is REJECT:
            raise VerificationRejected(f"prover failed on cell {addr}")
        return result


def persistent_query(store: PersistentStore, structure: DynamicStructure,
                     version: int, query, counter: ProbeCounter | None = None):
    """Answer a (query, version) pair from the store alone.

    Runs the structure's query procedure with every read redirected
    through the event tables at the version's discovery time: one
    discovery probe up front, then at most two probes per simulated read.
    """
    time = store.lookup_discovery(version, counter)
    return structure.answer_query(_VersionReader(store, time, counter), query)


def replay_to_version(tree: VersionTree, structure: DynamicStructure,
                      version: int) -> InstrumentedMemory:
    """Fresh memory after exactly the root-to-version updates, in order."""
    mem = InstrumentedMemory(structure.cell_width)
    for node in tree.path_from_root(version):
        for update in tree.updates[node]:
            structure.apply_update(mem, update)
    return mem


def replay_oracle(tree: VersionTree, structure: DynamicStructure,
                  version: int, query):
    """Definitional ground truth for persistent queries."""
    return structure.answer_query(replay_to_version(tree, structure, version), query)
