"""Dynamic structures that run on the instrumented memory.

A dynamic structure is a pair of procedures, ``apply_update`` and
``answer_query``, that touch state only through ``read``/``write`` on a
memory handed to them.  Queries must not write.  Per-operation probe
counts define the measured update time (max over updates) and query time
(max over queries).

``MarkedAncestorStructure`` is the structure the persistence layer wraps:
a complete b-ary tree whose nodes carry a mark bit, updates mark or
unmark one node, and a query asks whether any node on the root path of a
given node (the node itself included) is marked.
"""

from __future__ import annotations

import abc
import enum
from typing import NamedTuple

from .errors import NodeOutOfBounds


class DynamicStructure(abc.ABC):
    """Update/query procedures over a supplied memory.

    ``cell_width`` is the number of bits any cell the structure writes may
    need; the persistence transformation reads it to size its packed
    entries.
    """

    cell_width: int = 1

    @abc.abstractmethod
    def apply_update(self, mem, update) -> None: ...

    @abc.abstractmethod
    def answer_query(self, mem, query): ...


class MarkAction(enum.Enum):
    MARK = "mark"
    UNMARK = "unmark"


MARK = MarkAction.MARK
UNMARK = MarkAction.UNMARK


class MarkUpdate(NamedTuple):
    layer: int
    index: int
    action: MarkAction


class AncestorQuery(NamedTuple):
    layer: int
    index: int


class MarkedAncestorTree(NamedTuple):
    """Complete tree of the given degree with ``depth`` levels below the root.

    Node (layer L, index i) has parent (L-1, i // degree) and occupies the
    memory cell at ``layer_offset(L) + i``, one mark bit per cell.
    """

    degree: int
    depth: int

    def layer_offset(self, layer: int) -> int:
        return (self.degree**layer - 1) // (self.degree - 1)

    @property
    def node_count(self) -> int:
        return self.layer_offset(self.depth + 1)

    def layer_size(self, layer: int) -> int:
        return self.degree**layer

    def check_node(self, layer: int, index: int) -> None:
        if not 0 <= layer <= self.depth:
            raise NodeOutOfBounds(f"layer {layer} outside 0..{self.depth}")
        if not 0 <= index < self.degree**layer:
            raise NodeOutOfBounds(f"index {index} outside layer {layer}")

    def address(self, layer: int, index: int) -> int:
        self.check_node(layer, index)
        return self.layer_offset(layer) + index

    def parent(self, layer: int, index: int) -> tuple[int, int]:
        self.check_node(layer, index)
        if layer == 0:
            raise NodeOutOfBounds("the root has no parent")
        return layer - 1, index // self.degree

    def nodes(self):
        for layer in range(self.depth + 1):
            for index in range(self.degree**layer):
                yield layer, index


class MarkedAncestorStructure(DynamicStructure):
    """Naive marked-ancestor structure: one write per update, one read per level.

    The query deliberately climbs all the way to the root with no early
    exit, so an update costs exactly 1 probe and a query at layer L costs
    exactly L+1 probes, making measured times deterministic.
    """

    cell_width = 1

    def __init__(self, tree: MarkedAncestorTree):
        self.tree = tree

    def apply_update(self, mem, update: MarkUpdate) -> None:
        addr = self.tree.address(update.layer, update.index)
        mem.write(addr, 1 if update.action is MarkAction.MARK else 0)

    def answer_query(self, mem, query: AncestorQuery) -> bool:
        tree = self.tree
        layer, index = query
        tree.check_node(layer, index)
        marked = 0
        while True:
            marked |= mem.read(tree.layer_offset(layer) + index)
            if layer == 0:
                break
            layer, index = layer - 1, index // tree.degree
        return bool(marked)


class ShadowMarkedAncestor:
    """Brute-force oracle keeping an explicit mark set, no memory involved."""

    def __init__(self, tree: MarkedAncestorTree):
        self.tree = tree
        self.marked: set[tuple[int, int]] = set()

    def apply_update(self, update: MarkUpdate) -> None:
        self.tree.check_node(update.layer, update.index)
        if update.action is MarkAction.MARK:
            self.marked.add((update.layer, update.index))
        else:
            self.marked.discard((update.layer, update.index))

    def answer_query(self, query: AncestorQuery) -> bool:
        self.tree.check_node(query.layer, query.index)
        layer, index = query
        while True:
            if (layer, index) in self.marked:
                return True
            if layer == 0:
                return False
            layer, index = layer - 1, index // self.tree.degree


class RawWriteStructure(DynamicStructure):
    """Minimal structure whose updates are (addr, value) writes.

    Queries are bare addresses answered by a single read.  Handy for
    exercising the persistence transformation on arbitrary write
    schedules.
    """

    def __init__(self, cell_width: int = 16):
        self.cell_width = cell_width

    def apply_update(self, mem, update) -> None:
        addr, value = update
        mem.write(addr, value)

    def answer_query(self, mem, query):
        return mem.read(query)
