"""Butterfly reachability as persistent marked ancestor.

Both the version tree and the marked tree are complete b-ary trees of
depth d.  Version-tree leaves stand for butterfly sources, marked-tree
leaves for sinks.  A missing edge e = (lower, upper) at butterfly layer i
becomes one mark update:

  placed at the version node whose subtree's leaves are exactly the
  sources able to reach e's lower endpoint, index

      sum(b**k * v_lower[i + k] for k in range(d - i))   in layer d - i,

  marking the tree node standing for e's position on any surviving
  source-to-sink path, index

      sum(b**(i - k) * v_upper[k] for k in range(i + 1))  in layer i + 1,

with v_* the base-b digit vectors, least significant digit first.  A
source reaches a sink iff the sink's leaf has no marked ancestor in the
source's version, since a mark lies on the queried root path exactly when
the corresponding missing edge lies on the unique source-sink path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .butterfly import ButterflyEdge, ButterflyShape, ButterflySubgraph, enumerate_edges
from .dynamic import MARK, AncestorQuery, MarkedAncestorStructure, MarkedAncestorTree, MarkUpdate
from .persistence import PersistentStore, ProbeCounter, VersionTree, build_store, persistent_query


class UpdatePlacement(NamedTuple):
    version_layer: int
    version_index: int
    mark_layer: int
    mark_index: int


def edge_to_update(shape: ButterflyShape, edge: ButterflyEdge) -> UpdatePlacement:
    """Both placement formulas for one missing edge."""
    shape.check_edge(edge)
    b, d, i = shape.degree, shape.depth, edge.layer
    v_lower = shape.digits(edge.lower)
    v_upper = shape.digits(edge.upper)
    version_index = sum(b**k * v_lower[i + k] for k in range(d - i))
    mark_index = sum(b ** (i - k) * v_upper[k] for k in range(i + 1))
    return UpdatePlacement(d - i, version_index, i + 1, mark_index)


def complete_version_tree(degree: int, depth: int, node_updates) -> VersionTree:
    """Complete b-ary version tree, nodes numbered breadth-first.

    Node (layer L, position p) gets identifier offset(L) + p with
    offset(L) = (b**L - 1) // (b - 1), so identifiers are consecutive.
    """
    def offset(layer):
        return (degree**layer - 1) // (degree - 1)

    size = offset(depth + 1)
    children = []
    for layer in range(depth + 1):
        for pos in range(degree**layer):
            if layer == depth:
                children.append(())
            else:
                first = offset(layer + 1) + pos * degree
                children.append(tuple(range(first, first + degree)))
    updates = [node_updates.get(node, ()) for node in range(size)]
    return VersionTree(tuple(children), tuple(updates))


@dataclass(frozen=True)
class ReductionInstance:
    shape: ButterflyShape
    version_tree: VersionTree
    marked_tree: MarkedAncestorTree
    structure: MarkedAncestorStructure

    def build_store(self, width: int | None = None) -> PersistentStore:
        return build_store(self.version_tree, self.structure, width)


def build_instance(sub: ButterflySubgraph) -> ReductionInstance:
    """One MARK update per missing edge, in edge enumeration order."""
    shape = sub.shape
    b, d = shape.degree, shape.depth
    node_updates: dict[int, list] = {}
    for edge in enumerate_edges(shape):
        if edge not in sub.missing:
            continue
        place = edge_to_update(shape, edge)
        node = (b**place.version_layer - 1) // (b - 1) + place.version_index
        update = MarkUpdate(place.mark_layer, place.mark_index, MARK)
        node_updates.setdefault(node, []).append(update)
    tree = complete_version_tree(b, d, node_updates)
    marked_tree = MarkedAncestorTree(b, d)
    return ReductionInstance(shape, tree, marked_tree, MarkedAncestorStructure(marked_tree))


def query_map(shape: ButterflyShape, source: int, sink: int) -> tuple[int, AncestorQuery]:
    """Version-tree leaf and marked-tree leaf answering one reachability pair.

    The version leaf sits at the source's position in layer d.  The
    marked-tree leaf is the sink's index with its base-b digits reversed,
    matching the mark-index formula at the last layer.
    """
    shape.check_index(source)
    shape.check_index(sink)
    b, d = shape.degree, shape.depth
    version_leaf = (b**d - 1) // (b - 1) + source
    digits = shape.digits(sink)
    reversed_index = sum(b ** (d - 1 - k) * digits[k] for k in range(d))
    return version_leaf, AncestorQuery(d, reversed_index)


def answer_reachability(inst: ReductionInstance, store: PersistentStore,
                        source: int, sink: int,
                        counter: ProbeCounter | None = None) -> bool:
    """Reachable iff the sink's leaf has no marked ancestor in the source's version."""
    version, query = query_map(inst.shape, source, sink)
    return not persistent_query(store, inst.structure, version, query, counter)
