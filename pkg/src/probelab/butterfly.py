"""Butterfly graphs, subgraphs, and brute-force reachability oracles.

A butterfly of degree b and depth d has d+1 layers of b**d nodes.  Writing
a node's index in base b, least significant digit first, an edge runs from
layer i to layer i+1 exactly between nodes whose digit vectors agree
everywhere except possibly at coordinate i.  Layer 0 nodes are sources,
layer d nodes sinks, and each source-sink pair is joined by exactly one
path: the one that rewrites coordinate i to the sink's at step i, morphing
the source's digits into the sink's one coordinate per layer.

Subgraphs are stored by their missing edges, since the reduction emits one
update per missing edge.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import IndexOutOfBounds, InstanceParseError, InvalidEdge


class ButterflyEdge(NamedTuple):
    """Edge from ``lower`` (in ``layer``) to ``upper`` (in ``layer`` + 1)."""

    layer: int
    lower: int
    upper: int


@dataclass(frozen=True)
class ButterflyShape:
    degree: int
    depth: int

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError(f"degree must be >= 2, got {self.degree}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")

    @property
    def layer_width(self) -> int:
        """Nodes per layer."""
        return self.degree**self.depth

    @property
    def total_edges(self) -> int:
        return self.depth * self.degree ** (self.depth + 1)

    def digits(self, index: int) -> tuple[int, ...]:
        """Base-b digits of a layer index, least significant first."""
        self.check_index(index)
        out = []
        for _ in range(self.depth):
            out.append(index % self.degree)
            index //= self.degree
        return tuple(out)

    def index_of(self, digits) -> int:
        index = 0
        for k, dig in enumerate(digits):
            index += dig * self.degree**k
        return index

    def check_index(self, index: int) -> None:
        if not 0 <= index < self.layer_width:
            raise IndexOutOfBounds(
                f"index {index} outside 0..{self.layer_width - 1}"
            )

    def check_edge(self, edge: ButterflyEdge) -> None:
        if not 0 <= edge.layer < self.depth:
            raise InvalidEdge(f"edge layer {edge.layer} outside 0..{self.depth - 1}")
        try:
            lo = self.digits(edge.lower)
            up = self.digits(edge.upper)
        except IndexOutOfBounds as exc:
            raise InvalidEdge(str(exc)) from exc
        for k in range(self.depth):
            if k != edge.layer and lo[k] != up[k]:
                raise InvalidEdge(
                    f"{edge} changes coordinate {k}, only {edge.layer} may differ"
                )


def enumerate_edges(shape: ButterflyShape):
    """All edges, layer by layer, lower index ascending, upper digit ascending."""
    b = shape.degree
    for layer in range(shape.depth):
        step = b**layer
        for lower in range(shape.layer_width):
            base = lower - (lower // step % b) * step
            for c in range(b):
                yield ButterflyEdge(layer, lower, base + c * step)


@dataclass(frozen=True)
class ButterflySubgraph:
    """A butterfly minus a set of missing edges."""

    shape: ButterflyShape
    missing: frozenset[ButterflyEdge]

    def __post_init__(self):
        object.__setattr__(self, "missing", frozenset(self.missing))
        for edge in self.missing:
            self.shape.check_edge(edge)

    @property
    def present_edges(self) -> int:
        return self.shape.total_edges - len(self.missing)


def unique_path(shape: ButterflyShape, source: int, sink: int) -> tuple[ButterflyEdge, ...]:
    """The one source-to-sink path of the full butterfly.

    The node at layer i carries the sink's digits on coordinates below i
    and the source's on the rest.
    """
    shape.check_index(source)
    shape.check_index(sink)
    src = shape.digits(source)
    dst = shape.digits(sink)
    path = []
    node = list(src)
    lower = source
    for layer in range(shape.depth):
        node[layer] = dst[layer]
        upper = shape.index_of(node)
        path.append(ButterflyEdge(layer, lower, upper))
        lower = upper
    return tuple(path)


def oracle_reachable(sub: ButterflySubgraph, source: int, sink: int) -> bool:
    """Path-scan oracle: reachable iff no edge of the unique path is missing."""
    missing = sub.missing
    for edge in unique_path(sub.shape, source, sink):
        if edge in missing:
            return False
    return True


def bfs_reachable(sub: ButterflySubgraph, source: int, sink: int) -> bool:
    """Generic breadth-first search over present edges; cross-check oracle."""
    shape = sub.shape
    shape.check_index(source)
    shape.check_index(sink)
    b = shape.degree
    target = (shape.depth, sink)
    seen = {(0, source)}
    queue = deque(seen)
    while queue:
        layer, index = queue.popleft()
        if (layer, index) == target:
            return True
        if layer == shape.depth:
            continue
        step = b**layer
        base = index - (index // step % b) * step
        for c in range(b):
            upper = base + c * step
            if ButterflyEdge(layer, index, upper) in sub.missing:
                continue
            nxt = (layer + 1, upper)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def instance_to_dict(sub: ButterflySubgraph) -> dict:
    """JSON form: degree, depth, and the missing edges in enumeration order.

    Enumeration order coincides with sorting by (layer, lower, upper).
    """
    edges = sorted(sub.missing)
    return {
        "degree": sub.shape.degree,
        "depth": sub.shape.depth,
        "missing_edges": [
            {"layer": e.layer, "lower_index": e.lower, "upper_index": e.upper}
            for e in edges
        ],
    }


def instance_from_dict(data) -> ButterflySubgraph:
    if not isinstance(data, dict):
        raise InstanceParseError("instance must be a JSON object")
    try:
        degree = data["degree"]
        depth = data["depth"]
        raw_edges = data["missing_edges"]
    except (KeyError, TypeError) as exc:
        raise InstanceParseError(f"missing instance field: {exc}") from exc
    if not isinstance(degree, int) or not isinstance(depth, int):
        raise InstanceParseError("degree and depth must be integers")
    try:
        shape = ButterflyShape(degree, depth)
    except ValueError as exc:
        raise InstanceParseError(str(exc)) from exc
    if not isinstance(raw_edges, list):
        raise InstanceParseError("missing_edges must be a list")
    missing = set()
    for entry in raw_edges:
        try:
            edge = ButterflyEdge(entry["layer"], entry["lower_index"],
                                 entry["upper_index"])
        except (KeyError, TypeError) as exc:
            raise InstanceParseError(f"malformed edge entry {entry!r}") from exc
        if not all(isinstance(v, int) for v in edge):
            raise InstanceParseError(f"edge fields must be integers: {entry!r}")
        try:
            shape.check_edge(edge)
        except InvalidEdge as exc:
            raise InstanceParseError(str(exc)) from exc
        missing.add(edge)
    return ButterflySubgraph(shape, frozenset(missing))


def save_instance(sub: ButterflySubgraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(sub))


def format_instance(sub: ButterflySubgraph) -> str:
    return json.dumps(instance_to_dict(sub), indent=2, sort_keys=True) + "\n"


def load_instance(path) -> ButterflySubgraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"invalid JSON in {path}: {exc}") from exc
    return instance_from_dict(data)
