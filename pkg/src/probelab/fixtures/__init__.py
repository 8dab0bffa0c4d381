"""Bundled example instances used by the demos and the test suite."""

from __future__ import annotations

import importlib.resources

from ..butterfly import ButterflyEdge, ButterflyShape, ButterflySubgraph
from ..dynamic import RawWriteStructure
from ..persistence import VersionTree

FIGURE3_SHAPE = ButterflyShape(degree=2, depth=2)

# Named missing edges of the depth-2, degree-2 walk-through instance.
FIGURE3_EDGES = {
    "e_1": ButterflyEdge(layer=0, lower=0, upper=1),
    "e_2": ButterflyEdge(layer=0, lower=2, upper=2),
    "e_3": ButterflyEdge(layer=1, lower=0, upper=0),
    "e_4": ButterflyEdge(layer=1, lower=1, upper=1),
    "e_5": ButterflyEdge(layer=1, lower=3, upper=1),
}


def figure3_subgraph() -> ButterflySubgraph:
    return ButterflySubgraph(FIGURE3_SHAPE, frozenset(FIGURE3_EDGES.values()))


def figure3_json_path():
    """Path to the shipped JSON form of the walk-through instance."""
    return importlib.resources.files(__package__) / "figure3.json"


def figure2_fixture(x: int = 7, y: int = 9):
    """Four-version write schedule with one contested cell.

    The root writes ``x`` to the cell, the first grandchild writes ``y``;
    the middle node and the second grandchild write nothing.  Returns
    (version tree, structure, cell address): traversal times run 1..8 with
    the second grandchild discovered at time 5, and the cell's contents
    change at times 1, 3, 4, and 8 (to x, y, x, and back to the zero
    word).
    """
    addr = 0
    tree = VersionTree(
        children=((1,), (2, 3), (), ()),
        updates=(((addr, x),), (), ((addr, y),), ()),
    )
    return tree, RawWriteStructure(cell_width=8), addr
