import random

import pytest

from probelab.butterfly import (ButterflyEdge, ButterflyShape, ButterflySubgraph,
                                enumerate_edges, oracle_reachable, unique_path)
from probelab.dynamic import MARK, MarkUpdate
from probelab.errors import IndexOutOfBounds, InvalidEdge
from probelab.fixtures import FIGURE3_EDGES, figure3_subgraph
from probelab.persistence import ProbeCounter
from probelab.reduction import (UpdatePlacement, answer_reachability,
                                build_instance, complete_version_tree,
                                edge_to_update, query_map)

SHAPE22 = ButterflyShape(2, 2)


def test_placements_of_named_edges():
    # version/mark indices evaluated by hand from the digit sums
    expected = {
        "e_1": UpdatePlacement(2, 0, 1, 1),
        "e_2": UpdatePlacement(2, 2, 1, 0),
        "e_3": UpdatePlacement(1, 0, 2, 0),
        "e_4": UpdatePlacement(1, 0, 2, 2),
        "e_5": UpdatePlacement(1, 1, 2, 2),
    }
    for name, edge in FIGURE3_EDGES.items():
        assert edge_to_update(SHAPE22, edge) == expected[name]


def test_placement_rejects_invalid_edge():
    with pytest.raises(InvalidEdge):
        edge_to_update(SHAPE22, ButterflyEdge(0, 0, 2))


def test_walkthrough_version_tree_updates():
    inst = build_instance(figure3_subgraph())
    updates = inst.version_tree.updates
    assert updates[0] == ()
    assert updates[1] == (MarkUpdate(2, 0, MARK), MarkUpdate(2, 2, MARK))  # e_3, e_4
    assert updates[2] == (MarkUpdate(2, 2, MARK),)                         # e_5
    assert updates[3] == (MarkUpdate(1, 1, MARK),)                         # e_1
    assert updates[4] == ()
    assert updates[5] == (MarkUpdate(1, 0, MARK),)                         # e_2
    assert updates[6] == ()


def test_empty_and_full_missing_sets():
    empty = build_instance(ButterflySubgraph(SHAPE22, frozenset()))
    assert empty.version_tree.update_count == 0

    full = build_instance(
        ButterflySubgraph(SHAPE22, frozenset(enumerate_edges(SHAPE22))))
    vt = full.version_tree
    assert vt.update_count == 16
    # counted from the placement formula: the two depth-1 nodes take the
    # eight layer-1 edges, the four leaves take the eight layer-0 edges
    assert [len(vt.updates[n]) for n in range(7)] == [0, 4, 4, 2, 2, 2, 2]


def test_update_count_equals_missing_count():
    rng = random.Random(5)
    edges = list(enumerate_edges(SHAPE22))
    for _ in range(50):
        missing = frozenset(e for e in edges if rng.random() < 0.4)
        inst = build_instance(ButterflySubgraph(SHAPE22, missing))
        assert inst.version_tree.update_count == len(missing)


def test_query_map_examples():
    leaf_base = 3  # offset of layer 2 in the seven-node complete binary tree
    assert query_map(SHAPE22, 0, 0) == (leaf_base + 0, (2, 0))
    assert query_map(SHAPE22, 0, 1) == (leaf_base + 0, (2, 2))
    assert query_map(SHAPE22, 2, 2) == (leaf_base + 2, (2, 1))
    with pytest.raises(IndexOutOfBounds):
        query_map(SHAPE22, 4, 0)


def test_version_node_ancestry_matches_source_reach():
    # the version node holding an edge's update must be an ancestor of
    # exactly the leaves whose sources reach the edge's lower endpoint
    for depth in (1, 2, 3):
        shape = ButterflyShape(2, depth)
        b = shape.degree
        offset = lambda L: (b**L - 1) // (b - 1)
        for edge in enumerate_edges(shape):
            place = edge_to_update(shape, edge)
            node = offset(place.version_layer) + place.version_index
            lower = shape.digits(edge.lower)
            for source in range(shape.layer_width):
                reaches = shape.digits(source)[edge.layer:] == lower[edge.layer:]
                cur = offset(depth) + source
                is_ancestor = False
                while True:
                    if cur == node:
                        is_ancestor = True
                        break
                    if cur == 0:
                        break
                    cur = (cur - 1) // b
                assert is_ancestor == reaches, (edge, source)


def test_end_to_end_depth1_exhaustive():
    shape = ButterflyShape(2, 1)
    edges = list(enumerate_edges(shape))
    for mask in range(1 << len(edges)):
        missing = frozenset(e for k, e in enumerate(edges) if mask >> k & 1)
        sub = ButterflySubgraph(shape, missing)
        inst = build_instance(sub)
        store = inst.build_store()
        for s in range(2):
            for t in range(2):
                assert answer_reachability(inst, store, s, t) == \
                    oracle_reachable(sub, s, t)


def test_end_to_end_depth2_sampled():
    edges = list(enumerate_edges(SHAPE22))
    rng = random.Random(99)
    paths = {(s, t): unique_path(SHAPE22, s, t)
             for s in range(4) for t in range(4)}
    for mask in rng.sample(range(1 << 16), 300):
        missing = frozenset(e for k, e in enumerate(edges) if mask >> k & 1)
        sub = ButterflySubgraph(SHAPE22, missing)
        inst = build_instance(sub)
        store = inst.build_store()
        for (s, t), path in paths.items():
            want = not any(e in missing for e in path)
            assert answer_reachability(inst, store, s, t) == want


@pytest.mark.parametrize("degree", [2, 3])
def test_end_to_end_depth3_random(degree):
    shape = ButterflyShape(degree, 3)
    edges = list(enumerate_edges(shape))
    rng = random.Random(degree)
    for _ in range(30):
        missing = frozenset(
            e for e in edges if rng.random() < rng.choice((0.05, 0.3, 0.7)))
        sub = ButterflySubgraph(shape, missing)
        inst = build_instance(sub)
        store = inst.build_store()
        for s in range(shape.layer_width):
            for t in range(shape.layer_width):
                assert answer_reachability(inst, store, s, t) == \
                    oracle_reachable(sub, s, t)


def test_probe_chain_bound():
    for degree, depth in ((2, 2), (2, 3), (3, 2)):
        shape = ButterflyShape(degree, depth)
        edges = list(enumerate_edges(shape))
        rng = random.Random(depth * 10 + degree)
        missing = frozenset(e for e in edges if rng.random() < 0.5)
        inst = build_instance(ButterflySubgraph(shape, missing))
        store = inst.build_store()
        bound = 2 * (depth + 1) + 2
        for s in range(shape.layer_width):
            for t in range(shape.layer_width):
                counter = ProbeCounter()
                answer_reachability(inst, store, s, t, counter)
                assert counter.count <= bound


def test_complete_version_tree_layout():
    vt = complete_version_tree(2, 2, {})
    assert vt.size == 7
    assert vt.children[0] == (1, 2)
    assert vt.children[1] == (3, 4)
    assert vt.children[2] == (5, 6)
    assert all(vt.children[n] == () for n in range(3, 7))
