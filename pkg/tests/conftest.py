"""Shared instance generators and oracles for the test suites."""

import random

from probelab.butterfly import ButterflyEdge
from probelab.dynamic import (MARK, UNMARK, MarkedAncestorStructure,
                              MarkedAncestorTree, MarkUpdate)
from probelab.persistence import VersionTree


def all_paths(shape, source, sink):
    """Independent oracle: enumerate every source-to-sink path of the full graph."""
    b = shape.degree
    paths = []

    def extend(layer, index, acc):
        if layer == shape.depth:
            if index == sink:
                paths.append(tuple(acc))
            return
        step = b**layer
        base = index - (index // step % b) * step
        for c in range(b):
            upper = base + c * step
            acc.append(ButterflyEdge(layer, index, upper))
            extend(layer + 1, upper, acc)
            acc.pop()

    extend(0, source, [])
    return paths


def random_version_tree(rng: random.Random, size: int, updates) -> VersionTree:
    """Random recursive tree on nodes 0..size-1 carrying the given updates."""
    children = [[] for _ in range(size)]
    for node in range(1, size):
        children[rng.randrange(node)].append(node)
    per_node = [[] for _ in range(size)]
    for update in updates:
        per_node[rng.randrange(size)].append(update)
    return VersionTree(tuple(tuple(c) for c in children),
                       tuple(tuple(u) for u in per_node))


def random_marked_instance(rng: random.Random, max_versions=50, max_updates=200):
    """Random marked-ancestor structure plus a random version tree over it."""
    degree = rng.choice((2, 3))
    depth = rng.randint(1, 3)
    tree = MarkedAncestorTree(degree, depth)
    structure = MarkedAncestorStructure(tree)
    nodes = list(tree.nodes())
    size = rng.randint(1, max_versions)
    m = rng.randint(0, max_updates)
    updates = [
        MarkUpdate(*rng.choice(nodes), MARK if rng.random() < 0.65 else UNMARK)
        for _ in range(m)
    ]
    return random_version_tree(rng, size, updates), structure
