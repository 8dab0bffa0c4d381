"""Answer butterfly reachability through persistent marked ancestor.

Every source-sink pair of a butterfly has exactly one connecting path, so
a reachability query only asks whether some edge of that path is missing.
The reduction stores each missing edge as a mark update in a version
tree: the version node covers exactly the sources that can reach the
edge, and the marked node sits exactly where the edge would appear on any
surviving path.  Reachability then becomes one marked-ancestor query
against the right version.
"""

import random

from probelab import (ButterflySubgraph, ProbeCounter, answer_reachability,
                      bfs_reachable, build_instance, edge_to_update,
                      enumerate_edges, oracle_reachable, query_map)
from probelab.fixtures import FIGURE3_EDGES, figure3_subgraph

sub = figure3_subgraph()
shape = sub.shape
print(f"butterfly degree {shape.degree}, depth {shape.depth}:"
      f" {shape.total_edges} edges, {len(sub.missing)} missing")

for name, edge in FIGURE3_EDGES.items():
    place = edge_to_update(shape, edge)
    print(f"  {name} = (layer {edge.layer}: {edge.lower} -> {edge.upper})"
          f"  ->  mark ({place.mark_layer}, {place.mark_index})"
          f" placed at version node ({place.version_layer}, {place.version_index})")

inst = build_instance(sub)
store = inst.build_store()
print(f"store: {store.measured_cells} cells of {store.width} bits,"
      f" {inst.version_tree.update_count} updates")

print("reachability, all pairs (rows = sources, columns = sinks):")
for s in range(shape.layer_width):
    row = []
    for t in range(shape.layer_width):
        counter = ProbeCounter()
        reachable = answer_reachability(inst, store, s, t, counter)
        assert reachable == oracle_reachable(sub, s, t) == bfs_reachable(sub, s, t)
        row.append("." if reachable else "x")
    print("  " + " ".join(row))

version, query = query_map(shape, 0, 2)
print(f"pair (source 0, sink 2) maps to version leaf {version}"
      f" and marked-tree leaf {query.index}")

# stress a bigger random instance against both oracles
from probelab import ButterflyShape

rng = random.Random(3)

big = ButterflyShape(2, 3)
missing = frozenset(e for e in enumerate_edges(big) if rng.random() < 0.35)
big_sub = ButterflySubgraph(big, missing)
big_inst = build_instance(big_sub)
big_store = big_inst.build_store()
worst = 0
for s in range(big.layer_width):
    for t in range(big.layer_width):
        counter = ProbeCounter()
        got = answer_reachability(big_inst, big_store, s, t, counter)
        assert got == oracle_reachable(big_sub, s, t)
        worst = max(worst, counter.count)
print(f"depth-3 instance, all {big.layer_width ** 2} pairs agree with the oracle;"
      f" worst query used {worst} probes (bound {2 * (big.depth + 1) + 2})")
