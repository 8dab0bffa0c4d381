"""Make a tiny dynamic structure fully persistent, then query old versions.

Four versions in a tree share one contested memory cell.  A depth-first
traversal applies each version's updates on the way down and reverts them
on the way back up, recording the cell's contents at every time it
changes.  Any version's view of the cell is then the event-table entry
whose time is the predecessor of the version's discovery time, which a
two-probe rank certificate can verify.
"""

from probelab import (ProbeCounter, build_store, cell_at_version,
                      persistent_query, replay_oracle)
from probelab.fixtures import figure2_fixture

x, y = 7, 9
tree, structure, addr = figure2_fixture(x=x, y=y)
print("version tree: 0 -> 1 -> {2, 3};"
      f" version 0 writes {x} to cell {addr}, version 2 writes {y}")

store = build_store(tree, structure)
print(f"traversal clock: discovery {store.discovery_times},"
      f" finish {store.finish_times}")

table = store.tables[addr]
print(f"event table of cell {addr}: times {table.times},"
      f" contents after each event {table.contents}")

# version 3 was discovered at time 5; the predecessor event is time 4,
# when the revert of version 2's write restored x
for version in range(tree.size):
    counter = ProbeCounter()
    seen = cell_at_version(store, addr, version, counter)
    print(f"cell {addr} at version {version}"
          f" (discovered t={store.discovery_times[version]}):"
          f" {seen}  [{counter.count} probes]")
    assert seen == replay_oracle(tree, structure, version, addr)

# full query path: simulate the structure's query against the store only
counter = ProbeCounter()
answer = persistent_query(store, structure, 3, addr, counter)
print(f"persistent query (cell {addr}, version 3) = {answer}"
      f" using {counter.count} probes, replay oracle agrees:",
      answer == replay_oracle(tree, structure, 3, addr))

print(f"store footprint: {store.measured_cells} cells of {store.width} bits"
      f" for {tree.update_count} updates over {tree.size} versions")
