"""Walk through rank certificates on a sorted table.

A verifier that sees only two cells of a sorted table can still certify
the rank of any query, because an adjacent bracketing pair leaves no
wiggle room.  This script builds a small table, lets the prover pick
probe sets, and shows the verifier accepting them and rejecting
uninformative ones.
"""

from probelab import (REJECT, ProbeSet, RankInstance, rank_build, rank_prove,
                      rank_verify, true_rank)

inst = RankInstance(universe=16, elements=frozenset({1, 3, 4, 8}))
table = rank_build(inst, width=8)
print(f"set {sorted(inst.elements)} stored sorted in {table.n} cells:")
print(f"  cells 1..{table.n} hold {table.entries}")

# the prover binary-searches (computation is free), the verifier only
# sees the probed (index, word) pairs
for x in (0, 2, 5, 9):
    proof = rank_prove(table, x)
    probes = ProbeSet.from_table(table.table, proof)
    answer = rank_verify(x, probes, table.n)
    print(f"query x={x}: prover probes {sorted(proof)} -> verifier says rank {answer}"
          f" (direct count: {true_rank(x, inst.elements)})")

# a non-adjacent pair pins nothing down, so the verifier must reject
bad = ProbeSet.from_table(table.table, (2, 4))
print(f"non-adjacent probes {{2, 4}} for x=5 -> {rank_verify(5, bad, table.n)}")
assert rank_verify(5, bad, table.n) is REJECT

# soundness on this table, exhaustively: no probe pair of any kind can
# make the verifier report a wrong rank
from itertools import combinations

lies = 0
for size in (0, 1, 2):
    for P in combinations(range(1, table.n + 1), size):
        probes = tuple((i, table.entries[i - 1]) for i in P)
        for x in range(16):
            result = rank_verify(x, probes, table.n)
            if result is not REJECT and result != true_rank(x, inst.elements):
                lies += 1
print(f"exhaustive sweep over all probe subsets and queries: {lies} wrong answers")
