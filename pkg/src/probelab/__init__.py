"""Cell-probe data structure laboratory.

Instrumented w-bit memory with probe accounting, rank certificates over
sorted tables, a non-deterministic full-persistence transformation for
arbitrary dynamic structures, and the reduction from butterfly-subgraph
reachability to persistent marked ancestor, all checked against
brute-force oracles.
"""

from .butterfly import (ButterflyEdge, ButterflyShape, ButterflySubgraph,
                        bfs_reachable, enumerate_edges, format_instance,
                        instance_from_dict, instance_to_dict, load_instance,
                        oracle_reachable, save_instance, unique_path)
from .dynamic import (MARK, UNMARK, AncestorQuery, DynamicStructure, MarkAction,
                      MarkedAncestorStructure, MarkedAncestorTree, MarkUpdate,
                      RawWriteStructure, ShadowMarkedAncestor)
from .errors import (IndexOutOfBounds, InstanceParseError, InvalidEdge,
                     InvalidParams, NodeOutOfBounds, NoOpenFrame, ProbeLabError,
                     ValueTooWide, VerificationFailure, VerificationRejected,
                     WidthTooSmall)
from .memory import (REJECT, CertificateTable, InstrumentedMemory, ProbeSet,
                     default_width, verify_generic)
from .persistence import (CellEventTable, PersistentStore, ProbeCounter,
                          VersionTree, build_store, cell_at_version,
                          persistent_query, prove_cell, replay_oracle,
                          replay_to_version, verify_cell)
from .rank import (RankInstance, RankTable, rank_build, rank_prove, rank_verify,
                   true_rank)
from .reduction import (ReductionInstance, UpdatePlacement, answer_reachability,
                        build_instance, complete_version_tree, edge_to_update,
                        query_map)

__version__ = "0.1.0"
