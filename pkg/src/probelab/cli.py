"""Command-line driver: instance generation, verification runs, probe benchmarks,
and the bundled reduction walk-through."""

from __future__ import annotations

import argparse
import csv
import math
import random
import sys

from . import fixtures
from .butterfly import (ButterflyShape, ButterflySubgraph, enumerate_edges,
                        format_instance, load_instance, oracle_reachable)
from .errors import InstanceParseError, InvalidParams, ProbeLabError, VerificationFailure
from .persistence import ProbeCounter, replay_to_version
from .reduction import answer_reachability, build_instance, edge_to_update

BENCH_COLUMNS = ["b", "d", "n", "m", "s", "w", "t_max", "bound_curve"]


def generate_subgraph(degree: int, depth: int, missing_prob: float,
                      seed: int) -> ButterflySubgraph:
    """Each edge goes missing independently with the given probability.

    Reproducible across platforms: one Mersenne Twister ``random()`` draw
    per edge, in edge enumeration order, from ``random.Random(seed)``.
    """
    if degree < 2 or depth < 1:
        raise InvalidParams(f"need degree >= 2 and depth >= 1, got ({degree}, {depth})")
    if not 0.0 <= missing_prob <= 1.0:
        raise InvalidParams(f"missing-prob must lie in [0, 1], got {missing_prob}")
    shape = ButterflyShape(degree, depth)
    rng = random.Random(seed)
    missing = frozenset(e for e in enumerate_edges(shape) if rng.random() < missing_prob)
    return ButterflySubgraph(shape, missing)


def bound_curve(n: int, s: int, w: int) -> float | None:
    """Reference curve lg(n) / lg(s*w / n); None when the ratio is not > 1."""
    if n <= 0 or s * w <= n:
        return None
    return math.log2(n) / math.log2(s * w / n)


def _cmd_gen(args) -> int:
    sub = generate_subgraph(args.degree, args.depth, args.missing_prob, args.seed)
    text = format_instance(sub)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _select_pairs(width: int, exhaustive: bool, limit: int = 1024):
    if exhaustive or width * width <= limit:
        return [(s, t) for s in range(width) for t in range(width)], True
    rng = random.Random(0)
    pairs = {(rng.randrange(width), rng.randrange(width)) for _ in range(limit)}
    return sorted(pairs), False


def _cmd_verify(args) -> int:
    sub = load_instance(args.instance)
    inst = build_instance(sub)
    store = inst.build_store()
    width = sub.shape.layer_width
    pairs, exhaustive = _select_pairs(width, args.exhaustive_pairs)
    mismatches = []
    probe_counts = []
    for source, sink in pairs:
        counter = ProbeCounter()
        got = answer_reachability(inst, store, source, sink, counter)
        want = oracle_reachable(sub, source, sink)
        probe_counts.append(counter.count)
        if got != want:
            mismatches.append((source, sink, got, want))
    d = sub.shape.depth
    print(f"instance: {args.instance} (degree {sub.shape.degree}, depth {d})")
    print(f"edges: {sub.present_edges} present, {len(sub.missing)} missing; "
          f"updates: {store.update_count}")
    print(f"store: s={store.measured_cells} cells, w={store.width} bits")
    mode = "exhaustive" if exhaustive else "sampled"
    print(f"pairs checked: {len(pairs)}/{width * width} ({mode})")
    if probe_counts:
        print(f"probes per query: max {max(probe_counts)}, "
              f"mean {sum(probe_counts) / len(probe_counts):.2f}; "
              f"bound 2*(d+1)+2 = {2 * (d + 1) + 2}")
    for source, sink, got, want in mismatches:
        print(f"MISMATCH source {source} sink {sink}: reduction says {got}, "
              f"oracle says {want}")
    print(f"mismatches: {len(mismatches)}")
    if mismatches:
        raise VerificationFailure(f"{len(mismatches)} mismatching pairs")
    return 0


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise InvalidParams(f"bad {what} list {text!r}") from exc


def _cmd_bench(args) -> int:
    degrees = _parse_int_list(args.degree, "degree")
    depths = _parse_int_list(args.depth, "depth")
    rng = random.Random(args.seed)
    rows = []
    for b in degrees:
        for d in depths:
            for _ in range(args.trials):
                sub = generate_subgraph(b, d, args.missing_prob, rng.randrange(2**32))
                inst = build_instance(sub)
                store = inst.build_store()
                width = sub.shape.layer_width
                t_max = 0
                for source in range(width):
                    for sink in range(width):
                        counter = ProbeCounter()
                        answer_reachability(inst, store, source, sink, counter)
                        if counter.count > t_max:
                            t_max = counter.count
                n = sub.present_edges
                curve = bound_curve(n, store.measured_cells, store.width)
                rows.append([b, d, n, store.update_count, store.measured_cells,
                             store.width, t_max,
                             "" if curve is None else f"{curve:.12g}"])
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(BENCH_COLUMNS)
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def figure3_transcript() -> list[str]:
    """Walk-through of the bundled 5-missing-edge instance, computed live."""
    sub = fixtures.figure3_subgraph()
    shape = sub.shape
    b, d = shape.degree, shape.depth
    lines = [f"reduction walk-through: butterfly degree {b}, depth {d}, "
             f"{len(sub.missing)} missing edges"]

    lines.append("placement per missing edge:")
    node_names: dict[tuple[int, int], list[str]] = {}
    for name, edge in fixtures.FIGURE3_EDGES.items():
        place = edge_to_update(shape, edge)
        v_lower = shape.digits(edge.lower)
        v_upper = shape.digits(edge.upper)
        lines.append(
            f"  {name}: layer {edge.layer} edge, v_lower={v_lower} v_upper={v_upper}"
            f" -> version layer {place.version_layer} index {place.version_index};"
            f" mark layer {place.mark_layer} index {place.mark_index}"
        )
        key = (place.version_layer, place.version_index)
        node_names.setdefault(key, []).append(name)

    lines.append("version tree updates (leaves are sources s_1..s_4):")
    for layer in range(d + 1):
        cells = []
        for pos in range(b**layer):
            names = node_names.get((layer, pos))
            cells.append("{" + ", ".join(names) + "}" if names else "-")
        lines.append(f"  layer {layer}: " + " | ".join(cells))

    inst = build_instance(sub)
    version_leaf = (b**d - 1) // (b - 1)  # leaf of source s_1
    mem = replay_to_version(inst.version_tree, inst.structure, version_leaf)
    by_layer: dict[int, list[int]] = {}
    for layer, index in inst.marked_tree.nodes():
        if mem.peek(inst.marked_tree.address(layer, index)):
            by_layer.setdefault(layer, []).append(index)
    lines.append("marks in version s_1 (root-path updates applied):")
    for layer in sorted(by_layer):
        indices = by_layer[layer]
        label = "index" if len(indices) == 1 else "indices"
        lines.append(f"  layer {layer}: {label} " + ", ".join(str(i) for i in indices))

    store = inst.build_store()
    agree = all(
        answer_reachability(inst, store, s, t) == oracle_reachable(sub, s, t)
        for s in range(shape.layer_width) for t in range(shape.layer_width)
    )
    total = shape.layer_width**2
    lines.append(f"all {total} source-sink pairs agree with the path oracle: {agree}")
    return lines


def _cmd_demo(args) -> int:
    for line in figure3_transcript():
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probelab",
        description="Butterfly reachability via persistent marked ancestor, "
                    "with probe accounting and brute-force verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random subgraph instance file")
    gen.add_argument("--degree", type=int, required=True)
    gen.add_argument("--depth", type=int, required=True)
    gen.add_argument("--missing-prob", type=float, default=0.5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="output path (default: stdout)")
    gen.set_defaults(func=_cmd_gen)

    ver = sub.add_parser("verify", help="check a reduction run against the oracle")
    ver.add_argument("instance", help="instance JSON file")
    ver.add_argument("--exhaustive-pairs", action="store_true",
                     help="check every source-sink pair regardless of size")
    ver.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="probe/space benchmark CSV")
    bench.add_argument("--degree", default="2", help="comma-separated degrees")
    bench.add_argument("--depth", default="1,2,3", help="comma-separated depths")
    bench.add_argument("--trials", type=int, default=3)
    bench.add_argument("--missing-prob", type=float, default=0.5)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", help="output CSV path (default: stdout)")
    bench.set_defaults(func=_cmd_bench)

    demo = sub.add_parser("demo-figure3",
                          help="print the bundled reduction walk-through")
    demo.set_defaults(func=_cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (InstanceParseError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProbeLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
