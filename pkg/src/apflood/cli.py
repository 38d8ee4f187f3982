"""Experiment runner: single runs, beta sweeps, graph batches, oracle dumps.

Subcommands:
  run     simulate full discovery rounds for given betas/seeds, emit metrics
  sweep   same grid runner with a default beta grid of 0.1..0.9
  gen     write a batch of synthetic connected topologies as edge lists
  oracle  per-pair optimal primary/secondary lengths for a topology

Output is CSV (default) or JSON and is byte-identical across repeated
invocations with the same flags. Exit codes: 0 success, 2 usage error,
1 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .engine import run_full_round
from .metrics import overhead_report, path_quality
from .oracle import SecondaryOracle
from .topology import (
    TopologyError,
    dijkstra_path,
    format_topology,
    load_topology,
    random_graph,
)

RUN_COLUMNS = (
    "topology,n,beta,seed,n_m,bound_paper,bound_corrected,pc,sc,po,so,"
    "overlap_suboptimal,n_adv,n_refresh,adv_share,slots_elapsed"
).split(",")

ORACLE_COLUMNS = (
    "src,dst,primary_len,oracle_similarity,oracle_secondary_len,distinct_secondary"
).split(",")

# Conventions recorded at the top of run/sweep CSV output.
CSV_PREAMBLE = "# n_refresh aggregates keep-alive traffic over all ordered node pairs"

DEFAULT_SWEEP_BETAS = tuple(round(0.1 * k, 1) for k in range(1, 10))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _parse_betas(text: str, parser: argparse.ArgumentParser) -> list[float]:
    try:
        betas = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        parser.error(f"--beta expects comma-separated floats, got {text!r}")
    if not betas:
        parser.error("--beta list is empty")
    for b in betas:
        if not 0.0 <= b < 1.0:
            parser.error(f"beta must be in [0, 1), got {b}")
    return betas


def _mean(values: list[float]) -> float | None:
    return sum(values) / len(values) if values else None


def _write_csv(rows: list[list], header: list[str], out, preamble: str | None = None) -> None:
    buf = io.StringIO()
    if preamble:
        buf.write(preamble + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _write_json(payload, out) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args, parser, default_betas=None) -> int:
    if args.beta is not None:
        betas = _parse_betas(args.beta, parser)
    elif default_betas is not None:
        betas = list(default_betas)
    else:
        parser.error("--beta is required for run")
    if args.runs < 1:
        parser.error("--runs must be >= 1")
    graph = load_topology(args.topology)
    name = os.path.splitext(os.path.basename(args.topology))[0]
    oracle = SecondaryOracle(graph)
    seeds = list(range(args.seed, args.seed + args.runs))

    rows: list[list] = []
    traces: list[tuple[float, int, tuple[int, ...]]] = []
    json_rows: list[dict] = []
    for beta in betas:
        for seed in seeds:
            report = run_full_round(graph, beta, seed)
            quality = path_quality(graph, report.route_tables, run=report, beta=beta, oracle=oracle)
            over = overhead_report(args.window, args.t_adv, args.t_refresh, report)
            row = [
                name, graph.n, beta, seed,
                quality.n_m, quality.bound_paper, quality.bound_corrected,
                quality.pc, quality.sc, quality.po, quality.so,
                quality.mean_suboptimal_node_overlap,
                over.n_adv, over.n_refresh, over.adv_share,
                report.slots_elapsed,
            ]
            rows.append(row)
            if args.format == "json":
                record = dict(zip(RUN_COLUMNS, row))
                if args.trace:
                    record["trace"] = list(report.transmissions_per_slot)
                json_rows.append(record)
            elif args.trace:
                traces.append((beta, seed, report.transmissions_per_slot))

    summary: list[list] = []
    for beta in betas:
        group = [r for r in rows if r[2] == beta]
        summary.append([
            name, graph.n, beta, "mean",
            _mean([r[4] for r in group]),
            group[0][5], group[0][6],
            _mean([r[7] for r in group]),
            _mean([r[8] for r in group]),
            _mean([r[9] for r in group]),
            _mean([r[10] for r in group if r[10] is not None]),
            _mean([r[11] for r in group if r[11] is not None]),
            _mean([float(r[12]) for r in group]),
            _mean([float(r[13]) for r in group]),
            _mean([r[14] for r in group]),
            _mean([float(r[15]) for r in group]),
        ])

    if args.format == "json":
        payload = {
            "rows": json_rows,
            "summary": [dict(zip(RUN_COLUMNS, row)) for row in summary],
        }
        _write_json(payload, args.out)
        return 0
    if args.trace and not args.out:
        parser.error("--trace with csv output requires --out (traces go to OUT.trace.csv)")
    _write_csv(rows + summary, RUN_COLUMNS, args.out, preamble=CSV_PREAMBLE)
    if args.trace:
        trace_rows = [
            [name, beta, seed, slot, count]
            for beta, seed, trace in traces
            for slot, count in enumerate(trace)
        ]
        _write_csv(trace_rows, ["topology", "beta", "seed", "slot", "transmissions"],
                   args.out + ".trace.csv")
    return 0


def _cmd_sweep(args, parser) -> int:
    return _cmd_run(args, parser, default_betas=DEFAULT_SWEEP_BETAS)


def _cmd_gen(args, parser) -> int:
    if args.count < 1:
        parser.error("--count must be >= 1")
    os.makedirs(args.out_dir, exist_ok=True)
    written = []
    for k in range(args.count):
        sub_seed = args.seed + k
        graph = random_graph(args.nodes, args.degree, sub_seed)
        path = os.path.join(
            args.out_dir, f"random_n{args.nodes}_d{args.degree:g}_s{sub_seed}.txt"
        )
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(format_topology(graph))
        written.append(path)
    for path in written:
        print(path)
    return 0


def _cmd_oracle(args, parser) -> int:
    graph = load_topology(args.topology)
    oracle = SecondaryOracle(graph)
    rows: list[list] = []
    primary_lens: list[int] = []
    sims: list[int] = []
    secondary_lens: list[int] = []
    for src in range(graph.n):
        for dst in range(graph.n):
            if src == dst:
                continue
            primary, _ = dijkstra_path(graph, src, dst)
            verdict = oracle.verdict(primary)
            plen = len(primary) - 1
            primary_lens.append(plen)
            if verdict.oracle_path == primary:
                rows.append([src, dst, plen, None, None, False])
            else:
                rows.append([src, dst, plen, verdict.oracle_similarity,
                             verdict.oracle_length, True])
                sims.append(verdict.oracle_similarity)
                secondary_lens.append(verdict.oracle_length)
    mean_row = ["mean", "", _mean([float(v) for v in primary_lens]),
                _mean([float(v) for v in sims]),
                _mean([float(v) for v in secondary_lens]), ""]
    if args.format == "json":
        payload = {
            "pairs": [dict(zip(ORACLE_COLUMNS, row)) for row in rows],
            "mean_primary_len": mean_row[2],
            "mean_oracle_similarity": mean_row[3],
            "mean_oracle_secondary_len": mean_row[4],
        }
        _write_json(payload, args.out)
        return 0
    _write_csv(rows + [mean_row], ORACLE_COLUMNS, args.out)
    return 0


def _add_run_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--topology", required=True, help="edge-list topology file")
    sub.add_argument("--beta", help="comma-separated flood backoff values in [0,1)")
    sub.add_argument("--runs", type=int, default=10, help="seeds per beta (default 10)")
    sub.add_argument("--seed", type=int, default=1, help="first seed (default 1)")
    sub.add_argument("--t-adv", type=float, default=1.0, dest="t_adv",
                     help="advertisement period in seconds (default 1.0)")
    sub.add_argument("--t-refresh", type=float, default=0.05, dest="t_refresh",
                     help="keep-alive period in seconds (default 0.05)")
    sub.add_argument("--window", type=float, default=1.0,
                     help="observation window in seconds (default 1.0)")
    sub.add_argument("--trace", action="store_true",
                     help="also export per-slot transmission traces")
    sub.add_argument("--out", help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apflood",
        description="Adaptive probabilistic flooding experiments",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="simulate full rounds and report metrics")
    _add_run_flags(run)
    run.set_defaults(func=_cmd_run)

    sweep = subs.add_parser("sweep", help="run with a default beta grid 0.1..0.9")
    _add_run_flags(sweep)
    sweep.set_defaults(func=_cmd_sweep)

    gen = subs.add_parser("gen", help="generate synthetic random topologies")
    gen.add_argument("--nodes", type=int, required=True)
    gen.add_argument("--degree", type=float, required=True, help="target mean degree")
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--out-dir", required=True, dest="out_dir")
    gen.set_defaults(func=_cmd_gen)

    oracle = subs.add_parser("oracle", help="dump per-pair oracle path lengths")
    oracle.add_argument("--topology", required=True)
    oracle.add_argument("--out", help="output path (default stdout)")
    oracle.add_argument("--format", choices=("csv", "json"), default="csv")
    oracle.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (TopologyError, OSError) as exc:
        print(f"apflood: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
