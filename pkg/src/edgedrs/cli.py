"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 argument error, 3 when a
verification command found disagreements.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .closed_form import Deviation, family_pair_count, verify_family
from .core import GraphError
from .families import GraphSpecError, LabeledGraph, from_spec, make_generalized_petersen
from .report import Battery, render_markdown, run_battery
from .resolving import (
    DEFAULT_BUDGET,
    DOUBLY_RESOLVING,
    RESOLVING,
    BudgetExceededError,
    SearchResult,
    greedy_doubly_resolving,
    is_doubly_resolving,
    min_cardinality_search,
)

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_USAGE = 2
EXIT_DEVIATIONS = 3


def _parse_range(text: str) -> range:
    """Inclusive range syntax ``a..b`` (also accepts a single integer)."""
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
    else:
        lo_text = hi_text = text
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise GraphSpecError(f"bad range {text!r}, expected a..b") from None
    return range(lo, hi + 1)


def _add_common(p: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        p.add_argument(
            "--graph",
            required=True,
            help="family spec (sunlet:<n>, prism:<n>, cycle:<n>, path:<n>, "
            "gp:<n>:<k>) or file:<path>",
        )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields")
    p.add_argument("--out", help="write the report to a file as well")


def _add_search_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("vertex", "edge"), default="vertex")
    p.add_argument("--all-optima", action="store_true",
                   help="collect every optimal set at the answer cardinality")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="cap on candidate subsets examined")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap for multi-instance commands")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edge-drs",
        description="Resolving and doubly resolving sets, vertex and edge versions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a family instance and export it")
    _add_common(p)
    p.add_argument("--dot", help="also write a DOT rendering of the graph")
    p.add_argument("--line-dot", help="also write a DOT rendering of the line graph")

    p = sub.add_parser("distances", help="print the distance matrix")
    _add_common(p)
    p.add_argument("--mode", choices=("vertex", "edge"), default="vertex")

    p = sub.add_parser("dim", help="exact metric dimension")
    _add_common(p)
    _add_search_options(p)

    p = sub.add_parser("psi", help="exact minimum doubly resolving set size")
    _add_common(p)
    _add_search_options(p)
    p.add_argument("--start-at-dim", action="store_true",
                   help="start the search at the metric dimension lower bound")
    p.add_argument("--greedy", action="store_true",
                   help="also report the greedy upper-bound set")

    p = sub.add_parser("verify", help="closed-form distance rules vs BFS")
    _add_common(p, graph=False)
    p.add_argument("--family", choices=("sunlet", "prism"), required=True)
    p.add_argument("--n", required=True, help="size range a..b")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("reproduce", help="run the full reference battery")
    _add_common(p, graph=False)
    p.add_argument("--sunlet-n", default="4..14", help="sweep range for sunlets")
    p.add_argument("--prism-n", default="6..12",
                   help="doubly-resolving sweep range for prisms")
    p.add_argument("--prism-dim-n", default="3..12",
                   help="metric-dimension sweep range for prisms")

    p = sub.add_parser("experiment",
                       help="dim_E / psi_E table for generalized Petersen graphs")
    _add_common(p, graph=False)
    p.add_argument("--n", required=True, help="size range a..b")
    p.add_argument("--k", default="all",
                   help="skip parameter: an integer or 'all' valid values")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    return parser


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------

def _emit(report: dict, args: argparse.Namespace, text_lines: list[str]) -> None:
    if args.no_timing:
        _strip_timing(report)
    if args.json:
        body = json.dumps(report, indent=2)
    else:
        body = "\n".join(text_lines)
    print(body)
    if getattr(args, "out", None) and args.command != "reproduce":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")


def _strip_timing(obj) -> None:
    if isinstance(obj, dict):
        obj.pop("elapsed_ms", None)
        for value in obj.values():
            _strip_timing(value)
    elif isinstance(obj, list):
        for value in obj:
            _strip_timing(value)


def _graph_summary(lg: LabeledGraph, spec: str) -> dict:
    return {
        "spec": spec,
        "family": lg.family,
        "order": lg.graph.order,
        "size": lg.graph.size,
    }


def _result_payload(
    result: SearchResult, lg: LabeledGraph, mode: str, include_timing: bool
) -> dict:
    labels = None
    if mode == "edge" and lg.labels:
        labels = lg.line_label_order()
    return result.to_json_dict(labels=labels, include_timing=include_timing)


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def _cmd_generate(args) -> int:
    lg = from_spec(args.graph)
    report = {
        "command": "generate",
        "graph": _graph_summary(lg, args.graph),
    }
    lines = [f"{lg.family}: order {lg.graph.order}, size {lg.graph.size}"]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(lg.to_json_dict(), fh, indent=2)
            fh.write("\n")
        report["written"] = args.out
        lines.append(f"graph JSON written to {args.out}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(lg.to_dot())
        report["dot"] = args.dot
        lines.append(f"DOT written to {args.dot}")
    if args.line_dot:
        with open(args.line_dot, "w", encoding="utf-8") as fh:
            fh.write(lg.line_to_dot())
        report["line_dot"] = args.line_dot
        lines.append(f"line-graph DOT written to {args.line_dot}")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


def _cmd_distances(args) -> int:
    lg = from_spec(args.graph)
    if args.mode == "edge":
        dm = lg.graph.line_distance_matrix
        names = list(lg.line_label_order()) if lg.labels else [
            f"{u}-{v}" for u, v in lg.graph.edges
        ]
    else:
        dm = lg.graph.distance_matrix
        names = [str(v) for v in range(lg.graph.order)]
    report = {
        "command": "distances",
        "graph": _graph_summary(lg, args.graph),
        "mode": args.mode,
        "elements": names,
        "matrix": [list(row) for row in dm.rows],
    }
    width = max(len(name) for name in names) + 1
    lines = [" " * width + " ".join(f"{name:>{width}}" for name in names)]
    for name, row in zip(names, dm.rows):
        lines.append(
            f"{name:>{width}}" + " ".join(f"{d:>{width}}" for d in row)
        )
    _emit(report, args, lines)
    return EXIT_OK


def _run_search(args, predicate: str) -> tuple[dict, list[str], int]:
    lg = from_spec(args.graph)
    g = lg.graph
    dm = g.line_distance_matrix if args.mode == "edge" else g.distance_matrix
    start_k = 1 if predicate == RESOLVING else 2
    if predicate == DOUBLY_RESOLVING and getattr(args, "start_at_dim", False):
        dim = min_cardinality_search(dm, RESOLVING, budget=args.budget)
        start_k = max(2, dim.cardinality)
    started = time.perf_counter()
    result = min_cardinality_search(
        dm, predicate, start_k, budget=args.budget, all_optima=args.all_optima
    )
    elapsed_ms = round((time.perf_counter() - started) * 1000.0, 3)
    payload = _result_payload(result, lg, args.mode, include_timing=True)
    payload["elapsed_ms"] = elapsed_ms
    report = {
        "command": args.command,
        "graph": _graph_summary(lg, args.graph),
        "mode": args.mode,
        "result": payload,
    }
    lines = [
        f"command: {args.command}",
        f"graph: {lg.family} (order {g.order}, size {g.size})",
        f"mode: {args.mode}",
        f"cardinality: {result.cardinality}",
        "set: " + " ".join(str(x) for x in payload["set"]),
        f"subsets examined: {result.subsets_examined}",
    ]
    if args.all_optima:
        lines.append(f"optimal sets: {len(result.all_optima)}")
    if not args.no_timing:
        lines.append(f"elapsed: {elapsed_ms} ms")
    if getattr(args, "greedy", False) and predicate == DOUBLY_RESOLVING:
        greedy = greedy_doubly_resolving(dm)
        assert is_doubly_resolving(dm, greedy).ok
        if args.mode == "edge" and lg.labels:
            order = lg.line_label_order()
            greedy_names = [order[i] for i in greedy]
        else:
            greedy_names = list(greedy)
        report["greedy"] = {"size": len(greedy), "set": greedy_names}
        lines.append(
            f"greedy upper bound: {len(greedy)} "
            + " ".join(str(x) for x in greedy_names)
        )
    return report, lines, EXIT_OK


def _cmd_dim(args) -> int:
    report, lines, code = _run_search(args, RESOLVING)
    _emit(report, args, lines)
    return code


def _cmd_psi(args) -> int:
    report, lines, code = _run_search(args, DOUBLY_RESOLVING)
    _emit(report, args, lines)
    return code


def _map_instances(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _cmd_verify(args) -> int:
    ns = _parse_range(args.n)

    def one(n: int) -> dict:
        deviations: list[Deviation] = verify_family(args.family, [n])
        return {
            "family": args.family,
            "n": n,
            "pairs_checked": family_pair_count(args.family, n),
            "deviations": [d.to_json_dict() for d in deviations],
        }

    instances = _map_instances(one, list(ns), args.threads)
    total = sum(len(inst["deviations"]) for inst in instances)
    report = {
        "command": "verify",
        "family": args.family,
        "n": [ns.start, ns.stop - 1],
        "instances": instances,
        "total_deviations": total,
    }
    lines = [
        f"verify {args.family} n={ns.start}..{ns.stop - 1}: "
        f"{len(instances)} instance(s), {total} deviation(s)"
    ]
    for inst in instances:
        lines.append(
            f"  n={inst['n']}: {inst['pairs_checked']} pairs checked, "
            f"{len(inst['deviations'])} deviation(s)"
        )
        for dev in inst["deviations"]:
            lines.append(
                f"    {dev['pair']}: formula {dev['formula']} vs bfs {dev['bfs']}"
            )
    _emit(report, args, lines)
    return EXIT_DEVIATIONS if total else EXIT_OK


def _cmd_reproduce(args) -> int:
    battery: Battery = run_battery(
        sunlet_ns=list(_parse_range(args.sunlet_n)),
        prism_dim_ns=list(_parse_range(args.prism_dim_n)),
        prism_psi_ns=list(_parse_range(args.prism_n)),
    )
    out_path = args.out or "reproduce.md"
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(render_markdown(battery))
    report = battery.to_json_dict()
    report["command"] = "reproduce"
    report["written"] = out_path
    lines = []
    for check in battery.checks:
        lines.append(f"{'PASS' if check.ok else 'FAIL'} {check.name}")
    lines.append(f"report written to {out_path}")
    _emit(report, args, lines)
    return EXIT_OK if battery.ok else EXIT_DEVIATIONS


def _cmd_experiment(args) -> int:
    ns = _parse_range(args.n)
    jobs: list[tuple[int, int]] = []
    for n in ns:
        if args.k == "all":
            jobs.extend((n, k) for k in range(1, (n - 1) // 2 + 1))
        else:
            try:
                k = int(args.k)
            except ValueError:
                raise GraphSpecError(f"--k must be an integer or 'all', got {args.k!r}")
            if 1 <= k < n / 2:
                jobs.append((n, k))

    def one(job: tuple[int, int]) -> dict:
        n, k = job
        lg = make_generalized_petersen(n, k)
        dm = lg.graph.line_distance_matrix
        row: dict = {"n": n, "k": k, "order": lg.graph.order, "size": lg.graph.size}
        try:
            dim = min_cardinality_search(dm, RESOLVING, budget=args.budget)
            row["dim_edge"] = dim.cardinality
        except BudgetExceededError:
            row["dim_edge"] = None
        try:
            res = min_cardinality_search(dm, DOUBLY_RESOLVING, budget=args.budget)
            row["psi_edge"] = res.cardinality
            row["psi_edge_exact"] = True
        except BudgetExceededError:
            row["psi_edge"] = len(greedy_doubly_resolving(dm))
            row["psi_edge_exact"] = False
        return row

    rows = _map_instances(one, jobs, args.threads)
    report = {"command": "experiment", "rows": rows}
    lines = ["  n  k  |E|  dim_E  psi_E"]
    for row in rows:
        marker = "" if row["psi_edge_exact"] else " (upper bound only)"
        dim_txt = "-" if row["dim_edge"] is None else row["dim_edge"]
        lines.append(
            f"{row['n']:>3} {row['k']:>2} {row['size']:>4}  "
            f"{dim_txt:>5}  {row['psi_edge']:>5}{marker}"
        )
    if not rows:
        lines = ["no instances in range"]
    _emit(report, args, lines)
    return EXIT_OK


_HANDLERS = {
    "generate": _cmd_generate,
    "distances": _cmd_distances,
    "dim": _cmd_dim,
    "psi": _cmd_psi,
    "verify": _cmd_verify,
    "reproduce": _cmd_reproduce,
    "experiment": _cmd_experiment,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own diagnostics
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except GraphSpecError as exc:
        print(f"edge-drs: argument error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"edge-drs: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (GraphError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"edge-drs: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
