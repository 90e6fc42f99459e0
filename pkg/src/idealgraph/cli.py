"""Command-line front end.

    idealgraph info   --spec C2,F
    idealgraph graph  --spec F,F,F --format dot
    idealgraph dim    --spec F,F,F,F
    idealgraph sdim   --spec C1,C1
    idealgraph srg    --spec F,F,F,F --format json
    idealgraph verify --spec C1,C1,F
    idealgraph sweep  --sweep-max-fields 4 --format json

Exit status: 0 success/PASS, 1 FAIL, 2 usage error, 3 work budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager

from . import metric, strong, theorems
from .errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    IdealGraphError,
    SpecOutOfTheoremScopeError,
)
from .graph import build_graph, diameter, export, is_connected
from .ring import GRAMMAR, parse_ring_spec, render_ideal, short_label

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("info", "graph", "dim", "sdim", "srg", "verify", "sweep")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealgraph",
        description="Inclusion ideal graphs of products of chain rings and fields: "
        "metric and strong metric dimension, checked against closed forms.",
        epilog=f"ring spec grammar: {GRAMMAR}",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--spec", help="ring spec, e.g. C2,F,F")
    parser.add_argument("--format", choices=("text", "json", "dot"), default="text")
    parser.add_argument("--budget", type=int, default=metric.DEFAULT_BUDGET,
                        help="work budget of the metric dimension search")
    parser.add_argument("--mis-budget", type=int, default=strong.DEFAULT_MIS_BUDGET,
                        help="node budget of the independence number search")
    parser.add_argument("--oracle-cap", type=int, default=strong.DEFAULT_ORACLE_CAP,
                        help="largest graph handed to the brute-force sdim oracle")
    grid = theorems.SweepGrid()
    parser.add_argument("--sweep-max-fields", type=int, default=grid.max_fields)
    parser.add_argument("--sweep-max-chain", type=int, default=grid.max_chain)
    parser.add_argument("--sweep-max-components", type=int, default=grid.max_components)
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for sweep (report order is unchanged)")
    parser.add_argument("--out", help="write the result here instead of standard output")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _json(obj) -> str:
    return json.dumps(obj)


def _labels(spec, graph, indices) -> str:
    return "{" + ",".join(short_label(spec, graph.vertices[i]) for i in indices) + "}"


def cmd_info(args, spec, out) -> int:
    graph = build_graph(spec)
    connected = is_connected(graph) and len(graph) > 0
    diam = diameter(graph) if connected else None
    if args.format == "json":
        out.write(_json({"spec": list(spec.chain_lengths), "vertex_count": len(graph),
                         "connected": connected, "diameter": diam}) + "\n")
    else:
        out.write(f"spec={spec} vertices={len(graph)} connected={str(connected).lower()} "
                  f"diameter={'undefined' if diam is None else diam}\n")
    return EXIT_OK


def cmd_graph(args, spec, out) -> int:
    graph = build_graph(spec)
    if args.format in ("dot", "json"):
        out.write(export(graph, args.format).rstrip("\n") + "\n")
        return EXIT_OK
    out.write(f"# In(R) for R = {spec}: {len(graph)} vertices, {len(graph.edges())} edges\n")
    for i, v in enumerate(graph.vertices):
        out.write(f"{i}: {render_ideal(spec, v)}\n")
    for u, v in graph.edges():
        out.write(f"{u} -- {v}\n")
    return EXIT_OK


def _require_connected(graph):
    if not is_connected(graph) or len(graph) == 0:
        raise DisconnectedGraphError(f"In(R) for R = {graph.spec} is not connected")


def cmd_dim(args, spec, out) -> int:
    graph = build_graph(spec)
    _require_connected(graph)
    result = metric.metric_dimension_exact(graph, args.budget)
    try:
        predicted = metric.predicted_metric_dimension(spec)
        witness = [graph.index[v] for v in metric.predicted_basis(spec)]
        witness_ok = metric.is_resolving(witness, graph.distances)
    except SpecOutOfTheoremScopeError:
        predicted, witness, witness_ok = None, None, None
    agrees = predicted is None or (predicted == result.dimension and witness_ok)
    if args.format == "json":
        out.write(_json({
            "spec": list(spec.chain_lengths),
            "dim": result.dimension,
            "oracle_basis": [list(graph.vertices[i]) for i in result.basis],
            "predicted": predicted if predicted is not None else theorems.OUT_OF_SCOPE,
            "predicted_basis": None if witness is None else [list(graph.vertices[i]) for i in witness],
            "predicted_basis_resolving": witness_ok,
        }) + "\n")
    else:
        if predicted is None:
            out.write(f"dim={result.dimension} predicted=out-of-scope\n")
        else:
            out.write(f"dim={result.dimension} predicted={predicted} basis={_labels(spec, graph, witness)}"
                      f"{'' if witness_ok else ' (not resolving)'}\n")
        out.write(f"oracle_basis={_labels(spec, graph, result.basis)}\n")
        out.write("oracle_basis_components=" + " | ".join(render_ideal(spec, graph.vertices[i]) for i in result.basis) + "\n")
    return EXIT_OK if agrees else EXIT_FAIL


def cmd_sdim(args, spec, out) -> int:
    graph = build_graph(spec)
    _require_connected(graph)
    sd = strong.strong_metric_dimension_full(graph, args.mis_budget)
    oracle = None
    if len(graph) <= args.oracle_cap:
        oracle = strong.strong_metric_dimension_oracle(graph, cap=args.oracle_cap)[0]
    try:
        predicted = strong.predicted_sdim(spec)
    except SpecOutOfTheoremScopeError:
        predicted = None
    agrees = (predicted is None or predicted == sd.sdim) and (oracle is None or oracle == sd.sdim)
    if args.format == "json":
        out.write(_json({
            "spec": list(spec.chain_lengths),
            "sdim": sd.sdim,
            "predicted": predicted if predicted is not None else theorems.OUT_OF_SCOPE,
            "srg_vertex_count": sd.srg_order,
            "beta": sd.beta,
            "oracle": oracle if oracle is not None else theorems.SKIPPED,
            "basis": [list(graph.vertices[i]) for i in sd.basis],
        }) + "\n")
    else:
        out.write(f"sdim={sd.sdim} predicted={'out-of-scope' if predicted is None else predicted}\n")
        out.write(f"srg_vertices={sd.srg_order} beta={sd.beta} oracle={'skipped' if oracle is None else oracle}\n")
        out.write("basis=" + " | ".join(render_ideal(spec, graph.vertices[i]) for i in sd.basis) + "\n")
    return EXIT_OK if agrees else EXIT_FAIL


def cmd_srg(args, spec, out) -> int:
    graph = build_graph(spec)
    _require_connected(graph)
    srg = strong.build_srg_definitional(graph)
    if args.format == "json":
        out.write(strong.export_srg_json(srg) + "\n")
    elif args.format == "dot":
        out.write(strong.export_srg_dot(srg))
    else:
        report = strong.srg_structure(srg)
        out.write(f"# In(R)_SR for R = {spec}: {len(srg)} vertices, {len(srg.edges)} edges, "
                  f"components {report.component_sizes}, K2 count {report.k2_count}\n")
        for u, v in srg.sorted_edges():
            out.write(f"{render_ideal(spec, graph.vertices[u])} -- {render_ideal(spec, graph.vertices[v])}\n")
    return EXIT_OK


def _verify_kwargs(args) -> dict:
    return {"budget": args.budget, "mis_budget": args.mis_budget, "oracle_cap": args.oracle_cap}


def cmd_verify(args, spec, out) -> int:
    report = theorems.verify_spec(spec, **_verify_kwargs(args))
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        out.write(theorems.format_table([report]) + "\n")
        for name, ok in sorted(report.checks.items()):
            out.write(f"  {'ok  ' if ok else 'FAIL'} {name}\n")
        if report.skipped:
            out.write(f"  skipped (budget): {', '.join(report.skipped)}\n")
        out.write(f"{report.status}\n")
    return EXIT_FAIL if report.status == theorems.FAIL else EXIT_OK


def cmd_sweep(args, out) -> int:
    grid = theorems.SweepGrid(
        max_fields=args.sweep_max_fields,
        max_chain=args.sweep_max_chain,
        max_components=args.sweep_max_components,
        mixed_max_fields=min(args.sweep_max_fields, theorems.SweepGrid.mixed_max_fields),
        mixed_max_chain=min(args.sweep_max_chain, theorems.SweepGrid.mixed_max_chain),
    )
    specs = grid.specs()
    reports = []
    if args.format == "text":
        out.write(theorems.format_table([]).splitlines()[0] + "\n")
    for i, report in enumerate(theorems.iter_sweep(specs, jobs=args.jobs, **_verify_kwargs(args)), 1):
        print(f"[{i}/{len(specs)}] {report.spec}: {report.status}", file=sys.stderr, flush=True)
        reports.append(report)
        if args.format == "json":
            out.write(report.to_json() + "\n")
        else:
            out.write(theorems.format_table([report]).splitlines()[1] + "\n")
        out.flush()
    summary = theorems.summarize(reports)
    if args.format == "json":
        print(summary.line(), file=sys.stderr)
    else:
        out.write(summary.line() + "\n")
        if summary.failing_specs:
            out.write("failing: " + " ".join(summary.failing_specs) + "\n")
    return EXIT_FAIL if summary.failed else EXIT_OK


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.format == "dot" and args.command not in ("graph", "srg"):
            raise UsageError("--format dot is only available for graph and srg")
        if args.command == "sweep":
            with _output(args.out) as out:
                return cmd_sweep(args, out)
        if not args.spec:
            raise UsageError(f"{args.command} needs --spec; grammar: {GRAMMAR}")
        try:
            spec = parse_ring_spec(args.spec)
        except (ValueError, IdealGraphError) as exc:
            raise UsageError(f"{exc}") from exc
        handler = {"info": cmd_info, "graph": cmd_graph, "dim": cmd_dim, "sdim": cmd_sdim,
                   "srg": cmd_srg, "verify": cmd_verify}[args.command]
        with _output(args.out) as out:
            return handler(args, spec, out)
    except UsageError as exc:
        print(f"idealgraph: error: {exc}", file=sys.stderr)
        print(f"ring spec grammar: {GRAMMAR}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"idealgraph: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DisconnectedGraphError as exc:
        print(f"idealgraph: {exc}; the {args.command} command needs a connected graph", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
