"""Command-line entry point: ``pairwalk <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from pairwalk import graph6
from pairwalk.algebra import HamiltonianKind
from pairwalk.canon import enumerate_connected, enumerate_graphs
from pairwalk.graphs import Graph, ParameterError, build_named
from pairwalk.numeric import SpectralMismatch, fidelity_curve, write_curve_csv
from pairwalk.survey import (
    Convention,
    FindingKind,
    ScanConfig,
    survey,
    tree_scan,
    write_findings_jsonl,
    write_rows_csv,
)
from pairwalk.transfer import (
    DEFAULT_FORM,
    ConsistencyError,
    Form,
    QuantumState,
    analyze,
    candidate_states,
    walk,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CONSISTENCY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which we reserve
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_graph(text: str) -> Graph:
    """``named:family[:p1[:p2]]`` or a graph6 string."""
    if text.startswith("named:"):
        name, *params = text[len("named:"):].split(":")
        try:
            return build_named(name, *(int(p) for p in params))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return graph6.decode(text)
    except graph6.Graph6Error as exc:
        raise UsageError(f"bad graph: {exc}") from None


def parse_state(text: str, form: Form) -> QuantumState:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"bad state {text!r}") from None
    if form is Form.VERTEX:
        if len(parts) != 1:
            raise UsageError("vertex states take a single vertex")
        return QuantumState.vertex(parts[0])
    if len(parts) != 2:
        raise UsageError(f"{form.value} states take two vertices a,b")
    try:
        return QuantumState(form, parts[0], parts[1])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _form(args) -> Form:
    kind = HamiltonianKind(args.hamiltonian)
    return DEFAULT_FORM[kind] if args.form is None else Form(args.form)


def _check_state_range(g: Graph, s: QuantumState) -> None:
    if max(s.vertices) >= g.n:
        raise UsageError(f"state {s} outside a graph on {g.n} vertices")


# ------------------------------------------------------------------ commands

def cmd_analyze(args) -> int:
    g = parse_graph(args.graph)
    form = _form(args)
    if args.state is not None:
        states = [parse_state(args.state, form)]
    else:
        states = candidate_states(g, form)
    for s in states:
        _check_state_range(g, s)
    for s in states:
        try:
            report = analyze(g, args.hamiltonian, s, experimental=args.experimental)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
        print(json.dumps(report.to_dict(), sort_keys=True))
    return EXIT_OK


def _read_corpus(path: str, n: int | None) -> tuple[list[Graph], int]:
    graphs, bad = [], 0
    with open(path) as fh:
        for lineno, item in graph6.read_lines(fh):
            if isinstance(item, graph6.Graph6Error):
                print(f"{path}:{lineno}: {item}", file=sys.stderr)
                bad += 1
            elif n is None or item.n == n:
                graphs.append(item)
    return graphs, bad


def cmd_scan(args) -> int:
    if args.input is None and args.n is None:
        raise UsageError("scan needs --n or --input")
    cfg = ScanConfig(args.hamiltonian, _form(args), Convention.parse(args.convention),
                     jobs=args.jobs, experimental=args.experimental)
    bad = 0
    if args.input is not None:
        graphs, bad = _read_corpus(args.input, args.n)
    else:
        graphs = enumerate_connected(args.n)
    rows = survey(graphs, cfg)
    write_rows_csv(rows, cfg, sys.stdout)
    if args.findings:
        with open(args.findings, "w") as fh:
            write_findings_jsonl(rows, fh)
    return EXIT_PARSE if bad else EXIT_OK


def cmd_enumerate(args) -> int:
    graphs = enumerate_connected(args.n) if args.connected_only else enumerate_graphs(args.n)
    with open(args.output, "w") as fh:
        count = graph6.write_lines(graphs, fh)
    print(f"wrote {count} graphs to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_curve(args) -> int:
    g = parse_graph(args.graph)
    form = _form(args)
    s1, s2 = parse_state(args.state, form), parse_state(args.state2, form)
    for s in (s1, s2):
        _check_state_range(g, s)
    dec = walk(g, args.hamiltonian).decomposition
    curve = fidelity_curve(dec, s1.vector(g.n), s2.vector(g.n), args.tmax, args.steps)
    with open(args.output, "w") as fh:
        write_curve_csv(curve, fh)
    return EXIT_OK


def cmd_trees(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "graph6", "kind", "state", "partner", "time"])
    for tf in tree_scan(args.max_n, Convention.parse(args.convention)):
        g6 = graph6.encode(tf.graph)
        for s in tf.fixed_pairs:
            writer.writerow([tf.graph.n, g6, FindingKind.FIXED.value, s, "", ""])
        for s in tf.periodic_pairs:
            writer.writerow([tf.graph.n, g6, FindingKind.PERIODIC.value, s, "", ""])
        for f in tf.pst:
            writer.writerow([tf.graph.n, g6, FindingKind.PST.value, f.state, f.partner, f.time.exact()])
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _add_walk_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hamiltonian", choices=[k.value for k in HamiltonianKind], default="laplacian")
    p.add_argument("--form", choices=[f.value for f in Form], default=None,
                   help="state form (default: the natural one for the Hamiltonian)")
    p.add_argument("--experimental", action="store_true",
                   help="allow Hamiltonian/form combinations outside the supported three")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pairwalk", description="Exact perfect state transfer and periodicity checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="JSON report for one state or every candidate state")
    p.add_argument("--graph", required=True, help="graph6 string or named:family[:params]")
    _add_walk_options(p)
    p.add_argument("--state", help="a,b (or a for vertex states)")
    p.set_defaults(func=cmd_analyze)

    conventions = [c.value.replace("_", "-") for c in Convention]
    p = sub.add_parser("scan", help="census row over a corpus")
    p.add_argument("--n", type=int)
    p.add_argument("--input", help="graph6 file (default: enumerate connected graphs on n vertices)")
    _add_walk_options(p)
    p.add_argument("--convention", choices=conventions, default="edge-any")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--findings", help="write per-graph findings as JSON lines")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("enumerate", help="write non-isomorphic graphs as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("curve", help="fidelity between two states over time")
    p.add_argument("--graph", required=True)
    _add_walk_options(p)
    p.add_argument("--state", required=True)
    p.add_argument("--state2", required=True)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("trees", help="periodic pairs and PST on all small trees")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--convention", choices=conventions, default="edge-any")
    p.set_defaults(func=cmd_trees)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError, ValueError, OSError) as exc:
        print(f"pairwalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyError, SpectralMismatch) as exc:
        print(f"pairwalk: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
