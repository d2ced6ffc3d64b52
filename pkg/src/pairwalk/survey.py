"""Corpus scans and census tables."""

from __future__ import annotations

import csv
import enum
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from pairwalk import graph6
from pairwalk.algebra import HamiltonianKind
from pairwalk.canon import canonical_form, enumerate_trees
from pairwalk.graphs import Graph
from pairwalk.transfer import (
    DEFAULT_FORM,
    Form,
    PiTime,
    QuantumState,
    candidate_states,
    periodicity_of,
    pst_decide,
    walk,
)


class Convention(str, enum.Enum):
    """Which state pairs count towards a graph's PST / periodic tally.

    ``edge_any`` counts a PST pair when at least one of the two states is an
    edge; ``edge_both`` needs both.  Periodic states are counted on edge
    states under either edge convention and on every pair under
    ``all_pairs``.  Vertex states ignore the convention.
    """

    EDGE_ANY = "edge_any"
    EDGE_BOTH = "edge_both"
    ALL_PAIRS = "all_pairs"

    @classmethod
    def parse(cls, text: str) -> Convention:
        return cls(text.replace("-", "_"))


@dataclass(frozen=True)
class ScanConfig:
    hamiltonian: HamiltonianKind = HamiltonianKind.LAPLACIAN
    form: Form | None = None
    convention: Convention = Convention.EDGE_ANY
    jobs: int = 1
    certify: bool = True
    experimental: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "hamiltonian", HamiltonianKind(self.hamiltonian))
        form = DEFAULT_FORM[self.hamiltonian] if self.form is None else Form(self.form)
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "convention", Convention(self.convention))
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


class FindingKind(str, enum.Enum):
    FIXED = "fixed"
    PERIODIC = "periodic"
    PST = "pst"


@dataclass(frozen=True)
class Finding:
    kind: FindingKind
    state: QuantumState
    partner: QuantumState | None = None
    time: PiTime | None = None

    def sort_key(self) -> tuple:
        order = {FindingKind.FIXED: 0, FindingKind.PERIODIC: 1, FindingKind.PST: 2}[self.kind]
        return (self.state.key(), order, self.partner.key() if self.partner else ())

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "state": self.state.to_dict()}
        if self.partner is not None:
            out["partner"] = self.partner.to_dict()
        if self.time is not None:
            key = "time" if self.kind is FindingKind.PST else "period"
            out[key] = self.time.to_dict()
        return out


def _counts(g: Graph, s: QuantumState, cfg: ScanConfig) -> bool:
    if s.form is Form.VERTEX or cfg.convention is Convention.ALL_PAIRS:
        return True
    return s.is_edge(g)


def _pair_counts(g: Graph, s1: QuantumState, s2: QuantumState, cfg: ScanConfig) -> bool:
    if s1.form is Form.VERTEX or cfg.convention is Convention.ALL_PAIRS:
        return True
    e1, e2 = s1.is_edge(g), s2.is_edge(g)
    return (e1 and e2) if cfg.convention is Convention.EDGE_BOTH else (e1 or e2)


def scan_graph(g: Graph, cfg: ScanConfig) -> list[Finding]:
    """Fixed, periodic and PST findings on ``g`` that count under ``cfg``.

    Each unordered PST pair appears once, attached to its smaller state.
    """
    w = walk(g, cfg.hamiltonian)
    states = candidate_states(g, cfg.form)
    findings: list[Finding] = []
    periodic: dict[QuantumState, bool] = {}
    for s in states:
        per = periodicity_of(w.support(s))
        periodic[s] = per.periodic and not per.fixed
        if not _counts(g, s, cfg):
            continue
        if per.fixed:
            findings.append(Finding(FindingKind.FIXED, s))
        elif per.periodic:
            findings.append(Finding(FindingKind.PERIODIC, s, time=per.period))
    by_poly: dict = {}
    for s in states:
        if periodic[s]:
            by_poly.setdefault(w.min_poly(s.vector(g.n)), []).append(s)
    for group in by_poly.values():
        for s1, s2 in itertools.combinations(group, 2):
            if not _pair_counts(g, s1, s2, cfg):
                continue
            hit = pst_decide(g, cfg.hamiltonian, s1, s2, certify=cfg.certify,
                             experimental=cfg.experimental)
            if hit is not None:
                findings.append(Finding(FindingKind.PST, s1, s2, hit.time))
    findings.sort(key=Finding.sort_key)
    return findings


@dataclass(frozen=True)
class GraphResult:
    graph: Graph
    findings: tuple[Finding, ...]

    @property
    def has_pst(self) -> bool:
        return any(f.kind is FindingKind.PST for f in self.findings)

    @property
    def has_periodic(self) -> bool:
        return any(f.kind is not FindingKind.PST for f in self.findings)

    def to_dict(self) -> dict:
        return {"graph": graph6.encode(self.graph), "n": self.graph.n,
                "findings": [f.to_dict() for f in self.findings]}


@dataclass
class SurveyRow:
    n: int
    total_graphs: int = 0
    graphs_with_pst: int = 0
    graphs_with_periodic_state: int = 0
    details: list[GraphResult] = field(default_factory=list, repr=False)

    def add(self, result: GraphResult) -> None:
        self.total_graphs += 1
        self.graphs_with_pst += result.has_pst
        self.graphs_with_periodic_state += result.has_periodic
        self.details.append(result)


def _scan_job(args: tuple[str, ScanConfig]) -> tuple[Finding, ...]:
    text, cfg = args
    return tuple(scan_graph(graph6.decode(text), cfg))


def survey(corpus: Iterable[Graph], cfg: ScanConfig) -> list[SurveyRow]:
    """Scan every graph and tally one row per vertex count.

    Results are merged in (n, canonical form, input position) order, so the
    output does not depend on ``cfg.jobs``.
    """
    graphs = list(corpus)
    if cfg.jobs > 1 and len(graphs) > 1:
        jobs = [(graph6.encode(g), cfg) for g in graphs]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            found = list(pool.map(_scan_job, jobs, chunksize=max(1, len(jobs) // (4 * cfg.jobs))))
    else:
        found = [tuple(scan_graph(g, cfg)) for g in graphs]
    keyed = sorted(
        ((g.n, canonical_form(g).code, i), GraphResult(g, f))
        for i, (g, f) in enumerate(zip(graphs, found))
    )
    rows: dict[int, SurveyRow] = {}
    for (n, _, _), result in keyed:
        rows.setdefault(n, SurveyRow(n)).add(result)
    return [rows[n] for n in sorted(rows)]


CSV_HEADER = ["n", "hamiltonian", "form", "convention", "total_graphs",
              "graphs_with_pst", "graphs_with_periodic_state"]


def write_rows_csv(rows: Iterable[SurveyRow], cfg: ScanConfig, out: TextIO, header: bool = True) -> None:
    writer = csv.writer(out, lineterminator="\n")
    if header:
        writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.n, cfg.hamiltonian.value, cfg.form.value, cfg.convention.value,
                         r.total_graphs, r.graphs_with_pst, r.graphs_with_periodic_state])


def rows_csv(rows: Iterable[SurveyRow], cfg: ScanConfig) -> str:
    buf = io.StringIO()
    write_rows_csv(rows, cfg, buf)
    return buf.getvalue()


def write_findings_jsonl(rows: Iterable[SurveyRow], out: TextIO) -> None:
    for r in rows:
        for result in r.details:
            out.write(json.dumps(result.to_dict(), sort_keys=True) + "\n")


# ----------------------------------------------------------------- tree scan

@dataclass(frozen=True)
class TreeFindings:
    graph: Graph
    periodic_pairs: tuple[QuantumState, ...]
    fixed_pairs: tuple[QuantumState, ...]
    pst: tuple[Finding, ...]


TREE_SCAN_MAX_N = 12


def tree_scan(n_max: int, convention: Convention = Convention.EDGE_ANY,
              certify: bool = True) -> list[TreeFindings]:
    """Laplacian pair-state scan of every tree on 2..n_max vertices.

    Only trees carrying a counted periodic (or fixed) pair or a PST are
    returned.  With the default edge convention, periodic and fixed states
    are reported on edges only.
    """
    if not 1 <= n_max <= TREE_SCAN_MAX_N:
        raise ValueError(f"tree scan supports n_max <= {TREE_SCAN_MAX_N}")
    cfg = ScanConfig(HamiltonianKind.LAPLACIAN, Form.PAIR, Convention(convention), certify=certify)
    out = []
    for n in range(2, n_max + 1):
        for t in enumerate_trees(n):
            fs = scan_graph(t, cfg)
            if not fs:
                continue
            out.append(TreeFindings(
                t,
                tuple(f.state for f in fs if f.kind is FindingKind.PERIODIC),
                tuple(f.state for f in fs if f.kind is FindingKind.FIXED),
                tuple(f for f in fs if f.kind is FindingKind.PST),
            ))
    return out
