"""Exact decisions for fixed states, periodicity and perfect state transfer.

Every decision is taken on Krylov minimal polynomials, never on numerically
computed eigenvectors.  Strong cospectrality of ``s1`` and ``s2`` is read off
the minimal polynomials of ``s1 - s2`` and ``s1 + s2``: an eigenvalue is in
Lambda+ when ``E(s1 - s2) = 0``, i.e. when it drops out of the support of
``s1 - s2``, and in Lambda- when it drops out of the support of ``s1 + s2``.
PST verdicts are certified against the numeric oracle before being returned.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, pi, sqrt
from typing import Callable, Iterable

from pairwalk.algebra import (
    AlgebraicNumber,
    FactoredSpectrum,
    HamiltonianKind,
    Integer,
    IntPoly,
    Quadratic,
    algebraic_difference,
    factor_linear_quadratic,
    hamiltonian,
    krylov_min_poly,
)
from pairwalk.graphs import Graph, twins
from pairwalk.numeric import EigenDecomposition, eigendecompose, fidelity

log = logging.getLogger(__name__)

ENGINE_MAX_N = 12
CERTIFY_TOL = 1e-8


class ConsistencyError(RuntimeError):
    """Exact verdict not confirmed by the numeric oracle."""


class Form(str, enum.Enum):
    PAIR = "pair"
    PLUS = "plus"
    VERTEX = "vertex"


# (Hamiltonian, form) combinations with first-class support
CHARTER = {
    (HamiltonianKind.LAPLACIAN, Form.PAIR),
    (HamiltonianKind.SIGNLESS, Form.PLUS),
    (HamiltonianKind.ADJACENCY, Form.VERTEX),
}

DEFAULT_FORM = {kind: form for kind, form in CHARTER}


@dataclass(frozen=True)
class QuantumState:
    """e_a - e_b (pair), e_a + e_b (plus) or e_a (vertex)."""

    form: Form
    a: int
    b: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "form", Form(self.form))
        if self.form is Form.VERTEX:
            if self.b is not None:
                raise ValueError("vertex states take a single vertex")
        elif self.b is None or self.a == self.b:
            raise ValueError(f"{self.form.value} state needs two distinct vertices")

    @classmethod
    def pair(cls, a: int, b: int) -> QuantumState:
        return cls(Form.PAIR, a, b)

    @classmethod
    def plus(cls, a: int, b: int) -> QuantumState:
        return cls(Form.PLUS, a, b)

    @classmethod
    def vertex(cls, a: int) -> QuantumState:
        return cls(Form.VERTEX, a)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset((self.a,) if self.b is None else (self.a, self.b))

    def key(self) -> tuple:
        """Orientation-free sort key: (form, smaller vertex, larger vertex)."""
        vs = sorted(self.vertices)
        return (self.form.value, vs[0], vs[-1] if len(vs) > 1 else -1)

    def same(self, other: QuantumState) -> bool:
        """Equal up to global sign."""
        return self.form is other.form and self.vertices == other.vertices

    def reversed(self) -> QuantumState:
        if self.form is not Form.PAIR:
            return self
        return QuantumState(self.form, self.b, self.a)

    def vector(self, n: int) -> list[int]:
        if max(self.vertices) >= n or min(self.vertices) < 0:
            raise ValueError(f"state {self} does not fit a graph on {n} vertices")
        v = [0] * n
        v[self.a] = 1
        if self.b is not None:
            v[self.b] = -1 if self.form is Form.PAIR else 1
        return v

    def is_edge(self, g: Graph) -> bool:
        return self.b is not None and g.has_edge(self.a, self.b)

    def to_dict(self) -> dict:
        return {"form": self.form.value, "a": self.a, "b": self.b}

    def __str__(self) -> str:
        if self.b is None:
            return f"{self.form.value}({self.a})"
        return f"{self.form.value}({self.a},{self.b})"


@dataclass(frozen=True)
class PiTime:
    """The walk time ``num * pi / (den * sqrt(d))``, kept in lowest terms."""

    num: int
    den: int
    d: int = 1

    def __post_init__(self) -> None:
        if self.num <= 0 or self.den <= 0 or self.d <= 0:
            raise ValueError("PiTime parts must be positive")
        k = gcd(self.num, self.den)
        object.__setattr__(self, "num", self.num // k)
        object.__setattr__(self, "den", self.den // k)

    @property
    def value(self) -> float:
        return self.num * pi / (self.den * sqrt(self.d))

    def doubled(self) -> PiTime:
        return PiTime(2 * self.num, self.den, self.d)

    def exact(self) -> str:
        top = "pi" if self.num == 1 else f"{self.num}*pi"
        if self.d == 1:
            return top if self.den == 1 else f"{top}/{self.den}"
        if self.den == 1:
            return f"{top}/sqrt({self.d})"
        return f"{top}/({self.den}*sqrt({self.d}))"

    def to_dict(self) -> dict:
        return {"exact": self.exact(), "approx": self.value}


@dataclass(frozen=True)
class CospectralityCertificate:
    lambda_plus: tuple[AlgebraicNumber, ...]
    lambda_minus: tuple[AlgebraicNumber, ...]
    strongly_cospectral: bool

    def to_dict(self) -> dict:
        return {
            "lambda_plus": [r.exact() for r in self.lambda_plus],
            "lambda_minus": [r.exact() for r in self.lambda_minus],
            "strongly_cospectral": self.strongly_cospectral,
        }


@dataclass(frozen=True)
class Periodicity:
    """Outcome of the integer / quadratic-integer test on a support.

    ``period`` is ``2*pi/(g*sqrt(d))``; it is ``None`` for non-periodic
    states and for fixed states, which return at every time.
    """

    periodic: bool
    fixed: bool = False
    d: int = 1
    g: int | None = None
    multipliers: tuple[tuple[AlgebraicNumber, int], ...] = ()

    @property
    def period(self) -> PiTime | None:
        if not self.periodic or self.fixed:
            return None
        return PiTime(2, self.g, self.d)


@dataclass(frozen=True)
class Transfer:
    """A certified perfect state transfer ``source -> partner`` at ``time``.

    The partner is oriented so that U(time) source = exp(i time theta_0) partner,
    with theta_0 the largest support eigenvalue.
    """

    source: QuantumState
    partner: QuantumState
    time: PiTime
    certificate: CospectralityCertificate
    sign_flipped: bool = False
    fidelity: float | None = None


# --------------------------------------------------------------------- engine

class Walk:
    """Per-(graph, Hamiltonian) cache of minimal polynomials and spectra."""

    def __init__(self, g: Graph, kind: HamiltonianKind | str) -> None:
        if not 1 <= g.n <= ENGINE_MAX_N:
            raise ValueError(f"engine supports 1 <= n <= {ENGINE_MAX_N}, got n={g.n}")
        self.graph = g
        self.kind = HamiltonianKind(kind)
        self.h = hamiltonian(g, self.kind)
        # Laplacian-like spectra sit in [0, 2n]; adjacency in [-n, n]
        self.root_bound = 2 * g.n if self.kind is not HamiltonianKind.ADJACENCY else g.n
        self._minpolys: dict[tuple[int, ...], IntPoly] = {}
        self._decomp: EigenDecomposition | None = None

    def min_poly(self, vec: Iterable[int]) -> IntPoly:
        key = tuple(vec)
        poly = self._minpolys.get(key)
        if poly is None:
            poly = self._minpolys[key] = krylov_min_poly(self.h, key)
        return poly

    def spectrum(self, poly: IntPoly) -> FactoredSpectrum:
        return _factor_cached(poly, self.root_bound)

    def support(self, s: QuantumState) -> list[AlgebraicNumber]:
        return self.spectrum(self.min_poly(s.vector(self.graph.n))).roots()

    @property
    def decomposition(self) -> EigenDecomposition:
        if self._decomp is None:
            self._decomp = eigendecompose(self.h)
        return self._decomp


@lru_cache(maxsize=8192)
def _factor_cached(poly: IntPoly, bound: float) -> FactoredSpectrum:
    return factor_linear_quadratic(poly, root_bound=bound)


@lru_cache(maxsize=512)
def walk(g: Graph, kind: HamiltonianKind | str) -> Walk:
    return Walk(g, HamiltonianKind(kind))


def _check_state(g: Graph, s: QuantumState) -> None:
    s.vector(g.n)


def support(g: Graph, kind: HamiltonianKind | str, s: QuantumState) -> list[AlgebraicNumber]:
    """Exact eigenvalue support of ``s``, sorted by value."""
    _check_state(g, s)
    return walk(g, kind).support(s)


def periodicity_of(roots: list[AlgebraicNumber]) -> Periodicity:
    """Apply the integer / quadratic-integer criterion to a support."""
    if not roots:
        raise ValueError("empty support")
    if not all(isinstance(r, (Integer, Quadratic)) for r in roots):
        return Periodicity(False)
    if len(roots) == 1:
        return Periodicity(True, fixed=isinstance(roots[0], Integer))
    fields = {r.d for r in roots if isinstance(r, Quadratic)}
    if len(fields) > 1:
        return Periodicity(False)
    d = fields.pop() if fields else 1
    top = max(roots, key=lambda r: r.value)
    mults = []
    for r in roots:
        diff = algebraic_difference(top, r)
        if d == 1:
            m = diff.rational
        elif diff.rational != 0:
            return Periodicity(False)
        else:
            m = diff.radical
        if m.denominator != 1:
            return Periodicity(False)
        mults.append((r, int(m)))
    g = 0
    for _, m in mults:
        g = gcd(g, m)
    return Periodicity(True, d=d, g=g, multipliers=tuple(mults))


def periodicity(g: Graph, kind: HamiltonianKind | str, s: QuantumState) -> Periodicity:
    return periodicity_of(support(g, kind, s))


def is_fixed(g: Graph, kind: HamiltonianKind | str, s: QuantumState) -> bool:
    """A pair state is fixed iff its support is a single integer eigenvalue."""
    if s.form is not Form.PAIR:
        raise ValueError("fixed-state theory covers pair states only")
    roots = support(g, kind, s)
    fixed = len(roots) == 1 and isinstance(roots[0], Integer)
    if HamiltonianKind(kind) is HamiltonianKind.LAPLACIAN and fixed != twins(g, s.a, s.b):
        raise ConsistencyError(f"fixed={fixed} but twins={not fixed} for {s}")
    return fixed


def _vectors_collinear(v1: list[int], v2: list[int]) -> bool:
    return v1 == v2 or v1 == [-x for x in v2]


def strong_cospectrality(g: Graph, kind: HamiltonianKind | str, s1: QuantumState,
                         s2: QuantumState) -> CospectralityCertificate:
    _check_state(g, s1)
    _check_state(g, s2)
    w = walk(g, kind)
    v1, v2 = s1.vector(g.n), s2.vector(g.n)
    if _vectors_collinear(v1, v2):
        raise ValueError(f"{s1} and {s2} are the same state up to sign")
    m1, m2 = w.min_poly(v1), w.min_poly(v2)
    if m1 != m2:
        return CospectralityCertificate((), (), False)
    m_minus = w.min_poly(a - b for a, b in zip(v1, v2))
    m_plus = w.min_poly(a + b for a, b in zip(v1, v2))
    lam_plus: list[AlgebraicNumber] = []
    lam_minus: list[AlgebraicNumber] = []
    complete = True
    for f in w.spectrum(m1).factors:
        # conjugate roots share a factor, so they always land on the same side
        plus_side = not f.poly.divides(m_minus)
        minus_side = not f.poly.divides(m_plus)
        if plus_side:
            lam_plus.extend(f.roots)
        elif minus_side:
            lam_minus.extend(f.roots)
        else:
            complete = False
    key = lambda r: r.value  # noqa: E731
    return CospectralityCertificate(tuple(sorted(lam_plus, key=key)),
                                    tuple(sorted(lam_minus, key=key)), complete)


def _negated(s: QuantumState) -> QuantumState:
    if s.form is Form.PAIR:
        return s.reversed()
    raise ValueError(f"{s.form.value} states have no sign-reversed label")


def pst_decide(g: Graph, kind: HamiltonianKind | str, s1: QuantumState, s2: QuantumState,
               certify: bool = True, experimental: bool = False) -> Transfer | None:
    """Exact PST decision between two states; ``None`` when there is none."""
    kind = HamiltonianKind(kind)
    _check_state(g, s1)
    _check_state(g, s2)
    v1, v2 = s1.vector(g.n), s2.vector(g.n)
    if _vectors_collinear(v1, v2):
        raise ValueError(f"{s1} and {s2} are the same state up to sign")
    forms = {s1.form, s2.form}
    if kind is HamiltonianKind.LAPLACIAN and forms == {Form.PAIR, Form.PLUS}:
        # 0 is in every plus support and in no pair support
        return None
    if not experimental and (len(forms) > 1 or (kind, s1.form) not in CHARTER):
        raise ValueError(f"{kind.value} with {'/'.join(sorted(f.value for f in forms))} states "
                         "is outside the supported combinations; pass experimental=True")
    w = walk(g, kind)
    if w.min_poly(v1) != w.min_poly(v2):
        return None
    roots = w.support(s1)
    per = periodicity_of(roots)
    if not per.periodic or per.fixed or per.g is None:
        return None
    cert = strong_cospectrality(g, kind, s1, s2)
    if not cert.strongly_cospectral:
        return None
    top = max(roots, key=lambda r: r.value)
    flipped = top in cert.lambda_minus
    lam_plus, lam_minus = (cert.lambda_minus, cert.lambda_plus) if flipped else \
        (cert.lambda_plus, cert.lambda_minus)
    mult = dict(per.multipliers)
    for r in lam_plus:
        if (mult[r] // per.g) % 2:
            return None
    for r in lam_minus:
        if (mult[r] // per.g) % 2 == 0:
            return None
    partner = s2
    if flipped:
        if s2.form is Form.PAIR:
            partner = s2.reversed()
        else:
            # a plus/vertex state has no sign-reversed label; the phase absorbs it
            log.debug("sign flip on %s absorbed into the global phase", s2)
        cert = CospectralityCertificate(lam_plus, lam_minus, True)
    time = PiTime(1, per.g, per.d)
    fid = None
    if certify:
        fid = fidelity(w.decomposition, v1, v2, time.value)
        if fid < 1 - CERTIFY_TOL:
            raise ConsistencyError(
                f"exact PST {s1} -> {s2} at {time.exact()} has numeric fidelity {fid:.12f}")
    return Transfer(s1, partner, time, cert, flipped, fid)


CandidateFilter = Callable[[Graph, QuantumState], bool]


def edges_only(g: Graph, s: QuantumState) -> bool:
    return s.is_edge(g)


def candidate_states(g: Graph, form: Form | str) -> list[QuantumState]:
    form = Form(form)
    if form is Form.VERTEX:
        return [QuantumState.vertex(a) for a in range(g.n)]
    return [QuantumState(form, a, b) for a in range(g.n) for b in range(a + 1, g.n)]


def find_partner(g: Graph, kind: HamiltonianKind | str, s: QuantumState,
                 candidate_filter: CandidateFilter | None = None,
                 certify: bool = True, experimental: bool = False) -> Transfer | None:
    """Scan same-form states for the unique PST partner of ``s``."""
    w = walk(g, kind)
    target = w.min_poly(s.vector(g.n))
    for c in candidate_states(g, s.form):
        if c.same(s):
            continue
        if candidate_filter is not None and not candidate_filter(g, c):
            continue
        if w.min_poly(c.vector(g.n)) != target:
            continue
        hit = pst_decide(g, kind, s, c, certify=certify, experimental=experimental)
        if hit is not None:
            return hit
    return None


def transitivity_compose(r1: Transfer, r2: Transfer) -> tuple[QuantumState, QuantumState, PiTime]:
    """Predict PST (a,c) -> (alpha,gamma) from (a,b) -> (alpha,beta) and (b,c) -> (beta,gamma).

    The prediction still has to be confirmed with :func:`pst_decide`.
    """
    if r1.time != r2.time:
        raise ValueError(f"times differ: {r1.time.exact()} vs {r2.time.exact()}")
    states = (r1.source, r1.partner, r2.source, r2.partner)
    if any(s.form is not Form.PAIR for s in states):
        raise ValueError("transitivity composes pair-state transfers only")
    src = r1.source.vertices & r2.source.vertices
    dst = r1.partner.vertices & r2.partner.vertices
    if len(src) != 1 or len(dst) != 1:
        raise ValueError("transfers must share exactly one pivot vertex on each side")
    (a,) = r1.source.vertices - src
    (c,) = r2.source.vertices - src
    (alpha,) = r1.partner.vertices - dst
    (gamma,) = r2.partner.vertices - dst
    return QuantumState.pair(a, c), QuantumState.pair(alpha, gamma), r1.time


# --------------------------------------------------------------------- report

class Verdict(str, enum.Enum):
    FIXED = "fixed"
    PST = "pst"
    PERIODIC = "periodic"
    NONPERIODIC = "nonperiodic"


@dataclass(frozen=True)
class TransferReport:
    graph: Graph
    kind: HamiltonianKind
    state: QuantumState
    support: tuple[AlgebraicNumber, ...]
    verdict: Verdict
    period: PiTime | None = None
    transfer: Transfer | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def partner(self) -> QuantumState | None:
        return self.transfer.partner if self.transfer else None

    @property
    def time(self) -> PiTime | None:
        return self.transfer.time if self.transfer else None

    def to_dict(self) -> dict:
        from pairwalk.graph6 import encode

        t = self.transfer
        return {
            "graph": encode(self.graph),
            "hamiltonian": self.kind.value,
            "state": self.state.to_dict(),
            "support": [{"exact": r.exact(), "approx": r.value} for r in self.support],
            "verdict": self.verdict.value,
            "period": self.period.to_dict() if self.period else None,
            "partner": t.partner.to_dict() if t else None,
            "time": t.time.to_dict() if t else None,
            "certificate": t.certificate.to_dict() if t else None,
            "sign_flipped": t.sign_flipped if t else None,
        }


def analyze(g: Graph, kind: HamiltonianKind | str, s: QuantumState,
            candidate_filter: CandidateFilter | None = None,
            certify: bool = True, experimental: bool = False) -> TransferReport:
    kind = HamiltonianKind(kind)
    roots = support(g, kind, s)
    per = periodicity_of(roots)
    if per.fixed:
        return TransferReport(g, kind, s, tuple(roots), Verdict.FIXED)
    if not per.periodic:
        notes = ()
        if any(not isinstance(r, (Integer, Quadratic)) for r in roots):
            notes = ("support has roots of degree >= 3",)
        return TransferReport(g, kind, s, tuple(roots), Verdict.NONPERIODIC, notes=notes)
    hit = find_partner(g, kind, s, candidate_filter, certify=certify, experimental=experimental)
    if hit is None:
        return TransferReport(g, kind, s, tuple(roots), Verdict.PERIODIC, per.period)
    assert hit.time.doubled() == per.period
    return TransferReport(g, kind, s, tuple(roots), Verdict.PST, per.period, hit)
