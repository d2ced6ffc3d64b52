"""Exact integer linear algebra for graph Hamiltonians.

Eigenvalue supports are decided from Krylov minimal polynomials computed
with fraction-free elimination over Python integers.  Roots are split into
integers, real quadratic integers ``(p + q*sqrt(d))/2`` and opaque
higher-degree roots; only the first two can ever be periodic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations, zip_longest
from math import gcd, isqrt, sqrt
from typing import NamedTuple, Sequence, Union

import mpmath
import numpy as np

from pairwalk.graphs import Graph


class HamiltonianKind(str, enum.Enum):
    LAPLACIAN = "laplacian"
    SIGNLESS = "signless"
    ADJACENCY = "adjacency"


def hamiltonian(g: Graph, kind: HamiltonianKind | str) -> np.ndarray:
    """L = D - A, signless L+ = D + A, or A itself, as an int64 matrix."""
    kind = HamiltonianKind(kind)
    a = g.adjacency_matrix()
    if kind is HamiltonianKind.ADJACENCY:
        return a
    deg = np.diag(a.sum(axis=1))
    return deg - a if kind is HamiltonianKind.LAPLACIAN else deg + a


# ---------------------------------------------------------------- polynomials

@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first.

    Construct through :func:`IntPoly.of`, which makes the coefficients
    primitive with a positive leading term.
    """

    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Sequence[int]) -> IntPoly:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        if not c:
            return cls(())
        content = reduce(gcd, c)
        if c[-1] < 0:
            content = -content
        return cls(tuple(x // content for x in c))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> IntPoly:
        c = [1]
        for r in roots:
            c = _mul(c, [-r, 1])
        return cls.of(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: IntPoly) -> IntPoly:
        return IntPoly.of(_mul(list(self.coeffs), list(other.coeffs)))

    def divides(self, other: IntPoly) -> bool:
        _, rem = _divmod(list(other.coeffs), list(self.coeffs))
        return not any(rem)

    def exact_quotient(self, divisor: IntPoly) -> IntPoly:
        q, rem = _divmod(list(self.coeffs), list(divisor.coeffs))
        if any(rem):
            raise ArithmeticError(f"{divisor} does not divide {self}")
        den = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in q), 1)
        return IntPoly.of([int(f * den) for f in q])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f"{sign}{body}"
        return out


def _mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod(num: list, den: list) -> tuple[list[Fraction], list[Fraction]]:
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(x) for x in num]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = Fraction(den[-1])
    for k in range(len(num) - len(den), -1, -1):
        f = rem[k + len(den) - 1] / lead
        q[k] = f
        if f:
            for j, d in enumerate(den):
                rem[k + j] -= f * d
    return q, rem[:len(den) - 1]


def _from_fractions(c: list[Fraction]) -> IntPoly:
    den = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in c), 1)
    return IntPoly.of([int(f * den) for f in c])


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over the rationals."""
    x, y = list(a.coeffs), list(b.coeffs)
    while y:
        _, r = _divmod(x, y)
        x, y = y, _trim(r)
        x = list(_from_fractions(x).coeffs) if x else x
    return _from_fractions([Fraction(v) for v in x]) if x else IntPoly.of([])


def derivative(p: IntPoly) -> IntPoly:
    return IntPoly.of([k * c for k, c in enumerate(p.coeffs)][1:])


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: ``p = prod a_i^i`` with the ``a_i`` squarefree and coprime."""
    out = []
    g = poly_gcd(p, derivative(p))
    w = p.exact_quotient(g)
    k = 1
    while w.degree >= 1:
        y = poly_gcd(w, g)
        z = w.exact_quotient(y)
        if z.degree >= 1:
            out.append((z, k))
        g = g.exact_quotient(y)
        w = y
        k += 1
    return out


# --------------------------------------------------------------- Krylov / char

def krylov_min_poly(h: np.ndarray | Sequence[Sequence[int]], s: Sequence[int]) -> IntPoly:
    """Minimal polynomial of ``s`` relative to the integer matrix ``h``.

    Grows ``s, hs, h^2 s, ...`` and reduces each new vector against the
    previous ones with integer row operations, carrying the polynomial that
    produced it, until a vector reduces to zero.
    """
    rows = [[int(x) for x in row] for row in np.asarray(h).tolist()]
    v = [int(x) for x in s]
    if len(v) != len(rows):
        raise ValueError(f"state has length {len(v)}, matrix has order {len(rows)}")
    if not any(v):
        raise ValueError("zero vector has no minimal polynomial")
    basis: list[tuple[int, list[int], list[int]]] = []
    k = 0
    while True:
        w = v[:]
        poly = [0] * k + [1]
        for piv, bvec, bpoly in basis:
            c = w[piv]
            if not c:
                continue
            a = bvec[piv]
            w = [a * x - c * y for x, y in zip(w, bvec)]
            poly = [a * x - c * y for x, y in zip_longest(poly, bpoly, fillvalue=0)]
            content = reduce(gcd, w + poly)
            if content > 1:
                w = [x // content for x in w]
                poly = [x // content for x in poly]
        if not any(w):
            return IntPoly.of(poly)
        piv = next(i for i, x in enumerate(w) if x)
        basis.append((piv, w, poly))
        v = [sum(r * x for r, x in zip(row, v)) for row in rows]
        k += 1


def char_poly(h: np.ndarray | Sequence[Sequence[int]]) -> IntPoly:
    """det(xI - h) by the Faddeev-LeVerrier recurrence in exact integers."""
    a = [[int(x) for x in row] for row in np.asarray(h).tolist()]
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # m <- a @ m + c_prev * I
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += c_prev
        m = am
        trace = sum(sum(a[i][t] * m[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -trace // k
    return IntPoly.of(coeffs)


# ------------------------------------------------------------ algebraic numbers

@dataclass(frozen=True)
class Integer:
    k: int

    @property
    def value(self) -> float:
        return float(self.k)

    def exact(self) -> str:
        return str(self.k)


@dataclass(frozen=True)
class Rational:
    """Non-integral rational root; only arises from non-monic inputs."""

    num: int
    den: int

    @property
    def value(self) -> float:
        return self.num / self.den

    def exact(self) -> str:
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class Quadratic:
    """(p + q*sqrt(d)) / 2 with ``d > 1`` squarefree and p^2 = q^2 d mod 4."""

    p: int
    q: int
    d: int

    def __post_init__(self) -> None:
        if self.q == 0:
            raise ValueError("quadratic irrational needs q != 0")
        if self.d <= 1 or _squarefree_part(self.d) != (1, self.d):
            raise ValueError(f"{self.d} is not a squarefree integer > 1")
        if (self.p * self.p - self.q * self.q * self.d) % 4:
            raise ValueError("value is not an algebraic integer")

    @property
    def value(self) -> float:
        return (self.p + self.q * sqrt(self.d)) / 2

    def exact(self) -> str:
        sign = "+" if self.q > 0 else "-"
        mag = abs(self.q)
        rad = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        return f"({self.p}{sign}{rad})/2"


@dataclass(frozen=True)
class Opaque:
    """A root of an integer factor we do not split further.

    ``approx`` is a float for real roots and a complex number otherwise.
    """

    factor: IntPoly
    approx: float | complex

    @property
    def value(self) -> float:
        return self.approx.real

    def exact(self) -> str:
        return f"root({self.factor}, {self.approx!r})"


AlgebraicNumber = Union[Integer, Rational, Quadratic, Opaque]


@dataclass(frozen=True)
class Factor:
    poly: IntPoly
    multiplicity: int
    roots: tuple[AlgebraicNumber, ...]


@dataclass(frozen=True)
class FactoredSpectrum:
    factors: tuple[Factor, ...]

    def roots(self) -> list[AlgebraicNumber]:
        out = [r for f in self.factors for r in f.roots]
        return sorted(out, key=lambda r: r.value)

    def product(self) -> IntPoly:
        acc = IntPoly.of([1])
        for f in self.factors:
            for _ in range(f.multiplicity):
                acc = acc * f.poly
        return acc


def _squarefree_part(m: int) -> tuple[int, int]:
    """Write ``m > 0`` as ``f^2 * d`` with ``d`` squarefree; return ``(f, d)``."""
    f, d = 1, 1
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            f *= p
        if m % p == 0:
            m //= p
            d *= p
        p += 1
    return f, d * m


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small = [k for k in range(1, isqrt(m) + 1) if m % k == 0]
    return sorted(set(small + [m // k for k in small]))


def _fujiwara_bound(c: Sequence[int]) -> float:
    n = len(c) - 1
    lead = abs(c[-1])
    terms = [(abs(c[n - k]) / lead) ** (1.0 / k) for k in range(1, n + 1)]
    terms[-1] /= 2 ** (1.0 / n)
    return 2 * max(terms)


def _quadratic_roots(b: int, c: int) -> tuple[AlgebraicNumber, ...] | None:
    """Roots of monic x^2 + b x + c when they are real irrationals."""
    disc = b * b - 4 * c
    if disc <= 0:
        return None
    f, d = _squarefree_part(disc)
    if d == 1:
        return None
    return (Quadratic(-b, -f, d), Quadratic(-b, f, d))


@lru_cache(maxsize=4096)
def _numeric_roots(coeffs: tuple[int, ...]) -> tuple[complex, ...]:
    with mpmath.workdps(40):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
        return tuple(complex(r) for r in roots)


def factor_linear_quadratic(p: IntPoly, root_bound: float | None = None) -> FactoredSpectrum:
    """Split off rational roots and monic irreducible quadratic factors.

    Rational candidates ``a/b`` have ``b`` dividing the leading coefficient
    and ``a`` dividing the trailing one, restricted to ``|a/b| <= bound``
    (``root_bound`` if given, otherwise a Fujiwara bound).  Quadratic
    factors are proposed by pairing numeric roots and accepted only after
    exact division.  Whatever remains is split into squarefree opaque factors.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    factors: list[Factor] = []
    rest = p

    def take(factor: IntPoly, roots: tuple[AlgebraicNumber, ...]) -> None:
        nonlocal rest
        mult = 0
        while rest.degree >= factor.degree and factor.divides(rest):
            rest = rest.exact_quotient(factor)
            mult += 1
        factors.append(Factor(factor, mult, roots))

    if rest.degree >= 1 and rest.coeffs[0] == 0:
        take(IntPoly.of([0, 1]), (Integer(0),))

    if rest.degree >= 1:
        bound = root_bound if root_bound is not None else _fujiwara_bound(rest.coeffs)
        lead, trail = rest.coeffs[-1], rest.coeffs[0]
        for den in _divisors(lead):
            top = int(bound * den) + 1
            for num in range(-top, top + 1):
                if num == 0 or gcd(num, den) != 1 or trail % num:
                    continue
                if rest.degree < 1:
                    break
                if rest(Fraction(num, den)) == 0:
                    root = Integer(num) if den == 1 else Rational(num, den)
                    take(IntPoly.of([-num, den]), (root,))

    # quadratic factors from pairs of real numeric roots
    while rest.degree >= 2:
        core = rest.exact_quotient(poly_gcd(rest, derivative(rest)))
        approx = [z.real for z in _numeric_roots(core.coeffs) if abs(z.imag) < 1e-9]
        found = None
        for x, y in combinations(sorted(approx), 2):
            s, prod = x + y, x * y
            bs, bp = round(s), round(prod)
            if abs(s - bs) > 1e-7 or abs(prod - bp) > 1e-7 * max(1.0, abs(prod)):
                continue
            roots = _quadratic_roots(-bs, bp)
            if roots is None:
                continue
            cand = IntPoly.of([bp, -bs, 1])
            if cand.divides(rest):
                found = (cand, roots)
                break
        if found is None:
            break
        take(*found)

    if rest.degree == 2 and rest.coeffs[-1] == 1:
        roots = _quadratic_roots(rest.coeffs[1], rest.coeffs[0])
        if roots is not None:
            take(rest, roots)
    if rest.degree >= 1:
        for part, mult in squarefree_decomposition(rest):
            zs = sorted(_numeric_roots(part.coeffs), key=lambda z: (z.real, z.imag))
            opaque = tuple(Opaque(part, z.real if abs(z.imag) < 1e-9 else z) for z in zs)
            factors.append(Factor(part, mult, opaque))
    return FactoredSpectrum(tuple(factors))


# ------------------------------------------------------------------ differences

class Difference(NamedTuple):
    """``rational + radical * sqrt(d)``."""

    rational: Fraction
    radical: Fraction
    d: int


def _parts(x: AlgebraicNumber) -> tuple[Fraction, Fraction, int | None]:
    if isinstance(x, Integer):
        return Fraction(x.k), Fraction(0), None
    if isinstance(x, Rational):
        return Fraction(x.num, x.den), Fraction(0), None
    if isinstance(x, Quadratic):
        return Fraction(x.p, 2), Fraction(x.q, 2), x.d
    raise TypeError(f"opaque roots have no exact difference: {x.exact()}")


def algebraic_difference(a: AlgebraicNumber, b: AlgebraicNumber) -> Difference | None:
    """Exact ``a - b`` as ``r + m*sqrt(d)``; ``None`` when the fields differ."""
    ra, qa, da = _parts(a)
    rb, qb, db = _parts(b)
    if da is not None and db is not None and da != db:
        return None
    d = da or db or 1
    return Difference(ra - rb, qa - qb, d)
