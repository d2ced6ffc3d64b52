"""Floating-point spectral oracle: Jacobi eigensolver, idempotents, U(t)."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np


class SpectralMismatch(RuntimeError):
    """Numeric eigenvalue grouping disagrees with the exact spectrum."""


def jacobi_eigh(h: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns,
    eigenvalues ascending.  Sweeps stop once the off-diagonal Frobenius norm
    drops below ``tol``.
    """
    a = np.array(h, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T):
        raise ValueError("matrix must be symmetric")
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                scale = abs(a[p, p]) + abs(a[q, q])
                if abs(apq) <= 1e-18 * scale or apq == 0.0:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    evals = np.diag(a).copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], v[:, order]


@dataclass(frozen=True)
class EigenDecomposition:
    """Distinct eigenvalues (ascending) and their orthogonal projectors."""

    eigenvalues: np.ndarray
    projectors: np.ndarray  # shape (k, n, n)

    def reassemble(self) -> np.ndarray:
        return np.einsum("k,kij->ij", self.eigenvalues, self.projectors)

    def support(self, state: Sequence[float], tol: float = 1e-8) -> list[float]:
        """Eigenvalues whose projector does not annihilate ``state``."""
        s = np.asarray(state, dtype=float)
        norms = np.linalg.norm(self.projectors @ s, axis=1)
        return [float(t) for t, nrm in zip(self.eigenvalues, norms) if nrm > tol]


def eigendecompose(h: np.ndarray, group_tol: float = 1e-9,
                   expected_distinct: int | None = None) -> EigenDecomposition:
    evals, vecs = jacobi_eigh(h)
    groups: list[list[int]] = []
    for i, x in enumerate(evals):
        if groups and abs(x - evals[groups[-1][-1]]) <= group_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    if expected_distinct is not None and len(groups) != expected_distinct:
        raise SpectralMismatch(
            f"{len(groups)} numeric eigenvalue groups, exact spectrum has {expected_distinct}")
    thetas = np.array([evals[g].mean() for g in groups])
    projs = np.array([vecs[:, g] @ vecs[:, g].T for g in groups])
    return EigenDecomposition(thetas, projs)


def transition(h_or_decomp: np.ndarray | EigenDecomposition, t: float) -> np.ndarray:
    """U(t) = sum_r exp(i t theta_r) E_r."""
    dec = h_or_decomp if isinstance(h_or_decomp, EigenDecomposition) else eigendecompose(h_or_decomp)
    phases = np.exp(1j * t * dec.eigenvalues)
    return np.einsum("k,kij->ij", phases, dec.projectors)


def _unit(state: Sequence[float]) -> np.ndarray:
    s = np.asarray(state, dtype=float)
    norm = np.linalg.norm(s)
    if norm == 0:
        raise ValueError("state must be nonzero")
    return s / norm


def fidelity(h_or_decomp: np.ndarray | EigenDecomposition, s1: Sequence[float],
             s2: Sequence[float], t: float) -> float:
    """|<s2, U(t) s1>|^2 for the normalized states."""
    u1, u2 = _unit(s1), _unit(s2)
    amp = u2 @ transition(h_or_decomp, t) @ u1
    return float(min(1.0, abs(amp) ** 2))


def fidelity_curve(h_or_decomp: np.ndarray | EigenDecomposition, s1: Sequence[float],
                   s2: Sequence[float], t_max: float, steps: int) -> np.ndarray:
    """``(steps, 2)`` array of ``(t, fidelity)`` on a uniform grid over [0, t_max]."""
    if steps < 2:
        raise ValueError("need at least two grid points")
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    dec = h_or_decomp if isinstance(h_or_decomp, EigenDecomposition) else eigendecompose(h_or_decomp)
    u1, u2 = _unit(s1), _unit(s2)
    # amplitude is sum_r exp(i t theta_r) <u2, E_r u1>
    weights = np.einsum("i,kij,j->k", u2, dec.projectors, u1)
    ts = np.linspace(0.0, t_max, steps)
    amps = np.exp(1j * np.outer(ts, dec.eigenvalues)) @ weights
    return np.column_stack([ts, np.minimum(1.0, np.abs(amps) ** 2)])


def write_curve_csv(curve: np.ndarray, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "fidelity"])
    for t, f in curve:
        writer.writerow([f"{t:.17g}", f"{f:.17g}"])
