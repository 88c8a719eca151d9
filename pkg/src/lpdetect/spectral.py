"""Symmetric eigendecomposition, graph-frequency ordering and perturbation diagnostics."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graph import GsoKind

__all__ = [
    "NumericalFailure",
    "Eigendecomposition",
    "OrderedSpectrum",
    "SignStructure",
    "eig_sym",
    "jacobi_eigh",
    "fix_signs",
    "order_spectrum",
    "effective_rank",
    "davis_kahan_bound",
    "sign_structure",
]


class NumericalFailure(ArithmeticError):
    """An iterative linear-algebra routine did not converge."""


class SignStructure(str, enum.Enum):
    ALL_SAME_SIGN = "all_same_sign"
    MIXED = "mixed"
    HAS_ZEROS = "has_zeros"


@dataclass(frozen=True, eq=False)
class Eigendecomposition:
    """Eigenvalues in ascending order and the matching orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


@dataclass(frozen=True, eq=False)
class OrderedSpectrum:
    """Eigenpairs of a shift operator in graph-frequency order.

    Laplacian frequencies run ascending (``0 = lambda_1`` first), adjacency
    frequencies descending (largest first); in both cases ``modes[:, 0]`` is
    the lowest-frequency mode.
    """

    kind: GsoKind
    freqs: np.ndarray
    modes: np.ndarray
    sign_fixed: bool = True

    @property
    def n(self) -> int:
        return self.freqs.size


def _symmetrize(m):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    scale = np.abs(m).max() if m.size else 0.0
    if np.abs(m - m.T).max(initial=0.0) > 1e-10 * max(scale, 1.0):
        raise ValueError("matrix is not symmetric")
    return 0.5 * (m + m.T)


def _round_robin(n):
    """Pairings for one cyclic sweep; every index pair appears exactly once.

    Uses the circle method: index 0 stays put while the rest rotate. For odd
    ``n`` a dummy index ``n`` is added and pairs touching it are dropped.
    """
    size = n + (n % 2)
    ring = list(range(1, size))
    rounds = []
    for _ in range(size - 1):
        order = [0] + ring
        half = size // 2
        p = np.array(order[:half])
        q = np.array(order[half:][::-1])
        keep = (p < n) & (q < n)
        p, q = p[keep], q[keep]
        lo, hi = np.minimum(p, q), np.maximum(p, q)
        rounds.append((lo, hi))
        ring = ring[-1:] + ring[:-1]
    return rounds


def jacobi_eigh(m, tol: float = 1e-12, max_sweeps: int = 100) -> Eigendecomposition:
    """Cyclic Jacobi eigensolver for dense symmetric matrices.

    Each sweep visits every off-diagonal pair once, grouped into ``n - 1``
    rounds of disjoint pairs whose rotations are applied together. Stops
    when the off-diagonal Frobenius norm falls to ``tol * ||M||_F``.

    Raises
    ------
    NumericalFailure
        If ``max_sweeps`` sweeps do not reach the tolerance.
    """
    a = _symmetrize(m).copy()
    n = a.shape[0]
    v = np.eye(n)
    target = tol * np.linalg.norm(a)
    rounds = _round_robin(n)

    def off_norm():
        return np.linalg.norm(a - np.diag(np.diag(a)))

    sweeps = 0
    while off_norm() > target:
        if sweeps == max_sweeps:
            raise NumericalFailure(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off_norm():.3e}, target {target:.3e})"
            )
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            with np.errstate(divide="ignore", over="ignore"):
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        sweeps += 1

    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return Eigendecomposition(values[order], v[:, order])


def eig_sym(m, method: str = "lapack") -> Eigendecomposition:
    """Eigendecomposition of a real symmetric matrix, eigenvalues ascending.

    Parameters
    ----------
    m : (n, n) array_like
        Symmetric up to ``1e-10 * max|m|``; it is averaged with its transpose
        before decomposition.
    method : {"lapack", "jacobi"}
        ``"lapack"`` calls :func:`numpy.linalg.eigh` (used by the Monte-Carlo
        harness for speed); ``"jacobi"`` uses :func:`jacobi_eigh`.
    """
    if method == "jacobi":
        return jacobi_eigh(m)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    a = _symmetrize(m)
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigh failed: {exc}") from exc
    return Eigendecomposition(values, vectors)


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so that each column's largest-magnitude entry is positive.

    Ties in magnitude go to the lowest row index.
    """
    vectors = np.array(vectors, dtype=float)
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def order_spectrum(m, kind, method: str = "lapack") -> OrderedSpectrum:
    """Eigendecompose a shift operator and put it in graph-frequency order."""
    kind = GsoKind(kind)
    dec = eig_sym(m, method=method)
    values, vectors = dec.values, dec.vectors
    if kind is GsoKind.ADJACENCY:
        # stable sort keeps tied eigenvalues in solver output order
        order = np.argsort(-values, kind="stable")
        values, vectors = values[order], vectors[:, order]
    return OrderedSpectrum(kind, values, fix_signs(vectors), True)


def effective_rank(c) -> float:
    """``trace(C) / ||C||_2`` for a positive semidefinite matrix."""
    c = _symmetrize(c)
    top = np.linalg.eigvalsh(c)[-1]
    if top <= 0:
        raise ValueError("effective rank undefined for a zero (or negative) matrix")
    return float(np.trace(c) / top)


def davis_kahan_bound(beta, j: int, pert: float) -> float:
    """Davis–Kahan bound on ``||v_hat_j - v_j||_2`` for the j-th eigenvector.

    Parameters
    ----------
    beta : sequence of float
        Eigenvalues of the reference matrix, sorted descending.
    j : int
        1-based index of the eigenpair.
    pert : float
        Spectral norm of the perturbation.

    Returns
    -------
    float
        ``2**1.5 * pert / min(beta[j-1] - beta[j], beta[j] - beta[j+1])`` with
        the outer neighbours taken as +inf / -inf. ``inf`` on a zero gap.
        Values above ``sqrt(2)`` carry no information for sign-aligned unit
        vectors.
    """
    beta = np.asarray(beta, dtype=float)
    n = beta.size
    if not 1 <= j <= n:
        raise ValueError(f"index j={j} out of range 1..{n}")
    if np.any(np.diff(beta) > 0):
        raise ValueError("beta must be sorted in descending order")
    if pert < 0:
        raise ValueError("perturbation norm must be non-negative")
    padded = np.concatenate(([np.inf], beta, [-np.inf]))
    gap = min(padded[j - 1] - padded[j], padded[j] - padded[j + 1])
    if gap == 0:
        return np.inf
    if pert == 0:
        return 0.0
    return float(2.0 ** 1.5 * pert / gap)


def sign_structure(v, tol: float = 1e-10) -> SignStructure:
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        raise ValueError("sign structure of the zero vector is undefined")
    pos = v > tol
    neg = v < -tol
    if pos.any() and neg.any():
        return SignStructure.MIXED
    if pos.all() or neg.all():
        return SignStructure.ALL_SAME_SIGN
    return SignStructure.HAS_ZEROS
