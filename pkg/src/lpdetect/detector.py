"""Blind first-order lowpass detection from a sample covariance.

Under a first-order lowpass filter on a connected graph, the top eigenvector
of the output covariance is the Perron vector of the shift operator: it is
the only eigenvector whose entries all share one sign. The detector scores
every covariance eigenvector by how far it is from being sign-uniform and
declares lowpass (``T0``) when the top eigenvector scores lowest.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .spectral import eig_sym

__all__ = [
    "Hypothesis",
    "SignalMatrix",
    "DetectionReport",
    "sample_covariance",
    "score_l2",
    "score_linf",
    "detect",
    "score_profile",
]

PSD_CLAMP = 1e-8
AMBIGUITY_TOL = 0.1


class Hypothesis(str, enum.Enum):
    T0 = "T0"  # first-order lowpass
    T1 = "T1"  # anything else


@dataclass(frozen=True, eq=False)
class SignalMatrix:
    """``n x m`` matrix of graph signals; column ``l`` is observation ``y_l``."""

    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=float, copy=True)
        if data.ndim != 2 or data.shape[1] < 1 or data.shape[0] < 1:
            raise ValueError(f"signal matrix must be n x m with m >= 1, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ValueError("signal matrix has non-finite entries")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def m(self) -> int:
        return self.data.shape[1]


def sample_covariance(y, center: bool = False) -> np.ndarray:
    """``(1/m) Y Y^T``, optionally after removing each row's mean.

    The uncentered form matches the zero-mean signal model; ``center=True``
    is meant for real data with non-zero means.
    """
    y = y.data if isinstance(y, SignalMatrix) else np.asarray(y, dtype=float)
    if y.ndim != 2 or y.shape[1] < 1:
        raise ValueError(f"expected an n x m matrix with m >= 1, got shape {y.shape}")
    if center:
        y = y - y.mean(axis=1, keepdims=True)
    c = (y @ y.T) / y.shape[1]
    return 0.5 * (c + c.T)


def score_l2(v) -> float:
    """Distance of ``v`` from the nearest sign-uniform vector, in the l2 norm.

    ``min(||v - (v)_+||, ||v + (-v)_+||)``: the norm of the negative part or
    of the positive part, whichever is smaller. Zero iff ``v >= 0`` or
    ``v <= 0``.
    """
    v = np.asarray(v, dtype=float).reshape(-1, 1)
    return float(_scores(v)[0][0])


def score_linf(v) -> float:
    """Same as :func:`score_l2` with the max-norm."""
    v = np.asarray(v, dtype=float).reshape(-1, 1)
    return float(_scores(v)[1][0])


def _scores(vectors):
    neg = np.minimum(vectors, 0.0)
    pos = np.maximum(vectors, 0.0)
    sn = 0.0 - neg.min(axis=0, initial=0.0)
    sp = pos.max(axis=0, initial=0.0)
    # rescale each part by its max so squares of tiny entries do not underflow
    nn = sn * np.linalg.norm(neg / np.where(sn > 0, sn, 1.0), axis=0)
    pn = sp * np.linalg.norm(pos / np.where(sp > 0, sp, 1.0), axis=0)
    return np.minimum(nn, pn), np.minimum(sn, sp)


@dataclass(frozen=True, eq=False)
class DetectionReport:
    """Outcome of :func:`detect`.

    Arrays are in covariance-eigenvalue descending order, so index 0 is the
    top eigenvector. ``argmin_index`` is 1-based like the eigenvalue order.
    ``near_positive`` lists the (1-based) eigenvectors whose l2 score is at
    most ``AMBIGUITY_TOL``; more than one of them makes the verdict
    ``ambiguous``.
    """

    scores: np.ndarray
    scores_inf: np.ndarray
    eigenvalues: np.ndarray
    decision: Hypothesis
    decision_inf: Hypothesis
    argmin_index: int
    top_gap: float
    eff_rank: float
    near_positive: list = field(default_factory=list)

    @property
    def ambiguous(self) -> bool:
        return len(self.near_positive) > 1

    def to_dict(self, max_scores: int | None = None) -> dict:
        """JSON-ready dict; ``max_scores`` truncates the stored arrays only."""
        k = None if max_scores is None else int(max_scores)
        return {
            "decision": self.decision.value,
            "decision_inf": self.decision_inf.value,
            "argmin_index": self.argmin_index,
            "scores": self.scores[:k].tolist(),
            "scores_inf": self.scores_inf[:k].tolist(),
            "eigenvalues": self.eigenvalues[:k].tolist(),
            "top_gap": self.top_gap,
            "eff_rank": self.eff_rank,
            "near_positive": list(self.near_positive),
            "ambiguous": self.ambiguous,
        }


def _decide(scores):
    return Hypothesis.T0 if scores[0] <= scores[1:].min(initial=np.inf) else Hypothesis.T1


def detect(c, method: str = "lapack", ambiguity_tol: float = AMBIGUITY_TOL) -> DetectionReport:
    """Decide whether a covariance matrix came from a first-order lowpass filter.

    Declares ``T0`` when the top eigenvector's score is no larger than every
    other eigenvector's score (ties go to ``T0``), ``T1`` otherwise. The same
    rule is applied with the l-infinity score for ``decision_inf``.

    Eigenvalues above ``-1e-8 * beta_1`` are clamped to zero before the
    diagnostics (gap, effective rank) are computed.
    """
    dec = eig_sym(c, method=method)
    values = dec.values[::-1].copy()
    vectors = dec.vectors[:, ::-1]
    top = values[0]
    clamp = values >= -PSD_CLAMP * max(abs(top), np.finfo(float).tiny)
    values[clamp & (values < 0)] = 0.0

    l2, linf = _scores(vectors)
    top_gap = float(values[0] - values[1]) if values.size > 1 else float("inf")
    eff_rank = float(values.sum() / values[0]) if values[0] > 0 else float("nan")
    return DetectionReport(
        scores=l2,
        scores_inf=linf,
        eigenvalues=values,
        decision=_decide(l2),
        decision_inf=_decide(linf),
        argmin_index=int(np.argmin(l2)) + 1,
        top_gap=top_gap,
        eff_rank=eff_rank,
        near_positive=[int(i) + 1 for i in np.flatnonzero(l2 <= ambiguity_tol)],
    )


def score_profile(c, method: str = "lapack"):
    """Per-eigenvector ``(scores, scores_inf)`` in descending-eigenvalue order."""
    dec = eig_sym(c, method=method)
    return _scores(dec.vectors[:, ::-1])
