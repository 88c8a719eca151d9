"""Graph filter frequency responses, spectral synthesis and lowpass classification.

A filter is described by its frequency response ``h`` and realised on a
graph as ``H = V diag(h(freqs)) V^T`` from the ordered spectrum of the shift
operator. Every filter, including inverses and exponentials, goes through
that one spectral path.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .graph import Graph, GsoKind, max_degree
from .spectral import OrderedSpectrum

__all__ = [
    "SingularResponseError",
    "DegeneratePassbandError",
    "ShiftKind",
    "FilterSetting",
    "Polynomial",
    "InverseShift",
    "LinearShift",
    "Exponential",
    "FrequencyResponse",
    "FilterMatrix",
    "LowpassVerdict",
    "evaluate_response",
    "synthesize_filter",
    "classify_lowpass",
    "standard_filter_pair",
    "population_covariance",
    "response_to_dict",
    "response_from_dict",
]

POLE_TOL = 1e-12
PASSBAND_TOL = 1e-14
# exp() overflows near 709.78; keep headroom for the squared covariance
_EXP_SHIFT_THRESHOLD = 300.0


class SingularResponseError(ArithmeticError):
    """The frequency response has a pole on (or next to) a graph frequency."""


class DegeneratePassbandError(ValueError):
    """The passband response vanishes, so the lowpass ratio is undefined."""


class ShiftKind(str, enum.Enum):
    """Shifted identity the weak filters are built on."""

    I_PLUS_ALPHA_L = "I+aL"
    I_MINUS_ALPHA_A = "I-aA"

    @property
    def gso(self) -> GsoKind:
        return GsoKind.LAPLACIAN if self is ShiftKind.I_PLUS_ALPHA_L else GsoKind.ADJACENCY

    @property
    def sign(self) -> float:
        return 1.0 if self is ShiftKind.I_PLUS_ALPHA_L else -1.0


class FilterSetting(str, enum.Enum):
    LAPLACIAN_WEAK = "laplacian_weak"
    ADJACENCY_WEAK = "adjacency_weak"
    LAPLACIAN_STRONG = "laplacian_strong"
    ADJACENCY_STRONG = "adjacency_strong"

    @property
    def gso(self) -> GsoKind:
        return GsoKind.LAPLACIAN if self.value.startswith("laplacian") else GsoKind.ADJACENCY

    @property
    def strong(self) -> bool:
        return self.value.endswith("strong")


@dataclass(frozen=True)
class Polynomial:
    """``h(lam) = sum_t coeffs[t] * lam**t``; usable with either shift operator."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(float(c) for c in np.atleast_1d(self.coeffs))
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    gso = None

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        out = np.zeros_like(lam)
        for c in reversed(self.coeffs):
            out = out * lam + c
        return out


@dataclass(frozen=True)
class InverseShift:
    """``1 / (1 + alpha*lam)`` on the Laplacian or ``1 / (1 - alpha*lam)`` on the adjacency."""

    alpha: float
    kind: ShiftKind

    def __post_init__(self):
        object.__setattr__(self, "kind", ShiftKind(self.kind))

    @property
    def gso(self) -> GsoKind:
        return self.kind.gso

    def denominator(self, lam):
        return 1.0 + self.kind.sign * self.alpha * np.asarray(lam, dtype=float)

    def __call__(self, lam):
        den = self.denominator(lam)
        if np.any(np.abs(den) < POLE_TOL):
            raise SingularResponseError(f"pole of {self} hit at lambda={lam}")
        return 1.0 / den


@dataclass(frozen=True)
class LinearShift:
    """``1 + alpha*lam`` on the Laplacian or ``1 - alpha*lam`` on the adjacency."""

    alpha: float
    kind: ShiftKind

    def __post_init__(self):
        object.__setattr__(self, "kind", ShiftKind(self.kind))

    @property
    def gso(self) -> GsoKind:
        return self.kind.gso

    def __call__(self, lam):
        return 1.0 + self.kind.sign * self.alpha * np.asarray(lam, dtype=float)


@dataclass(frozen=True)
class Exponential:
    """``exp(sign * tau * lam)`` applied to the given shift operator."""

    tau: float
    sign: int
    applied_to: GsoKind

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        object.__setattr__(self, "applied_to", GsoKind(self.applied_to))

    @property
    def gso(self) -> GsoKind:
        return self.applied_to

    def exponent(self, lam):
        return self.sign * self.tau * np.asarray(lam, dtype=float)

    def __call__(self, lam):
        return np.exp(self.exponent(lam))


FrequencyResponse = Union[Polynomial, InverseShift, LinearShift, Exponential]


def evaluate_response(r: FrequencyResponse, lam):
    """Evaluate ``h(lam)`` for a scalar or array of frequencies.

    Raises
    ------
    SingularResponseError
        If ``lam`` sits on a pole of an inverse filter.
    """
    out = r(lam)
    return float(out) if np.ndim(out) == 0 else out


def _check_gso(r, sp):
    if r.gso is not None and r.gso is not sp.kind:
        raise ValueError(f"{type(r).__name__} acts on the {r.gso.value} but the spectrum is of the {sp.kind.value}")


def _response_values(r, freqs, shift_threshold):
    """``h(freqs)`` plus the log-scale factored out of exponential responses."""
    if isinstance(r, Exponential):
        expo = r.exponent(freqs)
        top = float(expo.max())
        log_scale = top if top > shift_threshold else 0.0
        return np.exp(expo - log_scale), log_scale
    if isinstance(r, InverseShift):
        den = r.denominator(freqs)
        if r.kind is ShiftKind.I_PLUS_ALPHA_L and np.any(den <= 0):
            raise SingularResponseError(f"1 + alpha*lambda must be positive on the Laplacian spectrum ({r})")
    return r(freqs), 0.0


@dataclass(frozen=True, eq=False)
class FilterMatrix:
    """A graph filter realised on a concrete spectrum.

    ``values`` holds ``h(freqs)`` as used to build ``H``. For exponential
    responses large enough to overflow, ``values`` and ``H`` are divided by
    ``exp(log_scale)``; otherwise ``log_scale`` is 0 and ``H`` is the filter
    itself.
    """

    H: np.ndarray
    response: FrequencyResponse
    spectrum: OrderedSpectrum
    values: np.ndarray
    log_scale: float = 0.0


def synthesize_filter(r: FrequencyResponse, sp: OrderedSpectrum) -> FilterMatrix:
    """Build ``H = V diag(h(freqs)) V^T`` from an ordered spectrum."""
    _check_gso(r, sp)
    values, log_scale = _response_values(r, sp.freqs, _EXP_SHIFT_THRESHOLD)
    H = (sp.modes * values) @ sp.modes.T
    H = 0.5 * (H + H.T)
    return FilterMatrix(H, r, sp, values, log_scale)


@dataclass(frozen=True)
class LowpassVerdict:
    K: int
    eta: float
    is_lowpass: bool
    is_first_order: bool

    def to_dict(self) -> dict:
        return {"K": self.K, "eta": self.eta, "is_lowpass": self.is_lowpass, "is_first_order": self.is_first_order}


def classify_lowpass(r: FrequencyResponse, sp: OrderedSpectrum, K: int = 1) -> LowpassVerdict:
    """Lowpass ratio with cutoff at the K-th graph frequency.

    ``eta = max_{i > K} |h(lam_i)| / min_{i <= K} |h(lam_i)|`` over the
    frequencies in graph-frequency order; the filter is lowpass iff
    ``eta < 1`` and first-order lowpass iff additionally ``K == 1``.

    Raises
    ------
    ValueError
        If ``K`` is not in ``1 .. n-1``.
    DegeneratePassbandError
        If the smallest passband magnitude is below 1e-14.
    """
    n = sp.n
    if not 1 <= K <= n - 1:
        raise ValueError(f"cutoff K={K} must lie in 1..{n - 1}")
    _check_gso(r, sp)
    # exponentials are always normalised here: eta is scale free
    mags = np.abs(_response_values(r, sp.freqs, 0.0)[0])
    passband = mags[:K].min()
    if passband < PASSBAND_TOL:
        raise DegeneratePassbandError(f"passband magnitude {passband:.3e} too small for a lowpass ratio")
    eta = float(mags[K:].max() / passband)
    return LowpassVerdict(K, eta, eta < 1.0, K == 1 and eta < 1.0)


def standard_filter_pair(setting, g: Graph):
    """Lowpass/highpass response pair for one of the four synthetic settings.

    Weak settings use ``alpha = 0.5 / d_max``::

        laplacian_weak    (I + aL)^-1  vs  I + aL
        adjacency_weak    (I - aA)^-1  vs  I - aA

    Strong settings use ``tau = 10 / d_max``::

        laplacian_strong  exp(-tL)     vs  exp(tL)
        adjacency_strong  exp(tA)      vs  exp(-tA)

    Returns
    -------
    lowpass, highpass : FrequencyResponse
    param : float
        ``alpha`` for weak settings, ``tau`` for strong ones.
    """
    setting = FilterSetting(setting)
    dmax = max_degree(g)
    if dmax <= 0:
        raise ValueError("filter pair undefined on an edgeless graph (d_max = 0)")
    if setting is FilterSetting.LAPLACIAN_WEAK:
        alpha = 0.5 / dmax
        return InverseShift(alpha, ShiftKind.I_PLUS_ALPHA_L), LinearShift(alpha, ShiftKind.I_PLUS_ALPHA_L), alpha
    if setting is FilterSetting.ADJACENCY_WEAK:
        alpha = 0.5 / dmax
        return InverseShift(alpha, ShiftKind.I_MINUS_ALPHA_A), LinearShift(alpha, ShiftKind.I_MINUS_ALPHA_A), alpha
    tau = 10.0 / dmax
    if setting is FilterSetting.LAPLACIAN_STRONG:
        return Exponential(tau, -1, GsoKind.LAPLACIAN), Exponential(tau, 1, GsoKind.LAPLACIAN), tau
    return Exponential(tau, 1, GsoKind.ADJACENCY), Exponential(tau, -1, GsoKind.ADJACENCY), tau


def population_covariance(f: FilterMatrix) -> np.ndarray:
    """Covariance ``H^2 = V diag(h^2) V^T`` of the noiseless filter output."""
    modes = f.spectrum.modes
    c = (modes * f.values ** 2) @ modes.T
    return 0.5 * (c + c.T)


def response_to_dict(r: FrequencyResponse) -> dict:
    """JSON-ready ``{"form": ..., "params": {...}}`` description."""
    if isinstance(r, Polynomial):
        return {"form": "polynomial", "params": {"coeffs": list(r.coeffs)}}
    if isinstance(r, (InverseShift, LinearShift)):
        form = "inverse_shift" if isinstance(r, InverseShift) else "linear_shift"
        return {"form": form, "params": {"alpha": r.alpha, "kind": r.kind.value}}
    if isinstance(r, Exponential):
        return {"form": "exponential", "params": {"tau": r.tau, "sign": r.sign, "applied_to": r.applied_to.value}}
    raise TypeError(f"not a frequency response: {r!r}")


def response_from_dict(d: dict) -> FrequencyResponse:
    try:
        form, params = d["form"], dict(d.get("params", {}))
        if form == "polynomial":
            return Polynomial(tuple(params["coeffs"]))
        if form == "inverse_shift":
            return InverseShift(float(params["alpha"]), ShiftKind(params["kind"]))
        if form == "linear_shift":
            return LinearShift(float(params["alpha"]), ShiftKind(params["kind"]))
        if form == "exponential":
            return Exponential(float(params["tau"]), int(params["sign"]), GsoKind(params["applied_to"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed frequency response {d!r}: {exc}") from None
    raise ValueError(f"unknown response form {form!r}")
