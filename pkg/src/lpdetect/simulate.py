"""Synthetic graph signals and Monte-Carlo detection experiments.

Every trial draws its own connected Erdős–Rényi graph with ``p = 2 log(n)/n``,
builds the lowpass (``T0``) or highpass (``T1``) member of a filter pair,
generates ``y = H x + w`` and runs the detector on the uncentered sample
covariance.

Seeding
-------
A trial's random stream is ``SeedSequence(seed, spawn_key=(k, h, t))`` where
``k`` is a CRC32 of the trial's ``setting, n, m, sigma2``, ``h`` the
hypothesis (0 or 1) and ``t`` the trial index. The graph and the signals use
the two children spawned from that sequence. Results therefore do not
depend on the order trials run in, the worker count, or which other grid
points are part of a sweep.
"""
from __future__ import annotations

import csv
import json
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .detector import Hypothesis, SignalMatrix, detect, sample_covariance
from .filters import FilterMatrix, FilterSetting, standard_filter_pair, synthesize_filter
from .graph import default_edge_probability, erdos_renyi_connected, make_rng, shift_operator
from .spectral import order_spectrum

__all__ = [
    "TrialConfig",
    "TrialOutcome",
    "SweepResult",
    "SWEEP_AXES",
    "trial_seed_sequence",
    "generate_signals",
    "build_trial_filter",
    "run_trial",
    "sweep",
    "scoring_sweep",
    "error_rate_sweep",
]

SWEEP_AXES = ("n", "m", "sigma2")


@dataclass(frozen=True)
class TrialConfig:
    """One experimental condition.

    ``trials`` is the number of Monte-Carlo trials per hypothesis. With
    ``fixed_graph`` every trial at a given ``n`` reuses one graph.
    """

    n: int = 100
    m: int = 1000
    sigma2: float = 0.01
    setting: FilterSetting = FilterSetting.LAPLACIAN_WEAK
    seed: int = 0
    trials: int = 200
    fixed_graph: bool = False

    def __post_init__(self):
        object.__setattr__(self, "setting", FilterSetting(self.setting))
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if self.sigma2 < 0:
            raise ValueError(f"sigma2 must be non-negative, got {self.sigma2}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")

    @property
    def gso(self):
        return self.setting.gso

    def to_dict(self) -> dict:
        d = asdict(self)
        d["setting"] = self.setting.value
        return d


@dataclass(frozen=True)
class TrialOutcome:
    score_top: float
    decided: Hypothesis
    decided_inf: Hypothesis


def _condition_key(cfg: TrialConfig) -> int:
    tag = f"{cfg.setting.value}|n={cfg.n}|m={cfg.m}|sigma2={float(cfg.sigma2)!r}"
    return zlib.crc32(tag.encode())


def trial_seed_sequence(cfg: TrialConfig, hypothesis, trial_index: int) -> np.random.SeedSequence:
    h = 0 if Hypothesis(hypothesis) is Hypothesis.T0 else 1
    return np.random.SeedSequence(cfg.seed, spawn_key=(_condition_key(cfg), h, int(trial_index)))


def generate_signals(H, m: int, sigma2: float, seed) -> SignalMatrix:
    """Draw ``m`` observations ``y = H x + w`` with ``x ~ N(0, I)``, ``w ~ N(0, sigma2 I)``."""
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be non-negative, got {sigma2}")
    H = H.H if isinstance(H, FilterMatrix) else np.asarray(H, dtype=float)
    rng = make_rng(seed)
    n = H.shape[0]
    x = rng.standard_normal((n, m))
    w = rng.standard_normal((n, m))
    return SignalMatrix(H @ x + np.sqrt(sigma2) * w)


def build_trial_filter(cfg: TrialConfig, hypothesis, graph_seed) -> FilterMatrix:
    """Draw the trial graph and realise the filter for ``hypothesis`` on it."""
    g = erdos_renyi_connected(cfg.n, default_edge_probability(cfg.n), graph_seed)
    low, high, _ = standard_filter_pair(cfg.setting, g)
    sp = order_spectrum(shift_operator(g, cfg.gso), cfg.gso)
    return synthesize_filter(low if Hypothesis(hypothesis) is Hypothesis.T0 else high, sp)


def run_trial(cfg: TrialConfig, hypothesis, trial_index: int) -> TrialOutcome:
    """One Monte-Carlo trial: fresh graph, filter, signals, detection."""
    ss = trial_seed_sequence(cfg, hypothesis, trial_index)
    graph_ss, signal_ss = ss.spawn(2)
    if cfg.fixed_graph:
        graph_ss = np.random.SeedSequence(cfg.seed, spawn_key=(zlib.crc32(b"fixed-graph"), cfg.n))
    f = build_trial_filter(cfg, hypothesis, graph_ss)
    y = generate_signals(f, cfg.m, cfg.sigma2, signal_ss)
    rep = detect(sample_covariance(y, center=False))
    return TrialOutcome(float(rep.scores[0]), rep.decision, rep.decision_inf)


def _run_block(args):
    cfg, hypothesis = args
    out = [run_trial(cfg, hypothesis, t) for t in range(cfg.trials)]
    return (
        np.array([o.score_top for o in out]),
        np.array([o.decided is not Hypothesis(hypothesis) for o in out]),
        np.array([o.decided_inf is not Hypothesis(hypothesis) for o in out]),
    )


@dataclass
class SweepResult:
    """Averaged scores and error rates over a one-dimensional grid.

    All arrays have shape ``(len(settings), len(values))``. ``score_t0`` and
    ``score_t1`` are the mean top-eigenvector scores under each hypothesis;
    ``error_l2`` / ``error_linf`` are ``0.5 P(T1|T0) + 0.5 P(T0|T1)`` for the
    two score norms.
    """

    axis: str
    values: list
    settings: list
    trials: int
    score_t0: np.ndarray
    score_t1: np.ndarray
    error_l2: np.ndarray
    error_linf: np.ndarray
    base: dict = field(default_factory=dict)

    def column_names(self) -> list:
        cols = [self.axis]
        for s in self.settings:
            cols += [f"{s}_score_t0", f"{s}_score_t1", f"{s}_error_l2", f"{s}_error_linf"]
        return cols + ["trials"]

    def rows(self):
        for j, v in enumerate(self.values):
            row = [v]
            for i in range(len(self.settings)):
                row += [float(self.score_t0[i, j]), float(self.score_t1[i, j]),
                        float(self.error_l2[i, j]), float(self.error_linf[i, j])]
            yield row + [self.trials]

    def get(self, setting, quantity: str) -> np.ndarray:
        """Row of ``quantity`` (e.g. ``"error_l2"``) for one setting."""
        i = self.settings.index(FilterSetting(setting).value)
        return getattr(self, quantity)[i]

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "values": list(self.values),
            "settings": list(self.settings),
            "trials": self.trials,
            "score_t0": self.score_t0.tolist(),
            "score_t1": self.score_t1.tolist(),
            "error_l2": self.error_l2.tolist(),
            "error_linf": self.error_linf.tolist(),
            "base": dict(self.base),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepResult":
        arrays = {k: np.array(d[k], dtype=float) for k in ("score_t0", "score_t1", "error_l2", "error_linf")}
        return cls(d["axis"], list(d["values"]), list(d["settings"]), int(d["trials"]), base=d.get("base", {}), **arrays)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(self.column_names())
            for row in self.rows():
                writer.writerow([repr(x) if isinstance(x, float) else x for x in row])

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def sweep(base: TrialConfig, axis: str, grid, settings=None, workers: int = 1) -> SweepResult:
    """Run ``base.trials`` trials per hypothesis at every grid value and setting.

    Parameters
    ----------
    base : TrialConfig
        Values for the parameters that are not swept.
    axis : {"n", "m", "sigma2"}
    grid : sequence
        Values taken by ``axis``.
    settings : sequence of FilterSetting, optional
        Defaults to ``[base.setting]``.
    workers : int
        Size of the process pool. Output does not depend on it.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    grid = list(grid)
    if not grid:
        raise ValueError("sweep grid is empty")
    settings = [FilterSetting(s) for s in (settings or [base.setting])]
    cast = float if axis == "sigma2" else int
    grid = [cast(v) for v in grid]

    jobs = []
    for s in settings:
        for v in grid:
            cfg = replace(base, setting=s, **{axis: v})
            jobs += [(cfg, Hypothesis.T0), (cfg, Hypothesis.T1)]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_run_block, jobs))
    else:
        blocks = [_run_block(job) for job in jobs]

    shape = (len(settings), len(grid))
    score_t0, score_t1 = np.zeros(shape), np.zeros(shape)
    error_l2, error_linf = np.zeros(shape), np.zeros(shape)
    it = iter(blocks)
    for i in range(len(settings)):
        for j in range(len(grid)):
            s0, miss0, miss0_inf = next(it)
            s1, miss1, miss1_inf = next(it)
            score_t0[i, j], score_t1[i, j] = s0.mean(), s1.mean()
            error_l2[i, j] = 0.5 * miss0.mean() + 0.5 * miss1.mean()
            error_linf[i, j] = 0.5 * miss0_inf.mean() + 0.5 * miss1_inf.mean()

    return SweepResult(
        axis=axis,
        values=grid,
        settings=[s.value for s in settings],
        trials=base.trials,
        score_t0=score_t0,
        score_t1=score_t1,
        error_l2=error_l2,
        error_linf=error_linf,
        base=base.to_dict(),
    )


def scoring_sweep(base: TrialConfig, axis: str, grid, settings=None, workers: int = 1) -> SweepResult:
    """Mean top-eigenvector score against ``axis`` (error rates are filled in too)."""
    return sweep(base, axis, grid, settings, workers)


def error_rate_sweep(base: TrialConfig, axis: str, grid, settings=None, workers: int = 1) -> SweepResult:
    """Detection error rate against ``axis`` (mean scores are filled in too)."""
    return sweep(base, axis, grid, settings, workers)
