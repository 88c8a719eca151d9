"""Blind detection of first-order lowpass graph signals.

Given only graph signals (no topology), decide whether the graph filter that
produced them is first-order lowpass by checking which eigenvector of the
sample covariance is closest to having entries of a single sign.
"""
__version__ = "0.1.0"

from .detector import DetectionReport, Hypothesis, SignalMatrix, detect, sample_covariance, score_l2, score_linf, score_profile
from .filters import (
    Exponential,
    FilterSetting,
    InverseShift,
    LinearShift,
    Polynomial,
    ShiftKind,
    classify_lowpass,
    standard_filter_pair,
    population_covariance,
    synthesize_filter,
)
from .graph import Graph, GsoKind, erdos_renyi, erdos_renyi_connected, is_connected, laplacian, adjacency, max_degree
from .simulate import TrialConfig, run_trial, sweep
from .spectral import davis_kahan_bound, effective_rank, eig_sym, order_spectrum, sign_structure
