import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from conftest import complete_graph, path_graph, star_graph
from lpdetect.graph import GsoKind, Graph, adjacency, default_edge_probability, erdos_renyi_connected, laplacian, shift_operator
from lpdetect.filters import (
    DegeneratePassbandError,
    Exponential,
    FilterSetting,
    InverseShift,
    LinearShift,
    Polynomial,
    ShiftKind,
    SingularResponseError,
    classify_lowpass,
    evaluate_response,
    standard_filter_pair,
    population_covariance,
    response_from_dict,
    response_to_dict,
    synthesize_filter,
)
from lpdetect.spectral import effective_rank, order_spectrum

LAP = ShiftKind.I_PLUS_ALPHA_L
ADJ = ShiftKind.I_MINUS_ALPHA_A


def lap_spectrum(g):
    return order_spectrum(laplacian(g), GsoKind.LAPLACIAN)


def adj_spectrum(g):
    return order_spectrum(adjacency(g), GsoKind.ADJACENCY)


class TestEvaluate:
    def test_polynomial(self):
        assert evaluate_response(Polynomial((1, 2)), 3.0) == 7.0

    def test_inverse_shift_at_zero(self):
        assert evaluate_response(InverseShift(0.25, LAP), 0.0) == 1.0

    def test_exponential(self):
        assert evaluate_response(Exponential(5, -1, GsoKind.LAPLACIAN), 1.0) == pytest.approx(math.exp(-5), rel=1e-15)
        assert math.exp(-5) == pytest.approx(0.006738, abs=1e-6)

    def test_linear_shift(self):
        assert evaluate_response(LinearShift(0.5, ADJ), 2.0) == 0.0
        assert evaluate_response(LinearShift(0.5, LAP), 2.0) == 2.0

    def test_pole(self):
        with pytest.raises(SingularResponseError):
            evaluate_response(InverseShift(0.5, ADJ), 2.0)

    def test_vectorised(self):
        np.testing.assert_allclose(evaluate_response(Polynomial((0, 0, 1)), np.array([1.0, 2.0])), [1, 4])

    def test_polynomial_validation(self):
        with pytest.raises(ValueError):
            Polynomial(())
        with pytest.raises(ValueError):
            Polynomial((1.0, float("nan")))


class TestSynthesize:
    def test_identity(self, p3):
        f = synthesize_filter(Polynomial((1,)), lap_spectrum(p3))
        np.testing.assert_allclose(f.H, np.eye(3), atol=1e-12)

    def test_linear_reproduces_laplacian(self, p3):
        f = synthesize_filter(Polynomial((0, 1)), lap_spectrum(p3))
        np.testing.assert_allclose(f.H, laplacian(p3), atol=1e-10)

    def test_inverse_matches_linear_solve(self, p3):
        alpha = 0.25
        f = synthesize_filter(InverseShift(alpha, LAP), lap_spectrum(p3))
        oracle = np.linalg.solve(np.eye(3) + alpha * laplacian(p3), np.eye(3))
        np.testing.assert_allclose(f.H, oracle, atol=1e-12)

    def test_adjacency_inverse_matches_linear_solve(self):
        g = erdos_renyi_connected(20, 0.3, seed=1)
        low, _, alpha = standard_filter_pair(FilterSetting.ADJACENCY_WEAK, g)
        f = synthesize_filter(low, adj_spectrum(g))
        np.testing.assert_allclose(f.H, np.linalg.inv(np.eye(20) - alpha * adjacency(g)), atol=1e-10)

    @pytest.mark.parametrize("sign", [1, -1])
    @pytest.mark.parametrize("kind", list(GsoKind))
    def test_exponential_matches_expm(self, sign, kind):
        g = erdos_renyi_connected(15, 0.3, seed=2)
        s = shift_operator(g, kind)
        f = synthesize_filter(Exponential(0.7, sign, kind), order_spectrum(s, kind))
        oracle = scipy.linalg.expm(sign * 0.7 * s)
        assert f.log_scale == 0.0
        np.testing.assert_allclose(f.H, oracle, rtol=1e-9, atol=1e-9 * np.abs(oracle).max())

    def test_polynomial_matches_matrix_powers(self):
        g = erdos_renyi_connected(12, 0.4, seed=3)
        coeffs = (0.5, -1.0, 0.25, 0.125)
        for kind in GsoKind:
            s = shift_operator(g, kind)
            oracle = sum(c * np.linalg.matrix_power(s, t) for t, c in enumerate(coeffs))
            f = synthesize_filter(Polynomial(coeffs), order_spectrum(s, kind))
            np.testing.assert_allclose(f.H, oracle, atol=1e-8 * max(1.0, np.abs(oracle).max()))

    def test_gso_mismatch(self, p3):
        with pytest.raises(ValueError, match="adjacency"):
            synthesize_filter(InverseShift(0.1, ADJ), lap_spectrum(p3))

    def test_laplacian_inverse_domain(self, p3):
        with pytest.raises(SingularResponseError):
            synthesize_filter(InverseShift(-0.5, LAP), lap_spectrum(p3))

    def test_huge_exponent_is_rescaled(self):
        g = complete_graph(4)
        f = synthesize_filter(Exponential(400.0, 1, GsoKind.LAPLACIAN), lap_spectrum(g))
        assert f.log_scale == pytest.approx(1600.0)
        assert np.all(np.isfinite(f.H))
        assert f.values.max() == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.floats(-2, 2), min_size=1, max_size=4),
    st.lists(st.floats(-2, 2), min_size=1, max_size=4),
    st.floats(-3, 3),
    st.floats(-3, 3),
    st.integers(0, 1000),
)
def test_synthesis_is_linear(c1, c2, a, b, seed):
    g = erdos_renyi_connected(10, 0.4, seed=seed)
    sp = lap_spectrum(g)
    size = max(len(c1), len(c2))
    p1 = np.pad(c1, (0, size - len(c1)))
    p2 = np.pad(c2, (0, size - len(c2)))
    lhs = synthesize_filter(Polynomial(tuple(a * p1 + b * p2)), sp).H
    rhs = a * synthesize_filter(Polynomial(tuple(p1)), sp).H + b * synthesize_filter(Polynomial(tuple(p2)), sp).H
    assert np.abs(lhs - rhs).max() <= 1e-8 * max(1.0, np.abs(lhs).max())


class TestClassify:
    def test_weak_inverse_on_path(self, p3):
        v = classify_lowpass(InverseShift(0.25, LAP), lap_spectrum(p3), 1)
        # h(0), h(1), h(3) = 1, 1/1.25, 1/1.75
        assert v.eta == pytest.approx(0.8, rel=1e-12)
        assert v.is_lowpass and v.is_first_order

    def test_strong_exponential_on_path(self, p3):
        v = classify_lowpass(Exponential(5, -1, GsoKind.LAPLACIAN), lap_spectrum(p3), 1)
        assert v.eta == pytest.approx(math.exp(-5), rel=1e-10)
        assert v.is_first_order

    def test_linear_shift_not_lowpass(self, p3):
        v = classify_lowpass(LinearShift(0.25, LAP), lap_spectrum(p3), 1)
        assert v.eta == pytest.approx(1.75, rel=1e-12)
        assert not v.is_lowpass and not v.is_first_order

    def test_higher_cutoff_is_not_first_order(self, p3):
        sp = lap_spectrum(p3)
        v2 = classify_lowpass(Exponential(5, -1, GsoKind.LAPLACIAN), sp, 2)
        # ratio exp(-15) / exp(-5)
        assert v2.eta == pytest.approx(math.exp(-10), rel=1e-10)
        assert v2.is_lowpass and not v2.is_first_order

    def test_cutoff_range(self, p3):
        sp = lap_spectrum(p3)
        with pytest.raises(ValueError):
            classify_lowpass(InverseShift(0.25, LAP), sp, 3)
        with pytest.raises(ValueError):
            classify_lowpass(InverseShift(0.25, LAP), sp, 0)

    def test_degenerate_passband(self, p3):
        with pytest.raises(DegeneratePassbandError):
            classify_lowpass(Polynomial((0, 1)), lap_spectrum(p3), 1)

    def test_exponential_ratio_is_scale_free(self):
        g = star_graph(6)
        sp = lap_spectrum(g)
        v = classify_lowpass(Exponential(300.0, -1, GsoKind.LAPLACIAN), sp, 1)
        assert v.is_first_order and v.eta == pytest.approx(math.exp(-300.0 * sp.freqs[1]), rel=1e-9)


class TestStandardPairs:
    def test_laplacian_weak_on_path(self, p3):
        low, high, alpha = standard_filter_pair("laplacian_weak", p3)
        assert alpha == 0.25
        assert low == InverseShift(0.25, LAP)
        assert high == LinearShift(0.25, LAP)

    def test_laplacian_strong_on_path(self, p3):
        low, high, tau = standard_filter_pair("laplacian_strong", p3)
        assert tau == 5.0
        assert low == Exponential(5.0, -1, GsoKind.LAPLACIAN)
        assert high == Exponential(5.0, 1, GsoKind.LAPLACIAN)

    def test_adjacency_strong_on_k2(self, k2):
        low, high, tau = standard_filter_pair("adjacency_strong", k2)
        assert tau == 10.0
        assert low == Exponential(10.0, 1, GsoKind.ADJACENCY)
        assert high == Exponential(10.0, -1, GsoKind.ADJACENCY)

    def test_adjacency_weak(self, p3):
        low, high, alpha = standard_filter_pair("adjacency_weak", p3)
        assert (low, high, alpha) == (InverseShift(0.25, ADJ), LinearShift(0.25, ADJ), 0.25)

    def test_edgeless(self):
        with pytest.raises(ValueError):
            standard_filter_pair("laplacian_weak", Graph(np.zeros((3, 3))))


def _ensemble(count=100):
    for seed in range(count):
        n = (10, 20, 35, 50)[seed % 4]
        yield erdos_renyi_connected(n, default_edge_probability(n), seed)


def test_pairs_ground_truth_on_ensemble():
    for g in _ensemble():
        for setting in FilterSetting:
            low, high, _ = standard_filter_pair(setting, g)
            sp = order_spectrum(shift_operator(g, setting.gso), setting.gso)
            assert classify_lowpass(low, sp, 1).is_first_order
            assert not classify_lowpass(high, sp, 1).is_first_order


def test_weak_and_strong_ratios_on_ensemble():
    strong_etas = []
    for g in _ensemble():
        for gso, weak, strong in (
            (GsoKind.LAPLACIAN, FilterSetting.LAPLACIAN_WEAK, FilterSetting.LAPLACIAN_STRONG),
            (GsoKind.ADJACENCY, FilterSetting.ADJACENCY_WEAK, FilterSetting.ADJACENCY_STRONG),
        ):
            sp = order_spectrum(shift_operator(g, gso), gso)
            eta_weak = classify_lowpass(standard_filter_pair(weak, g)[0], sp, 1).eta
            eta_strong = classify_lowpass(standard_filter_pair(strong, g)[0], sp, 1).eta
            assert eta_weak > 0.5
            assert eta_strong < eta_weak
            strong_etas.append(eta_strong)
    # tau = 10/d_max only guarantees eta = exp(-10 * gap / d_max); near the
    # connectivity threshold the Laplacian gap is small, so strong ratios
    # spread up to ~0.6 rather than sitting below 0.01
    assert max(strong_etas) < 0.7
    assert np.median(strong_etas) < 0.2


class TestPopulationCovariance:
    def test_identity(self, p3):
        f = synthesize_filter(Polynomial((1,)), lap_spectrum(p3))
        np.testing.assert_allclose(population_covariance(f), np.eye(3), atol=1e-12)

    def test_laplacian_squared(self, p3):
        f = synthesize_filter(Polynomial((0, 1)), lap_spectrum(p3))
        lap = laplacian(p3)
        np.testing.assert_allclose(population_covariance(f), lap @ lap, atol=1e-10)

    def test_matches_direct_square_and_rank_bounds(self):
        for g in _ensemble(12):
            for setting in FilterSetting:
                sp = order_spectrum(shift_operator(g, setting.gso), setting.gso)
                for r in standard_filter_pair(setting, g)[:2]:
                    f = synthesize_filter(r, sp)
                    c = population_covariance(f)
                    hh = f.H @ f.H
                    assert np.abs(c - hh).max() <= 1e-8 * max(1.0, np.abs(hh).max())
                    assert np.linalg.eigvalsh(c).min() >= -1e-9 * np.abs(c).max()
                    assert 1 - 1e-12 <= effective_rank(c) <= g.n + 1e-9


@pytest.mark.parametrize(
    "r",
    [
        Polynomial((1.0, -0.5, 0.25)),
        InverseShift(0.1, LAP),
        LinearShift(0.3, ADJ),
        Exponential(2.0, -1, GsoKind.ADJACENCY),
    ],
)
def test_json_round_trip(r):
    d = response_to_dict(r)
    assert set(d) == {"form", "params"}
    assert response_from_dict(d) == r


def test_json_rejects_unknown_form():
    with pytest.raises(ValueError):
        response_from_dict({"form": "chebyshev", "params": {}})
    with pytest.raises(ValueError):
        response_from_dict({"form": "inverse_shift", "params": {"alpha": 0.1}})


def test_path_graph_helper(p3):
    assert np.array_equal(path_graph(3).weights, p3.weights)
