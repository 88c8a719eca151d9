import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import complete_graph, path_graph, star_graph
from lpdetect.graph import (
    Graph,
    GraphGenerationError,
    adjacency,
    default_edge_probability,
    erdos_renyi,
    erdos_renyi_connected,
    is_connected,
    laplacian,
    load_edge_list,
    max_degree,
    save_edge_list,
)


def reachable_by_powers(g):
    """Connectivity oracle independent of BFS: (I + A)^(n-1) has no zero entry."""
    n = g.n
    r = np.eye(n) + (g.weights > 0)
    for _ in range(int(np.ceil(np.log2(max(n - 1, 1)))) + 1):
        r = np.minimum(r @ r, 1.0)
    return bool(np.all(r > 0))


@st.composite
def random_graphs(draw, max_n=30):
    n = draw(st.integers(2, max_n))
    p = draw(st.floats(0.0, 1.0))
    seed = draw(st.integers(0, 2**32 - 1))
    return erdos_renyi(n, p, seed)


class TestGraphType:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            Graph(np.array([[0, 1], [0, 0]]))

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(np.array([[1.0, 1], [1, 0]]))

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="non-negative"):
            Graph(np.array([[0, -1.0], [-1.0, 0]]))

    def test_weights_are_read_only(self, p3):
        with pytest.raises(ValueError):
            p3.weights[0, 1] = 5.0


class TestErdosRenyi:
    def test_p_one_gives_single_edge(self):
        g = erdos_renyi(2, 1.0, seed=123)
        np.testing.assert_array_equal(g.weights, [[0, 1], [1, 0]])

    def test_p_zero_gives_empty_graph(self):
        g = erdos_renyi(5, 0.0, seed=7)
        assert g.num_edges == 0
        assert not is_connected(g)

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            erdos_renyi(1, 0.5, seed=0)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            erdos_renyi(5, 1.5, seed=0)

    def test_deterministic(self):
        a = erdos_renyi(40, 0.2, seed=99)
        b = erdos_renyi(40, 0.2, seed=99)
        c = erdos_renyi(40, 0.2, seed=100)
        assert np.array_equal(a.weights, b.weights)
        assert not np.array_equal(a.weights, c.weights)

    def test_binary_weights(self):
        g = erdos_renyi(30, 0.3, seed=1)
        assert set(np.unique(g.weights)) <= {0.0, 1.0}

    def test_mean_edge_count(self):
        n = 100
        p = default_edge_probability(n)
        expected = p * n * (n - 1) / 2
        assert p == pytest.approx(0.0921, abs=1e-4)
        mean = np.mean([erdos_renyi(n, p, seed=s).num_edges for s in range(500)])
        assert abs(mean - expected) <= 0.05 * expected


class TestConnectedDraws:
    def test_complete_pair(self):
        g = erdos_renyi_connected(2, 1.0, seed=5)
        assert g.num_edges == 1

    def test_connected_at_threshold(self):
        n = 50
        g, attempts = erdos_renyi_connected(n, default_edge_probability(n), seed=3, return_attempts=True)
        assert attempts >= 1
        assert is_connected(g)
        assert reachable_by_powers(g)

    def test_empty_never_connects(self):
        with pytest.raises(GraphGenerationError):
            erdos_renyi_connected(10, 0.0, seed=0, max_tries=20)

    def test_deterministic(self):
        a = erdos_renyi_connected(30, 0.1, seed=11)
        b = erdos_renyi_connected(30, 0.1, seed=11)
        assert np.array_equal(a.weights, b.weights)


class TestOperators:
    def test_laplacian_single_edge(self, k2):
        np.testing.assert_array_equal(laplacian(k2), [[1, -1], [-1, 1]])

    def test_laplacian_path(self, p3):
        np.testing.assert_array_equal(laplacian(p3), [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])

    def test_adjacency(self, p3, k2):
        np.testing.assert_array_equal(adjacency(k2), [[0, 1], [1, 0]])
        np.testing.assert_array_equal(adjacency(p3), [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        np.testing.assert_array_equal(adjacency(Graph(np.zeros((3, 3)))), np.zeros((3, 3)))

    def test_is_connected(self, p3):
        assert is_connected(p3)
        assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
        assert is_connected(Graph(np.zeros((1, 1))))

    def test_max_degree(self, p3):
        assert max_degree(p3) == 2
        assert max_degree(complete_graph(4)) == 3
        assert max_degree(star_graph(6)) == 5

    def test_weighted_degree(self):
        g = Graph.from_edges(3, [(0, 1), (0, 2)], [0.5, 2.0])
        assert max_degree(g) == 2.5


@settings(max_examples=60, deadline=None)
@given(random_graphs())
def test_laplacian_psd_and_annihilates_ones(g):
    lap = laplacian(g)
    assert np.abs(lap @ np.ones(g.n)).max() <= 1e-12 * g.n
    assert np.linalg.eigvalsh(lap).min() >= -1e-9 * g.n


def test_connectivity_matches_laplacian_nullity():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        n = int(rng.integers(2, 31))
        g = erdos_renyi(n, float(rng.uniform(0.02, 0.4)), seed=int(rng.integers(2**32)))
        zeros = np.sum(np.linalg.eigvalsh(laplacian(g)) < 1e-9)
        assert is_connected(g) == (zeros == 1)
        assert is_connected(g) == reachable_by_powers(g)


def test_path_graph_helper_is_connected():
    assert is_connected(path_graph(10))


def test_edge_list_round_trip(tmp_path):
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)], [1.0, 0.25, 3.5])
    p = tmp_path / "g.csv"
    save_edge_list(g, p)
    h = load_edge_list(p, n=5)
    assert np.array_equal(g.weights, h.weights)


def test_edge_list_header_and_default_weight(tmp_path):
    p = tmp_path / "g.csv"
    p.write_text("i,j,w\n0,1\n1,2,2.0\n")
    g = load_edge_list(p)
    np.testing.assert_array_equal(g.weights, [[0, 1, 0], [1, 0, 2], [0, 2, 0]])


def test_edge_list_rejects_garbage(tmp_path):
    p = tmp_path / "g.csv"
    p.write_text("0,1\nx,y\n")
    with pytest.raises(ValueError, match=":2:"):
        load_edge_list(p)
