"""Undirected graphs and their graph shift operators.

Graphs are stored densely as a symmetric, non-negative weight matrix with a
zero diagonal. Random graphs are drawn from numpy's PCG64 generator so that a
given ``(n, p, seed)`` triple always yields the same graph.
"""
from __future__ import annotations

import csv
import enum
import os
from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "GsoKind",
    "GraphGenerationError",
    "make_rng",
    "erdos_renyi",
    "erdos_renyi_connected",
    "default_edge_probability",
    "laplacian",
    "adjacency",
    "shift_operator",
    "is_connected",
    "max_degree",
    "load_edge_list",
    "save_edge_list",
]


class GraphGenerationError(RuntimeError):
    """Raised when a connected random graph could not be drawn."""


class GsoKind(str, enum.Enum):
    """Which matrix plays the role of the graph shift operator."""

    LAPLACIAN = "laplacian"
    ADJACENCY = "adjacency"


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected weighted graph without self-loops.

    Parameters
    ----------
    weights : (n, n) array_like
        Symmetric non-negative matrix with zero diagonal. A copy is stored
        and flagged read-only.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise ValueError(f"weights must be a non-empty square matrix, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        if np.any(np.diag(w) != 0):
            raise ValueError("graph must not contain self-loops (non-zero diagonal)")
        if not np.array_equal(w, w.T):
            raise ValueError("weights must be symmetric")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.weights, 1)))

    @classmethod
    def from_edges(cls, n: int, edges, weights=None) -> "Graph":
        """Build a graph from ``(i, j)`` pairs with optional per-edge weights."""
        w = np.zeros((n, n))
        edges = list(edges)
        if weights is None:
            weights = [1.0] * len(edges)
        for (i, j), wij in zip(edges, weights):
            w[i, j] = w[j, i] = wij
        return cls(w)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator from an int or a :class:`numpy.random.SeedSequence`."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def default_edge_probability(n: int) -> float:
    """Connection probability ``2 log(n) / n`` used for the synthetic ensembles."""
    return min(1.0, 2.0 * np.log(n) / n)


def _draw_er(n, p, rng):
    iu = np.triu_indices(n, 1)
    mask = rng.random(iu[0].size) < p
    w = np.zeros((n, n))
    w[iu[0][mask], iu[1][mask]] = 1.0
    return Graph(w + w.T)


def _check_er_args(n, p):
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got p={p}")


def erdos_renyi(n: int, p: float, seed) -> Graph:
    """Draw a binary Erdős–Rényi graph G(n, p).

    Each unordered pair ``{i, j}`` is an edge independently with probability
    ``p``. The upper triangle is drawn row-major from a single PCG64 stream,
    so the result is fully determined by ``seed``.
    """
    _check_er_args(n, p)
    return _draw_er(n, p, make_rng(seed))


def erdos_renyi_connected(n: int, p: float, seed, max_tries: int = 1000, return_attempts: bool = False):
    """Draw Erdős–Rényi graphs until one is connected.

    Successive attempts consume the same generator stream, so the accepted
    draw (and the number of rejected ones) is a deterministic function of
    ``seed``.

    Returns
    -------
    graph : Graph
    attempts : int
        Only when ``return_attempts`` is true; 1 means the first draw was kept.

    Raises
    ------
    GraphGenerationError
        If no connected graph appears within ``max_tries`` draws, which
        usually means ``p`` is too small for the given ``n``.
    """
    _check_er_args(n, p)
    rng = make_rng(seed)
    for attempt in range(1, max_tries + 1):
        g = _draw_er(n, p, rng)
        if is_connected(g):
            return (g, attempt) if return_attempts else g
    raise GraphGenerationError(
        f"no connected G(n={n}, p={p:.4g}) graph in {max_tries} draws; p is likely too small"
    )


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian ``Diag(A 1) - A``."""
    a = g.weights
    return np.diag(a.sum(axis=1)) - a


def adjacency(g: Graph) -> np.ndarray:
    return np.array(g.weights)


def shift_operator(g: Graph, kind) -> np.ndarray:
    kind = GsoKind(kind)
    return laplacian(g) if kind is GsoKind.LAPLACIAN else adjacency(g)


def is_connected(g: Graph) -> bool:
    """Breadth-first search from node 0 over non-zero weights."""
    n = g.n
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    nz = g.weights != 0
    while queue:
        i = queue.popleft()
        nbrs = np.flatnonzero(nz[i] & ~seen)
        seen[nbrs] = True
        queue.extend(nbrs.tolist())
    return bool(seen.all())


def max_degree(g: Graph) -> float:
    """Largest weighted degree ``max_i sum_j A_ij``."""
    return float(g.weights.sum(axis=1).max())


def load_edge_list(path: str | os.PathLike, n: int | None = None) -> Graph:
    """Read an edge list CSV with rows ``i,j,w`` (0-based, weight optional).

    ``n`` defaults to one more than the largest index seen. Lines starting
    with ``#`` and a non-numeric header row are skipped.
    """
    edges, weights = [], []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                i, j = int(row[0]), int(row[1])
                wij = float(row[2]) if len(row) > 2 and row[2].strip() else 1.0
            except (ValueError, IndexError):
                if lineno == 1:
                    continue
                raise ValueError(f"{path}:{lineno}: expected 'i,j[,w]', got {row!r}") from None
            if i == j:
                raise ValueError(f"{path}:{lineno}: self-loop on node {i}")
            edges.append((i, j))
            weights.append(wij)
    size = max((max(e) for e in edges), default=-1) + 1
    if n is None:
        n = size
    elif n < size:
        raise ValueError(f"edge list references node {size - 1} but n={n}")
    if n < 1:
        raise ValueError(f"{path}: empty edge list and no node count given")
    return Graph.from_edges(n, edges, weights)


def save_edge_list(g: Graph, path: str | os.PathLike) -> None:
    iu, ju = np.nonzero(np.triu(g.weights, 1))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i, j in zip(iu, ju):
            writer.writerow([int(i), int(j), repr(float(g.weights[i, j]))])
