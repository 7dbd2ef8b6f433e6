"""Random instance generators shared by the tests."""
from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import shortest_path

from ghdist import CombinatorialSpace, FiniteMetricSpace


def random_metric(rng: np.random.Generator, n_max: int = 4, n_min: int = 1) -> FiniteMetricSpace:
    """Shortest-path closure of a random weighted complete graph.

    Half of the instances use small integer weights so that ties between
    distances are common.
    """
    n = int(rng.integers(n_min, n_max + 1))
    if rng.random() < 0.5:
        W = rng.integers(1, 5, size=(n, n)).astype(float)
    else:
        W = rng.uniform(0.1, 3.0, size=(n, n))
    W = np.triu(W, 1)
    W = W + W.T
    return FiniteMetricSpace(shortest_path(W, directed=False))


def random_model(rng: np.random.Generator, n_max: int = 4, p_edge: float | None = None) -> CombinatorialSpace:
    X = random_metric(rng, n_max)
    p = rng.random() if p_edge is None else p_edge
    edges = [(i, j) for i in range(X.n) for j in range(i + 1, X.n) if rng.random() < p]
    return CombinatorialSpace(X, edges)


def random_map_pair(rng: np.random.Generator, nx: int, ny: int):
    return rng.integers(ny, size=nx), rng.integers(nx, size=ny)
