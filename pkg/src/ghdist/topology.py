"""Combinatorial models of topological metric spaces.

A :class:`CombinatorialSpace` is a finite metric space plus a symmetric edge
set. A map between two models is *admissible* (the discrete stand-in for a
continuous map) when every edge is either collapsed or sent to an edge. An
edgeless model therefore plays the part of a totally disconnected space, and a
connected graph the part of a connected one.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import SizeMismatch
from .metric import FiniteMetricSpace, check_metric_space


class CombinatorialSpace:
    """A finite metric space with a symmetric, irreflexive adjacency relation.

    Parameters
    ----------
    metric : FiniteMetricSpace or array-like
        The underlying metric.
    edges : iterable of (int, int)
        Unordered edges between distinct points.
    """

    __slots__ = ("metric", "edges", "adjacency")

    def __init__(self, metric, edges: Iterable = ()):
        metric = check_metric_space(metric)
        n = metric.n
        norm = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"edge ({i},{j}) is a loop")
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"edge ({i},{j}) out of range for {n} points")
            norm.add((min(i, j), max(i, j)))
        adj = np.zeros((n, n), dtype=bool)
        for i, j in norm:
            adj[i, j] = adj[j, i] = True
        adj.setflags(write=False)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "adjacency", adj)

    def __setattr__(self, name, value):
        raise AttributeError("CombinatorialSpace is immutable")

    @classmethod
    def edgeless(cls, metric) -> "CombinatorialSpace":
        return cls(metric, ())

    @property
    def dist(self) -> np.ndarray:
        return self.metric.dist

    @property
    def n(self) -> int:
        return self.metric.n

    @property
    def labels(self):
        return self.metric.labels

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"CombinatorialSpace(n={self.n}, edges={len(self.edges)})"


def as_combinatorial(X) -> CombinatorialSpace:
    """Models without adjacency information are treated as edgeless."""
    if isinstance(X, CombinatorialSpace):
        return X
    return CombinatorialSpace.edgeless(X)


class Component(NamedTuple):
    points: tuple
    diam: float


def components(Xc: CombinatorialSpace) -> list[Component]:
    """Connected components of the adjacency graph, ordered by smallest point."""
    Xc = as_combinatorial(Xc)
    _, labels = connected_components(csr_matrix(Xc.adjacency), directed=False)
    groups: dict = {}
    for i, c in enumerate(labels):
        groups.setdefault(int(c), []).append(i)
    out = []
    for pts in sorted(groups.values(), key=lambda p: p[0]):
        idx = np.asarray(pts)
        out.append(Component(tuple(pts), Xc.dist[np.ix_(idx, idx)].max()))
    return out


def is_totally_disconnected(Xc) -> bool:
    return not as_combinatorial(Xc).adjacency.any()


def is_connected(Xc) -> bool:
    return len(components(Xc)) == 1


def eps_graph(X, eps: float) -> CombinatorialSpace:
    """Join distinct points at distance at most ``eps`` (closed threshold)."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    X = check_metric_space(X)
    close = np.triu(X.dist <= eps, k=1)
    return CombinatorialSpace(X, [tuple(e) for e in np.argwhere(close)])


def path_space(metric: FiniteMetricSpace) -> CombinatorialSpace:
    """Edges between consecutive point indices."""
    metric = check_metric_space(metric)
    return CombinatorialSpace(metric, [(i, i + 1) for i in range(metric.n - 1)])


def is_admissible(f, Xc, Yc) -> bool:
    """Whether ``f`` collapses or preserves every edge of ``Xc``."""
    Xc, Yc = as_combinatorial(Xc), as_combinatorial(Yc)
    f = np.asarray(f, dtype=int)
    if f.shape != (Xc.n,) or f.min() < 0 or f.max() >= Yc.n:
        raise SizeMismatch(f"map must send {Xc.n} points into [0, {Yc.n})")
    if not Xc.edges:
        return True
    E = np.asarray(Xc.edges)
    a, b = f[E[:, 0]], f[E[:, 1]]
    return bool(np.all((a == b) | Yc.adjacency[a, b]))


def is_incomparable(Xc, Yc) -> bool:
    """Whether every admissible map ``Xc -> Yc`` is constant.

    In this model the answer has a closed form. A one-point domain or target
    allows only constant maps. A disconnected domain can send two components
    to two different points, and a connected domain with at least two points
    can send one vertex to one end of an edge and everything else to the other
    end. So a non-constant admissible map exists exactly when neither side is
    a single point and either ``Xc`` is disconnected or ``Yc`` has an edge.
    """
    Xc, Yc = as_combinatorial(Xc), as_combinatorial(Yc)
    if Xc.n == 1 or Yc.n == 1:
        return True
    return is_connected(Xc) and is_totally_disconnected(Yc)
