"""Finite metric spaces, their numeric invariants and the Hausdorff distance.

Distances are stored as an immutable ``float64`` matrix. Matrices built from
:class:`fractions.Fraction` entries are kept as exact ``object`` arrays so that
rational reference values can be compared without rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .exceptions import (
    Asymmetric,
    DimensionMismatch,
    DuplicatePoint,
    EmptySubset,
    NegativeOrZeroOffDiagonal,
    NegativeScale,
    NonFiniteEntry,
    NonzeroDiagonal,
    NotSquare,
    TriangleViolation,
)

TOL = 1e-9

_NORMS = {
    "l2": "euclidean",
    "l1": "cityblock",
    "linf": "chebyshev",
}


def _as_matrix(matrix) -> np.ndarray:
    if isinstance(matrix, np.ndarray) and matrix.dtype != object:
        D = np.array(matrix, dtype=float)
    else:
        rows = [list(r) for r in matrix]
        exact = any(isinstance(v, Fraction) for r in rows for v in r)
        if exact:
            D = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
            for i, r in enumerate(rows):
                if len(r) != D.shape[1]:
                    raise NotSquare("distance matrix rows have unequal lengths")
                for j, v in enumerate(r):
                    D[i, j] = Fraction(v) if isinstance(v, Rational) else v
        else:
            try:
                D = np.array(rows, dtype=float)
            except ValueError as exc:
                raise NotSquare("distance matrix rows have unequal lengths") from exc
    if D.ndim != 2 or D.shape[0] != D.shape[1] or D.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {D.shape}")
    return D


def _check_axioms(D: np.ndarray, tol: float) -> None:
    n = D.shape[0]
    if D.dtype != object and not np.all(np.isfinite(D)):
        i, j = np.argwhere(~np.isfinite(D))[0]
        raise NonFiniteEntry(f"dist[{i}][{j}] is not finite")
    diag = np.array([D[i, i] for i in range(n)])
    bad = np.flatnonzero(diag != 0)
    if bad.size:
        raise NonzeroDiagonal(int(bad[0]))
    asym = np.abs(D - D.T) > tol
    if asym.any():
        i, j = np.argwhere(np.triu(asym))[0]
        raise Asymmetric(int(i), int(j))
    off = ~np.eye(n, dtype=bool)
    nonpos = off & (D <= 0)
    if nonpos.any():
        i, j = np.argwhere(nonpos)[0]
        raise NegativeOrZeroOffDiagonal(int(i), int(j))
    # first violating (i, j, k) in lexicographic order
    for i in range(n):
        viol = D[i][None, :] > D[i][:, None] + D + tol
        if viol.any():
            j, k = np.argwhere(viol)[0]
            raise TriangleViolation(i, int(j), int(k))


class FiniteMetricSpace:
    """A finite metric space given by its distance matrix.

    Parameters
    ----------
    dist : array-like of shape (n, n)
        Pairwise distances.
    labels : sequence of str, optional
        Point names, one per row.
    check : bool, default=True
        Verify the metric axioms. Violations raise a :class:`MetricError`
        subclass naming the axiom and the witnessing indices.
    tol : float, default=1e-9
        Slack allowed in the symmetry and triangle checks.
    """

    __slots__ = ("dist", "labels")

    def __init__(self, dist, labels: Sequence[str] | None = None, *, check: bool = True,
                 tol: float = TOL):
        D = _as_matrix(dist)
        if check:
            _check_axioms(D, tol)
            if D.dtype != object:
                D = (D + D.T) / 2
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != D.shape[0]:
                raise ValueError(f"{len(labels)} labels for {D.shape[0]} points")
        D.setflags(write=False)
        object.__setattr__(self, "dist", D)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteMetricSpace is immutable")

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self) -> int:
        return self.n

    @property
    def exact(self) -> bool:
        """True when distances are held as exact rationals."""
        return self.dist.dtype == object

    def to_float(self) -> "FiniteMetricSpace":
        if not self.exact:
            return self
        return FiniteMetricSpace(self.dist.astype(float), self.labels, check=False)

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return (self.dist.shape == other.dist.shape
                and bool(np.all(self.dist == other.dist))
                and self.labels == other.labels)

    __hash__ = None

    def __repr__(self):
        return f"FiniteMetricSpace(n={self.n}, diam={self.dist.max()!r})"


def validate(matrix, labels: Sequence[str] | None = None, tol: float = TOL) -> FiniteMetricSpace:
    """Build a :class:`FiniteMetricSpace`, raising on the first violated axiom."""
    return FiniteMetricSpace(matrix, labels, check=True, tol=tol)


def check_metric_space(X) -> FiniteMetricSpace:
    """Coerce ``X`` to a :class:`FiniteMetricSpace`.

    Accepts a space, anything carrying a ``metric`` attribute (combinatorial
    models) or an array-like distance matrix, which is validated.
    """
    if isinstance(X, FiniteMetricSpace):
        return X
    metric = getattr(X, "metric", None)
    if isinstance(metric, FiniteMetricSpace):
        return metric
    return validate(X)


def one_point(label: str | None = None) -> FiniteMetricSpace:
    return FiniteMetricSpace([[0.0]], None if label is None else [label], check=False)


@dataclass(frozen=True)
class SpaceInvariants:
    """Diameter, Chebyshev radius, largest and smallest nearest-neighbour distances."""

    diam: float
    chebyshev_R: float
    d_val: float
    s_val: float


def invariants(X) -> SpaceInvariants:
    X = check_metric_space(X)
    D = X.dist
    n = X.n
    if n == 1:
        zero = D[0, 0]
        return SpaceInvariants(zero, zero, zero, zero)
    off = D[~np.eye(n, dtype=bool)].reshape(n, n - 1)
    nearest = off.min(axis=1)
    return SpaceInvariants(
        diam=D.max(),
        chebyshev_R=D.max(axis=1).min(),
        d_val=nearest.max(),
        s_val=nearest.min(),
    )


def diameter(X) -> float:
    return check_metric_space(X).dist.max()


def dist_spectrum(X) -> np.ndarray:
    """Sorted distinct values of the distance matrix; always starts with 0."""
    return np.unique(check_metric_space(X).dist)


def _indices(S: Iterable[int], n: int) -> np.ndarray:
    idx = np.unique(np.asarray(list(S), dtype=int))
    if idx.size == 0:
        raise EmptySubset("subset must be non-empty")
    if idx[0] < 0 or idx[-1] >= n:
        raise IndexError(f"subset indices must lie in [0, {n})")
    return idx


def hausdorff(X, A: Iterable[int], B: Iterable[int]) -> float:
    """Hausdorff distance between two non-empty point subsets of ``X``."""
    X = check_metric_space(X)
    a = _indices(A, X.n)
    b = _indices(B, X.n)
    sub = X.dist[np.ix_(a, b)]
    return max(sub.min(axis=1).max(), sub.min(axis=0).max())


def scale(X, lam) -> FiniteMetricSpace:
    """Multiply every distance by ``lam``; ``lam = 0`` collapses to one point."""
    X = check_metric_space(X)
    if lam < 0:
        raise NegativeScale(f"scale factor must be non-negative, got {lam}")
    if lam == 0:
        return one_point(X.labels[0] if X.labels else None)
    return FiniteMetricSpace(X.dist * lam, X.labels, check=False)


def from_points(coords, norm="l2", labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Pairwise distances of a point cloud under the l1, l2 or l-infinity norm.

    ``norm`` may also be given as 1, 2 or ``inf``.
    """
    rows = list(coords)
    if not rows:
        raise DimensionMismatch("point cloud is empty")
    try:
        P = np.array(rows, dtype=float)
    except ValueError as exc:
        raise DimensionMismatch("points have unequal dimensions") from exc
    if P.ndim == 1:
        P = P[:, None]
    if P.ndim != 2:
        raise DimensionMismatch("points have unequal dimensions")
    if not np.all(np.isfinite(P)):
        raise NonFiniteEntry("point coordinates must be finite")
    key = {1: "l1", 2: "l2", np.inf: "linf", float("inf"): "linf"}.get(norm, norm)
    if key not in _NORMS:
        raise ValueError(f"unknown norm {norm!r}; expected one of {sorted(_NORMS)}")
    D = cdist(P, P, metric=_NORMS[key])
    np.fill_diagonal(D, 0.0)
    dup = np.argwhere(np.triu(D == 0, k=1))
    if dup.size:
        i, j = dup[0]
        raise DuplicatePoint(int(i), int(j))
    return FiniteMetricSpace(D, labels)


def subspace(X, S: Iterable[int]) -> FiniteMetricSpace:
    """Restriction of ``X`` to the points ``S`` (kept in increasing index order)."""
    X = check_metric_space(X)
    idx = _indices(S, X.n)
    labels = None if X.labels is None else [X.labels[i] for i in idx]
    return FiniteMetricSpace(X.dist[np.ix_(idx, idx)].copy(), labels, check=False)
