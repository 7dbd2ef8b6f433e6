"""Geodesics between finite metric spaces through a fixed correspondence.

For a correspondence ``R`` between ``X`` and ``Y``, the space ``R_t`` has the
pairs of ``R`` as points and distance
``(1 - t)|xx'| + t|yy'|``. The curve ``t -> R_t`` runs from ``X`` to ``Y`` and
is ``dis R / 2``-Lipschitz in the Gromov-Hausdorff distance. When ``R`` is
optimal the curve is a shortest path.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BoundViolation, OutOfRange
from .metric import FiniteMetricSpace, check_metric_space
from .relations import Relation, corr_from_maps, distortion_rel, is_correspondence
from .search import gh_exact

SLACK = 1e-9


@dataclass(frozen=True)
class InterpolantFamily:
    X: FiniteMetricSpace
    Y: FiniteMetricSpace
    R: Relation
    disR: float

    @classmethod
    def from_relation(cls, X, Y, R: Relation) -> "InterpolantFamily":
        X, Y = check_metric_space(X), check_metric_space(Y)
        if not is_correspondence(R):
            raise ValueError("R must be a correspondence")
        return cls(X, Y, R, distortion_rel(R, X, Y))

    @classmethod
    def optimal(cls, X, Y, **search_kw) -> "InterpolantFamily":
        """Family built on the certificate of an exact search."""
        res = gh_exact(X, Y, strict=True, **search_kw)
        return cls.from_relation(X, Y, corr_from_maps(res.certificate))


def interpolate(fam: InterpolantFamily, t: float) -> FiniteMetricSpace:
    if not 0 <= t <= 1:
        raise OutOfRange(f"t={t} outside [0, 1]")
    if t == 0:
        return fam.X
    if t == 1:
        return fam.Y
    P = np.asarray(fam.R.pairs)
    DX = np.asarray(fam.X.dist, float)[np.ix_(P[:, 0], P[:, 0])]
    DY = np.asarray(fam.Y.dist, float)[np.ix_(P[:, 1], P[:, 1])]
    return FiniteMetricSpace((1 - t) * DX + t * DY)


def geodesic_defect(fam: InterpolantFamily, t: float, s: float, **search_kw):
    """Lipschitz bound ``|t - s| dis R / 2`` and the measured distance between interpolants.

    Raises :class:`BoundViolation` if the measurement exceeds the bound.
    """
    bound = abs(t - s) * fam.disR / 2
    if t == s:
        return bound, 0.0 * bound
    measured = gh_exact(interpolate(fam, t), interpolate(fam, s), strict=True, **search_kw).value
    if measured > bound + SLACK:
        raise BoundViolation(f"d(R_{t}, R_{s}) = {measured} exceeds {bound}")
    return bound, measured


def polyline_length(fam: InterpolantFamily, partition, **search_kw) -> float:
    """Sum of measured distances between consecutive interpolants."""
    ts = [float(t) for t in partition]
    if any(b < a for a, b in zip(ts, ts[1:])) or any(not 0 <= t <= 1 for t in ts):
        raise OutOfRange("partition must be sorted inside [0, 1]")
    total = 0.0
    for a, b in zip(ts, ts[1:]):
        total += geodesic_defect(fam, a, b, **search_kw)[1]
    if total > fam.disR / 2 + SLACK * max(1, len(ts) - 1):
        raise BoundViolation(f"polyline length {total} exceeds dis R / 2 = {fam.disR / 2}")
    return total


def step_table(fam: InterpolantFamily, partition, **search_kw) -> list[dict]:
    """Per-segment bound and measurement along a partition."""
    rows = []
    for a, b in zip(partition, partition[1:]):
        bound, measured = geodesic_defect(fam, a, b, **search_kw)
        rows.append({"t": float(a), "s": float(b), "bound": float(bound),
                     "measured": float(measured)})
    return rows
