"""Cheap lower and upper bounds on the (continuous) Gromov-Hausdorff distance.

All values are reported in distance units, i.e. already halved. Every bound
is half of some ``|a - b|`` with ``a`` a distance of one space and ``b`` a
distance of the other, so the search can compare them exactly against
distortions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import ModelHasEdges, SizeMismatch
from .metric import FiniteMetricSpace, check_metric_space, dist_spectrum, hausdorff, invariants
from .relations import MapPair, dis_map_pair
from .topology import (
    as_combinatorial,
    components,
    is_incomparable,
    is_totally_disconnected,
)


class Bound(NamedTuple):
    name: str
    value: float
    kind: str  # "lower", "upper" or "info"


@dataclass
class BoundReport:
    """Aggregated bounds with the provenance of each contribution."""

    lower: float
    upper: float
    provenance: list = field(default_factory=list)

    @classmethod
    def from_bounds(cls, bounds) -> "BoundReport":
        bounds = list(bounds)
        lower = max(b.value for b in bounds if b.kind == "lower")
        upper = min(b.value for b in bounds if b.kind == "upper")
        return cls(lower, upper, bounds)

    def to_dict(self) -> dict:
        return {
            "lower": float(self.lower),
            "upper": float(self.upper),
            "provenance": [
                {"name": b.name, "value": float(b.value), "kind": b.kind}
                for b in self.provenance
            ],
        }


def spectrum_hausdorff(X, Y) -> float:
    """Hausdorff distance between the distance spectra, as subsets of the line."""
    sx, sy = dist_spectrum(X), dist_spectrum(Y)
    line = np.unique(np.concatenate([sx, sy]))
    D = np.abs(line[:, None] - line[None, :])
    L = FiniteMetricSpace(D, check=False)
    return hausdorff(L, np.searchsorted(line, sx), np.searchsorted(line, sy))


def _separation(s_small, s_big):
    # s(Y) > s(X) forces 2 d_GH >= min{s(X), s(Y) - s(X)}
    if s_big > s_small:
        return min(s_small, s_big - s_small)
    return 0 * s_small


def upper_bound_diam(X, Y) -> float:
    """Half the larger diameter; bounds both the plain and continuous distance."""
    return max(check_metric_space(X).dist.max(), check_metric_space(Y).dist.max()) / 2


def _metric_bounds(X, Y) -> list[Bound]:
    iX, iY = invariants(X), invariants(Y)
    gap = spectrum_hausdorff(X, Y)
    out = [
        Bound("diameter_gap", abs(iX.diam - iY.diam) / 2, "lower"),
        Bound("spectrum_hausdorff", gap / 2, "lower"),
        Bound("separation", max(_separation(iX.s_val, iY.s_val),
                                _separation(iY.s_val, iX.s_val)) / 2, "lower"),
        Bound("half_max_diameter", upper_bound_diam(X, Y), "upper"),
    ]
    # 2 s(X) < s(Y) or s(Y) - s(X) <= d_H(spectra): no GH bound follows, kept for the record
    holds = all(
        2 * a < b or b - a <= gap
        for a, b in ((iX.s_val, iY.s_val), (iY.s_val, iX.s_val))
    )
    out.append(Bound("separation_spectrum_check", 1.0 if holds else 0.0, "info"))
    return out


def lower_bounds(X, Y) -> BoundReport:
    """Best cheap lower bound on ``d_GH(X, Y)`` together with the diameter upper bound."""
    return BoundReport.from_bounds(_metric_bounds(check_metric_space(X), check_metric_space(Y)))


def _component_diameter_bound(Ac, Bc) -> float:
    # an admissible map sends each component into one component of the target
    biggest = max(c.diam for c in components(Bc))
    gaps = [c.diam - biggest for c in components(Ac)]
    return max(0 * biggest, max(gaps))


def _component_codistortion_bound(Ac, Bc) -> float:
    # a connected domain lands inside one target component C, so some target
    # point stays at distance >= |y0 C| from the image
    comps = components(Bc)
    if len(components(Ac)) != 1 or len(comps) < 2:
        return 0 * Bc.dist[0, 0]
    best = None
    for c in comps:
        far = Bc.dist[:, list(c.points)].min(axis=1).max()
        best = far if best is None else min(best, far)
    return best


def _incomparable_bound(Ac, Bc) -> float:
    if not is_incomparable(Ac, Bc):
        return 0 * Ac.dist[0, 0]
    iA, iB = invariants(Ac.metric), invariants(Bc.metric)
    return max(iA.diam, iA.chebyshev_R, iB.chebyshev_R)


def _topological_bounds(Xc, Yc) -> list[Bound]:
    out = []
    for tag, (A, B) in (("xy", (Xc, Yc)), ("yx", (Yc, Xc))):
        out.append(Bound(f"component_diameter_{tag}", _component_diameter_bound(A, B) / 2, "lower"))
        out.append(Bound(f"component_codistortion_{tag}",
                         _component_codistortion_bound(A, B) / 2, "lower"))
        out.append(Bound(f"incomparable_{tag}", _incomparable_bound(A, B) / 2, "lower"))
    return out


def ghc_lower_connectivity(Xc, Yc) -> float:
    """Connectivity obstruction to a small continuous distance.

    Combines, symmetrically in the two arguments:

    * a component ``A`` mapped into a target whose components are all smaller
      costs at least ``diam A - max diam``; against an edgeless target this is
      the largest component diameter;
    * a connected domain misses every target component but one, which forces
      a codistortion of at least the smallest ``max |y0 C|``;
    * for an incomparable pair, ``max{diam X, R(X), R(Y)}``.
    """
    Xc, Yc = as_combinatorial(Xc), as_combinatorial(Yc)
    return max(b.value for b in _topological_bounds(Xc, Yc))


def ghc_bounds(Xc, Yc) -> BoundReport:
    """Metric and connectivity lower bounds for the continuous distance."""
    Xc, Yc = as_combinatorial(Xc), as_combinatorial(Yc)
    return BoundReport.from_bounds(
        _metric_bounds(Xc.metric, Yc.metric) + _topological_bounds(Xc, Yc)
    )


def partition_map_pair(Xc, Y, A) -> MapPair:
    """Inclusion of ``A`` into ``Y`` and the nearest-representative retraction.

    Each point of ``Y`` is sent to its closest point of ``A`` (lowest index on
    ties), so the cells of the retraction partition ``Y`` into pieces lying in
    balls of radius ``d_H(A, Y)`` around their representatives.
    """
    Xc = as_combinatorial(Xc)
    Y = check_metric_space(Y)
    if not is_totally_disconnected(Xc):
        raise ModelHasEdges("the model of A must be edgeless")
    A = [int(a) for a in A]
    if len(A) != Xc.n or len(set(A)) != len(A):
        raise SizeMismatch(f"A must list {Xc.n} distinct points of Y")
    idx = np.asarray(A)
    g = Y.dist[:, idx].argmin(axis=1)
    return MapPair(A, g)


def ghc_upper_partition(Xc, Y, A) -> float:
    """Upper bound on ``d^c_GH(A, Y)`` from an explicit cluster-representative map pair.

    ``Xc`` is the edgeless model of the subspace ``A`` of ``Y`` (points listed
    in ``A`` order). The result never exceeds ``d_H(A, Y)``.
    """
    p = partition_map_pair(Xc, Y, A)
    return dis_map_pair(p, as_combinatorial(Xc), check_metric_space(Y)) / 2
