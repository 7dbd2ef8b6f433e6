"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import time
from fractions import Fraction

import numpy as np
import pytest

from ghdist import (
    CombinatorialSpace,
    InterpolantFamily,
    build_interval_stack,
    build_omega_space,
    build_triode,
    corr_from_maps,
    dis_map_pair,
    distortion_map,
    distortion_rel,
    find_eps_isometry,
    from_points,
    gh_bruteforce,
    gh_exact,
    ghc_exact,
    ghc_lower_connectivity,
    hausdorff,
    interpolate,
    invariants,
    lower_bounds,
    MapPair,
    one_point,
    path_space,
    scale,
    triode_seed,
    upper_bound_diam,
)
from helpers import random_metric, random_model

REPORT: list[str] = []

pytestmark = pytest.mark.acceptance

# tolerances pinned by the criteria
ONE_POINT_TOL = 1e-12
TRIANGLE_SLACK = 1e-9
SANDWICH_TOL = 1e-9
GEODESIC_TOL = 1e-9
SCALING_TOL = 1e-12


def _gate(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} ({detail})"
    REPORT.append(line)
    print(line)
    assert ok, line


def _pairs(seed, count, n_max=4):
    rng = np.random.default_rng(seed)
    return [(random_model(rng, n_max), random_model(rng, n_max)) for _ in range(count)]


def test_01_map_pair_distortion_identity():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(500):
        X, Y = random_metric(rng, 5), random_metric(rng, 5)
        p = MapPair(rng.integers(Y.n, size=X.n), rng.integers(X.n, size=Y.n))
        if dis_map_pair(p, X, Y) != distortion_rel(corr_from_maps(p), X, Y):
            mismatches += 1
    elapsed = time.perf_counter() - t0
    _gate(1, "dis(f, g) equals dis of the induced correspondence",
          mismatches == 0 and elapsed < 5.0,
          f"500 pairs, {mismatches} mismatches, {elapsed:.2f}s < 5s")


def test_02_one_point_law():
    rng = np.random.default_rng(2)
    worst = 0.0
    P = one_point()
    Pc = CombinatorialSpace.edgeless(P)
    for _ in range(100):
        Xc = random_model(rng, 6)
        half = invariants(Xc.metric).diam / 2
        worst = max(worst,
                    abs(gh_exact(P, Xc.metric, strict=True).value - half),
                    abs(ghc_exact(Pc, Xc, strict=True).value - half))
    _gate(2, "one-point space sits at half the diameter", worst <= ONE_POINT_TOL,
          f"100 spaces up to 6 points, max error {worst:.3g} <= {ONE_POINT_TOL}")


def test_03_oracle_equivalence():
    t0 = time.perf_counter()
    bad = 0
    for Xc, Yc in _pairs(3, 200):
        if gh_exact(Xc.metric, Yc.metric, strict=True).value != gh_bruteforce(Xc.metric, Yc.metric):
            bad += 1
    elapsed = time.perf_counter() - t0
    _gate(3, "branch and bound agrees with exhaustive enumeration",
          bad == 0 and elapsed < 60.0, f"200 pairs, {bad} differ, {elapsed:.2f}s < 60s")


def test_04_ghc_triangle_inequality():
    rng = np.random.default_rng(4)
    worst = -np.inf
    for _ in range(100):
        X, Y, Z = (random_model(rng, 4) for _ in range(3))
        xy = ghc_exact(X, Y, strict=True).value
        yz = ghc_exact(Y, Z, strict=True).value
        xz = ghc_exact(X, Z, strict=True).value
        worst = max(worst, xz - xy - yz)
    _gate(4, "continuous distance satisfies the triangle inequality", worst <= TRIANGLE_SLACK,
          f"100 triples, max excess {worst:.3g} <= {TRIANGLE_SLACK}")


def test_05_bound_sandwich():
    violations = 0
    for Xc, Yc in _pairs(3, 200):
        lo = lower_bounds(Xc.metric, Yc.metric).lower
        gh = gh_exact(Xc.metric, Yc.metric, strict=True).value
        ghc = ghc_exact(Xc, Yc, strict=True).value
        hi = upper_bound_diam(Xc.metric, Yc.metric)
        ok = (lo <= gh + SANDWICH_TOL and gh <= ghc + SANDWICH_TOL and ghc <= hi + SANDWICH_TOL)
        violations += not ok
    _gate(5, "lower <= gh <= ghc <= max diam / 2", violations == 0,
          f"200 pairs, {violations} violations, tol {SANDWICH_TOL}")


def test_06_connectedness_gap():
    X = from_points([i / 10 for i in range(11)])
    gh = gh_exact(X, X, strict=True).value
    ghc = ghc_exact(CombinatorialSpace.edgeless(X), path_space(X), strict=True).value
    _gate(6, "edgeless samples are gh-close but ghc-far from the sampled path",
          gh <= 0.05 and ghc == 0.5, f"gh = {gh} <= 0.05, ghc = {ghc} == 0.5")


def test_07_omega_fixture():
    fx = build_omega_space(8, exact=True)
    X, Y = fx.spaces["X"].metric, fx.spaces["Y"].metric
    failures = []
    for m in range(1, 9):
        eps = Fraction(1, 2 * m)
        if distortion_map(fx.maps[f"h_{m}"].f, X, Y) != eps:
            failures.append(f"dis h_{m}")
        p = find_eps_isometry(X, Y, eps)
        if p is None:
            failures.append(f"no pair at m={m}")
            continue
        bijective = sorted(p.f) == list(range(Y.n)) and len(p.f) == len(p.g)
        if not (bijective and all(p.g[p.f[x]] == x for x in range(X.n))):
            failures.append(f"pair at m={m} is not a bijection with g f = id")
    _gate(7, "omega fixture maps are exact 1/(2m)-isometries with inverse pairs",
          not failures, f"N=8, m=1..8, failures: {failures or 'none'}")


def test_08_interval_stack():
    details = []
    ok = True
    for n in (2, 3, 4):
        fx = build_interval_stack(5, n)
        Z = fx.spaces["Z"].metric
        dh = hausdorff(Z, fx.subsets["X_inf"], fx.subsets["X_n"])
        lb = ghc_lower_connectivity(fx.spaces["X_inf"], fx.spaces["X_n"])
        ok &= dh == 2.0 ** -(n + 1) and lb == 0.5
        details.append(f"n={n}: d_H={dh}, lower={lb}")
    _gate(8, "interval stack Hausdorff values and connectivity bound", ok, "; ".join(details))


def test_09_triode():
    grid = 24
    details = []
    ok = True
    for n in (2, 3, 4):
        fx = build_triode(n, grid)
        X = fx.spaces["X"]
        dh = hausdorff(X.metric, range(X.n), fx.subsets["X_n"])
        res = ghc_exact(fx.spaces["X_n"], X, budget=2_000)
        target = (1 - 1 / n) / 2
        ok &= dh == 1 / (2 * n) and res.lower >= target and res.value >= res.lower
        details.append(f"n={n}: d_H={dh:.6g}, certified ghc >= {res.lower:.6g} >= {target:.6g}")
    A = build_triode(3, grid).spaces["X_n"]
    B = build_triode(2, grid).spaces["X_n"]
    res = ghc_exact(A, B, init=triode_seed(3, 2, grid), budget=20_000)
    limit = 1 / 6 + 1 / grid
    ok &= res.value <= limit
    details.append(f"ghc(X_3, X_2) <= {res.value:.6g} <= {limit:.6g}")
    _gate(9, "triode Hausdorff values, Cauchy bound and connected-limit gap", ok, "; ".join(details))


def test_10_geodesic():
    rng = np.random.default_rng(10)
    ts = (0.0, 0.25, 0.5, 0.75, 1.0)
    worst_lip, worst_mid = -np.inf, 0.0
    for _ in range(50):
        X, Y = random_metric(rng, 4), random_metric(rng, 4)
        fam = InterpolantFamily.optimal(X, Y)
        R = {t: interpolate(fam, t) for t in ts}
        d = {}
        for i, t in enumerate(ts):
            for s in ts[i + 1:]:
                d[t, s] = gh_exact(R[t], R[s], strict=True).value
                worst_lip = max(worst_lip, d[t, s] - abs(t - s) * fam.disR / 2)
        worst_mid = max(worst_mid, abs(d[0.0, 0.5] + d[0.5, 1.0] - d[0.0, 1.0]))
    ok = worst_lip <= GEODESIC_TOL and worst_mid <= GEODESIC_TOL
    _gate(10, "interpolants are Lipschitz in t and additive at the midpoint", ok,
          f"50 pairs, max Lipschitz excess {worst_lip:.3g}, max midpoint defect {worst_mid:.3g}, "
          f"tol {GEODESIC_TOL}")


def test_11_scaling():
    rng = np.random.default_rng(11)
    factors = (0.0, 0.5, 1.0, 2.0)
    worst = 0.0
    for _ in range(50):
        X = random_metric(rng, 4)
        diam = invariants(X).diam
        for lam in factors:
            for mu in factors:
                got = gh_exact(scale(X, lam), scale(X, mu), strict=True).value
                worst = max(worst, abs(got - abs(lam - mu) * diam / 2))
    _gate(11, "scaled copies sit at half the diameter times the scale gap", worst <= SCALING_TOL,
          f"50 spaces, 16 scale pairs each, max error {worst:.3g} <= {SCALING_TOL}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    raise SystemExit(1 if failed else 0)
