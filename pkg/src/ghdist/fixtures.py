"""Deterministic constructors for the worked examples, with reference values.

Every reference value is stored next to a short note and is recomputed by the
library in the test-suite; nothing here is trusted without recomputation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .exceptions import BadGrid, BadParameters
from .metric import FiniteMetricSpace, from_points, subspace
from .relations import MapPair, codistortion, distortion_map
from .topology import CombinatorialSpace, is_admissible, path_space


class Reference(NamedTuple):
    value: float
    note: str


@dataclass
class Fixture:
    name: str
    spaces: dict
    maps: dict = field(default_factory=dict)
    reference_values: dict = field(default_factory=dict)
    subsets: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)


# ---------------------------------------------------------------- omega space

def _omega_dist(points, exact):
    one = Fraction(1) if exact else 1.0
    n = len(points)
    D = [[0 * one] * n for _ in range(n)]
    for i, a in enumerate(points):
        for j, b in enumerate(points):
            if i == j:
                continue
            if a != 0 and b != 0:
                D[i][j] = 2 * one
            else:
                other = b if a == 0 else a
                D[i][j] = one if other == "inf" else one + one / (2 * other)
    return D if exact else np.array(D)


def omega_map(m: int, N: int) -> tuple:
    """Index array of the bijection ``X_N -> Y_{N+1}`` that is a ``1/(2m)``-isometry.

    Points ``1..m-1`` stay, ``m..N`` shift up by one and the point at
    infinity lands on ``m``.
    """
    if not 1 <= m <= N:
        raise BadParameters(f"need 1 <= m <= N, got m={m}, N={N}")
    h = [0]
    h += [x if x < m else x + 1 for x in range(1, N + 1)]
    h.append(m)
    return tuple(h)


def build_omega_space(N: int = 8, exact: bool = False) -> Fixture:
    """``X_N = {0, 1..N, inf}`` and its clopen subset ``Y_{N+1} = {0, 1..N+1}``.

    Distinct non-zero points are 2 apart, ``|0 n| = 1 + 1/(2n)`` and
    ``|0 inf| = 1``. Both models are edgeless. With ``exact=True`` the
    distances are :class:`~fractions.Fraction` values.
    """
    if N < 1:
        raise BadParameters("N must be at least 1")
    xs = [0] + list(range(1, N + 1)) + ["inf"]
    ys = [0] + list(range(1, N + 2))
    X = FiniteMetricSpace(_omega_dist(xs, exact), [str(p) for p in xs])
    Y = FiniteMetricSpace(_omega_dist(ys, exact), [str(p) for p in ys])
    maps = {}
    one = Fraction(1) if exact else 1.0
    refs = {
        "diam_X": Reference(2 * one, "distinct non-zero points are 2 apart"),
        "diam_Y": Reference(2 * one, "distinct non-zero points are 2 apart"),
        "s_X": Reference(one, "realised by |0 inf|"),
        "s_Y": Reference(one + one / (2 * (N + 1)), "realised by |0 (N+1)|"),
    }
    for m in range(1, N + 1):
        h = omega_map(m, N)
        inv = [0] * len(h)
        for i, y in enumerate(h):
            inv[y] = i
        maps[f"h_{m}"] = MapPair(h, inv)
        refs[f"dis_h_{m}"] = Reference(
            Fraction(1, 2 * m) if exact else 1 / (2 * m), f"h_{m} is a 1/(2m)-isometry")
    return Fixture(
        name="omega",
        spaces={"X": CombinatorialSpace.edgeless(X), "Y": CombinatorialSpace.edgeless(Y)},
        maps=maps,
        reference_values=refs,
        params={"N": N, "exact": exact},
    )


# ------------------------------------------------------------- shifted pairs

def build_shifted_pairs(N: int = 8, exact: bool = False) -> Fixture:
    """The 2N points ``n +- 1/(6n)``, ``n = 1..N``, on the line; edgeless."""
    if N < 1:
        raise BadParameters("N must be at least 1")
    pts = []
    for n in range(1, N + 1):
        d = Fraction(1, 6 * n)
        pts += [n - d, n + d]
    if exact:
        D = [[abs(a - b) for b in pts] for a in pts]
        X = FiniteMetricSpace(D)
    else:
        X = from_points([float(p) for p in pts], "l2")
    return Fixture(
        name="shifted",
        spaces={"X": CombinatorialSpace.edgeless(X)},
        reference_values={
            "s_X": Reference(Fraction(1, 3 * N) if exact else 1 / (3 * N),
                             "the tightest pair is the N-th one"),
        },
        params={"N": N, "exact": exact},
    )


# ------------------------------------------------------------ interval stack

def build_interval_stack(K: int = 5, n: int = 2, grid_exp: int | None = None) -> Fixture:
    """``K`` unit intervals at mutual distance 1, sampled at step ``2**-grid_exp``.

    ``X_inf`` keeps the dyadic points ``i/2**k`` of the k-th interval and is
    edgeless. ``X_n`` keeps those for ``k < n`` and every sample of the
    intervals ``k >= n``, joined by path edges. Both are subsets of the
    sampled ambient ``Z`` (see ``subsets``).
    """
    if grid_exp is None:
        grid_exp = K + 2
    if K < 1 or not 1 <= n <= K or grid_exp < K + 2:
        raise BadParameters(f"need 1 <= n <= K and grid_exp >= K + 2, got K={K}, n={n}, "
                            f"grid_exp={grid_exp}")
    G = 2 ** grid_exp
    per = G + 1
    pos = np.tile(np.arange(per), K)
    block = np.repeat(np.arange(K), per)
    D = np.where(block[:, None] == block[None, :],
                 np.abs(pos[:, None] - pos[None, :]) / G, 1.0)
    labels = [f"I{k + 1}:{i}/{G}" for k in range(K) for i in range(per)]
    Z = FiniteMetricSpace(D, labels, check=False)

    def dyadic(k):  # S_k inside the k-th block (k is 1-based)
        step = G // 2 ** k
        return [(k - 1) * per + i for i in range(0, per, step)]

    x_inf = sorted(i for k in range(1, K + 1) for i in dyadic(k))
    x_n = sorted([i for k in range(1, n) for i in dyadic(k)]
                 + [(k - 1) * per + i for k in range(n, K + 1) for i in range(per)])
    where = {a: t for t, a in enumerate(x_n)}
    edges = [(where[a], where[a + 1]) for a in x_n
             if a + 1 in where and block[a] == block[a + 1] and block[a] >= n - 1]
    spaces = {
        "Z": CombinatorialSpace.edgeless(Z),
        "X_inf": CombinatorialSpace.edgeless(subspace(Z, x_inf)),
        "X_n": CombinatorialSpace(subspace(Z, x_n), edges),
    }
    return Fixture(
        name="interval_stack",
        spaces=spaces,
        subsets={"X_inf": tuple(x_inf), "X_n": tuple(x_n)},
        reference_values={
            "hausdorff": Reference(2.0 ** -(n + 1), "Hausdorff distance 2^-(n+1) in Z"),
            "ghc_lower": Reference(0.5, "X_n has a component of diameter 1; X_inf is edgeless"),
        },
        params={"K": K, "n": n, "grid_exp": grid_exp},
    )


# -------------------------------------------------------------------- triode

def _triode_layout(grid: int, cut: int):
    # (arm, k): arm "J" with k in [-grid, grid], arm "I" with k in [cut, grid], k >= 1
    pts = [("J", j) for j in range(-grid, grid + 1)]
    pts += [("I", i) for i in range(max(cut, 1), grid + 1)]
    return pts


def _triode_space(grid: int, cut: int) -> CombinatorialSpace:
    pts = _triode_layout(grid, cut)
    arm = np.array([a == "I" for a, _ in pts])
    k = np.array([k for _, k in pts])
    same = arm[:, None] == arm[None, :]
    steps = np.where(same, np.abs(k[:, None] - k[None, :]), np.abs(k[:, None]) + np.abs(k[None, :]))
    D = steps / grid
    index = {p: t for t, p in enumerate(pts)}
    edges = []
    for t, (a, kk) in enumerate(pts):
        nxt = (a, kk + 1)
        if nxt in index:
            edges.append((t, index[nxt]))
    if ("I", 1) in index:
        edges.append((index[("J", 0)], index[("I", 1)]))
    labels = [f"{a}{kk}" for a, kk in pts]
    return CombinatorialSpace(FiniteMetricSpace(D, labels, check=False), edges)


def build_triode(n: int = 2, grid: int = 24) -> Fixture:
    """Sampled triode ``X = J u I`` with its intrinsic metric, and ``X_n = J u I_n``.

    ``J`` is the vertical segment of length 2 and ``I`` the unit horizontal arm
    attached at the middle of ``J``. ``X_n`` drops the samples of ``I`` closer
    than ``1/n`` to the junction, which splits it into two components.
    Consecutive samples are joined by edges.
    """
    if n < 1 or grid < 1 or grid % (2 * n):
        raise BadGrid(f"grid={grid} must be a positive multiple of 2n={2 * n}")
    X = _triode_space(grid, 1)
    Xn = _triode_space(grid, grid // n)
    full = {p: t for t, p in enumerate(_triode_layout(grid, 1))}
    sub = tuple(full[p] for p in _triode_layout(grid, grid // n))
    return Fixture(
        name="triode",
        spaces={"X": X, "X_n": Xn},
        subsets={"X_n": sub},
        reference_values={
            "hausdorff": Reference(1 / (2 * n), "d_H(X, X_n) = 1/(2n)"),
            "diam_J": Reference(2.0, "component J of X_n"),
            "diam_I_n": Reference(1 - 1 / n, "component I_n of X_n"),
        },
        params={"n": n, "grid": grid},
    )


def triode_seed(m: int, n: int, grid: int = 24) -> MapPair:
    """Admissible map pair between the ``X_m`` and ``X_n`` models, ``m > n``.

    ``f`` fixes ``J`` and squeezes ``I_m`` affinely onto ``I_n`` (slope below
    one, so consecutive samples stay adjacent or merge); ``g`` is the
    inclusion ``X_n -> X_m``.
    """
    if m <= n:
        raise BadParameters("need m > n")
    Xm = _triode_layout(grid, grid // m)
    Xn = _triode_layout(grid, grid // n)
    idx_m = {p: t for t, p in enumerate(Xm)}
    idx_n = {p: t for t, p in enumerate(Xn)}
    lo_m, lo_n = max(grid // m, 1), max(grid // n, 1)
    f = []
    for arm, k in Xm:
        if arm == "J":
            f.append(idx_n[("J", k)])
        else:
            y = lo_n + (k - lo_m) * (grid - lo_n) / (grid - lo_m)
            f.append(idx_n[("I", int(np.floor(y + 0.5)))])
    g = [idx_m[p] for p in Xn]
    p = MapPair(f, g)
    A, B = _triode_space(grid, grid // m), _triode_space(grid, grid // n)
    if not (is_admissible(p.f, A, B) and is_admissible(p.g, B, A)):
        raise BadParameters("seed maps are not admissible at this grid")
    return p


# ------------------------------------------------------------ witness checks

def _check(name, value, bound, relation, note):
    value, bound = float(value), float(bound)
    holds = {
        "<=": value <= bound + 1e-9,
        ">=": value >= bound - 1e-9,
        "==": abs(value - bound) <= 1e-9,
    }[relation]
    return {"name": name, "value": value, "bound": bound, "relation": relation,
            "holds": bool(holds), "note": note}


def build_counterexample_checks(budget: int | None = None, seed: int = 0) -> list[dict]:
    """Finite witnesses behind the incompleteness arguments.

    Returns one record per check with the computed value, the bound it is held
    against, the relation and whether it holds.
    """
    from .bounds import _component_diameter_bound, ghc_lower_connectivity
    from .search import gh_exact, ghc_exact

    rng = np.random.default_rng(seed)
    out = []

    g4 = from_points([i / 4 for i in range(5)])
    g8 = from_points([i / 8 for i in range(9)])
    out.append(_check("uniform_grids_4_8", gh_exact(g4, g8, budget=budget).value, 1 / 8, "<=",
                      "grids i/4 and i/8 are close in d_GH"))

    interval = path_space(g8)
    sub = subspace(g8, range(0, 9, 2))
    res = ghc_exact(CombinatorialSpace.edgeless(sub), interval, budget=budget)
    out.append(_check("grid_vs_connected_interval", res.value, 0.5, "==",
                      "an edgeless grid stays 1/2 away from the connected interval"))

    T = build_triode(2, 8)
    X, X2 = T.spaces["X"], T.spaces["X_n"]
    margin = np.inf
    for _ in range(200):
        f = rng.integers(X2.n, size=X.n)
        g = rng.integers(X.n, size=X2.n)
        floor = X2.dist[:, np.unique(f)].min(axis=1).max()
        margin = min(margin, codistortion(MapPair(f, g), X, X2) - floor)
    out.append(_check("codistortion_floor", margin, 0.0, ">=",
                      "codis(f, g) >= |y0 f(X)| for random map pairs"))

    margin = np.inf
    for _ in range(200):
        f = rng.integers(X2.n, size=X.n)
        A = rng.choice(X.n, size=int(rng.integers(1, X.n + 1)), replace=False)
        img = np.unique(f[A])
        gap = abs(X2.dist[np.ix_(img, img)].max() - X.dist[np.ix_(A, A)].max())
        margin = min(margin, distortion_map(f, X, X2) - gap)
    out.append(_check("diameter_distortion", margin, 0.0, ">=",
                      "dis f >= |diam f(A) - diam A| for random maps and subsets"))

    for n in (2, 3, 4):
        T = build_triode(n, 24)
        lb = ghc_lower_connectivity(T.spaces["X_n"], T.spaces["X"])
        out.append(_check(f"triode_connected_limit_n{n}", lb, (1 - 1 / n) / 2, ">=",
                          "connected triode vs two-component X_n"))

    T = build_triode(2, 24)
    X = T.spaces["X"]
    junction = X.labels.index("J0")
    punctured = [i for i in range(X.n) if i != junction]
    Xp = CombinatorialSpace(subspace(X.metric, punctured),
                            [(punctured.index(a), punctured.index(b))
                             for a, b in X.edges if junction not in (a, b)])
    lb = _component_diameter_bound(T.spaces["X_n"], Xp)
    out.append(_check("triode_punctured_at_junction", lb, 1.0, ">=",
                      "J cannot fit into one of the three arms left after removing the junction"))
    return out
