"""Exact Gromov-Hausdorff distances on finite spaces by branch and bound.

The distance is half the smallest distortion of ``R = f U g^-1`` over all map
pairs ``f: X -> Y``, ``g: Y -> X``. Assigning ``f(x) = y`` or ``g(y) = x``
commits the pair ``(x, y)`` to ``R``, and every later pair ``(x', y')`` must
keep ``||xx'| - |yy'||`` under the current limit. Domains are two boolean
matrices (``F[x, y]``: may ``f(x) = y``; ``G[y, x]``: may ``g(y) = x``), so one
commitment filters both with a single ``|X| x |Y|`` mask. For the continuous
distance the neighbours of an assigned point are further restricted to the
closed neighbourhood of its image.

The limit starts just below the incumbent and drops each time a better pair
is found; the first failed search proves optimality. A final pass with static
variable order and ascending values returns the lexicographically smallest
optimal ``(f, g)``.
"""
from __future__ import annotations

import itertools
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import ghc_lower_connectivity, lower_bounds
from .exceptions import BudgetExceeded, EpsilonTooLarge, SizeMismatch, TooLarge
from .metric import FiniteMetricSpace, check_metric_space, dist_spectrum, invariants
from .relations import MapPair, dis_map_pair, distortion_map
from .topology import CombinatorialSpace, as_combinatorial, is_admissible

DEFAULT_BUDGET = 1_000_000


def default_budget() -> int:
    return int(os.environ.get("GHDIST_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of an exact search.

    ``value`` is half the distortion of ``certificate``. When ``optimal`` is
    False the node budget ran out and ``value`` is only an upper bound.
    """

    value: float
    certificate: MapPair
    nodes_explored: int
    bound_used: str
    optimal: bool = True
    lower: float = 0.0

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "f": list(self.certificate.f),
            "g": list(self.certificate.g),
            "nodes": int(self.nodes_explored),
            "optimal": bool(self.optimal),
            "bound": self.bound_used,
            "lower": float(self.lower),
        }


class _OutOfBudget(Exception):
    pass


class _Found(Exception):
    pass


class _Engine:
    def __init__(self, DX, DY, adjX=None, adjY=None, budget=None, threads=1):
        self.DX = np.asarray(DX, dtype=float)
        self.DY = np.asarray(DY, dtype=float)
        self.nX, self.nY = len(self.DX), len(self.DY)
        self.continuous = adjX is not None
        if self.continuous:
            self.adjX, self.adjY = adjX, adjY
            self.nbX = adjX | np.eye(self.nX, dtype=bool)
            self.nbY = adjY | np.eye(self.nY, dtype=bool)
        self.budget = default_budget() if budget is None else int(budget)
        self.threads = max(1, int(threads))
        self.nodes = 0
        eccX, eccY = self.DX.max(axis=1), self.DY.max(axis=1)
        # try images of similar eccentricity first
        self.order_f = np.argsort(np.abs(eccX[:, None] - eccY[None, :]), axis=1, kind="stable")
        self.order_g = np.argsort(np.abs(eccY[:, None] - eccX[None, :]), axis=1, kind="stable")
        # MRV ties go to high-eccentricity points, f before g
        ecc = np.concatenate([eccX, eccY])
        self.rank = np.empty(self.nX + self.nY, dtype=int)
        self.rank[np.lexsort((np.arange(ecc.size), -ecc))] = np.arange(ecc.size)

    def _commit(self, F, G, side, v, a, limit):
        x, y = (v, a) if side == 0 else (a, v)
        ok = np.abs(self.DX[x][:, None] - self.DY[y][None, :]) <= limit
        F = F & ok
        G = G & ok.T
        if self.continuous:
            if side == 0:
                F[self.adjX[x]] &= self.nbY[y]
            else:
                G[self.adjY[y]] &= self.nbX[x]
        return F, G

    def _root(self, limit):
        F = np.ones((self.nX, self.nY), dtype=bool)
        G = np.ones((self.nY, self.nX), dtype=bool)
        return F, G, np.full(self.nX, -1), np.full(self.nY, -1)

    def _pick(self, F, G, af, ag, static):
        free_f = af < 0
        free_g = ag < 0
        if static:
            if free_f.any():
                return 0, int(np.argmax(free_f))
            if free_g.any():
                return 1, int(np.argmax(free_g))
            return None
        counts = np.concatenate([
            np.where(free_f, F.sum(axis=1), np.iinfo(np.int64).max),
            np.where(free_g, G.sum(axis=1), np.iinfo(np.int64).max),
        ])
        best = counts.min()
        if best == np.iinfo(np.int64).max:
            return None
        cand = np.flatnonzero(counts == best)
        k = int(cand[np.argmin(self.rank[cand])])
        return (0, k) if k < self.nX else (1, k - self.nX)

    def _values(self, F, G, side, v, static):
        dom = F[v] if side == 0 else G[v]
        if static:
            return np.flatnonzero(dom)
        order = self.order_f[v] if side == 0 else self.order_g[v]
        return order[dom[order]]

    def _viable(self, F, G, af, ag):
        return F[af < 0].any(axis=1).all() and G[ag < 0].any(axis=1).all()

    def _dfs(self, F, G, af, ag, limit, static, counter):
        counter.tick()
        choice = self._pick(F, G, af, ag, static)
        if choice is None:
            return af.copy(), ag.copy()
        side, v = choice
        assigned = af if side == 0 else ag
        for a in self._values(F, G, side, v, static):
            F2, G2 = self._commit(F, G, side, v, int(a), limit)
            assigned[v] = a
            if self._viable(F2, G2, af, ag):
                sol = self._dfs(F2, G2, af, ag, limit, static, counter)
                if sol is not None:
                    assigned[v] = -1
                    return sol
            assigned[v] = -1
        return None

    def _spend(self, n):
        self.nodes += n
        if self.nodes > self.budget:
            self.nodes = self.budget + 1
            raise _OutOfBudget

    def solve(self, limit, static=False):
        """Any map pair whose distortion is at most ``limit``, or None.

        With several threads the root branches run concurrently, each with its
        own node counter. Results and counts are then replayed in branch order,
        so the answer and ``nodes`` equal those of the sequential search.
        """
        F, G, af, ag = self._root(limit)
        left = self.budget - self.nodes
        if self.threads == 1 or static:
            counter = _Counter(left)
            try:
                return self._dfs(F, G, af, ag, limit, static, counter)
            finally:
                self._spend(counter.n)
        self._spend(1)
        side, v = self._pick(F, G, af, ag, False)
        values = list(self._values(F, G, side, v, False))
        first = [len(values)]
        lock = threading.Lock()

        def branch(i):
            counter = _Counter(left - 1, lambda: first[0] < i)
            af2, ag2 = af.copy(), ag.copy()
            assigned = af2 if side == 0 else ag2
            F2, G2 = self._commit(F, G, side, v, int(values[i]), limit)
            assigned[v] = values[i]
            if not self._viable(F2, G2, af2, ag2):
                return 0, None, False
            try:
                sol = self._dfs(F2, G2, af2, ag2, limit, False, counter)
            except _OutOfBudget:
                return counter.n, None, True
            except _Found:
                return counter.n, None, False
            if sol is not None:
                with lock:
                    first[0] = min(first[0], i)
            return counter.n, sol, False

        with ThreadPoolExecutor(self.threads) as pool:
            outcomes = list(pool.map(branch, range(len(values))))
        for n, sol, exhausted in outcomes:
            self._spend(n)
            if exhausted:
                raise _OutOfBudget
            if sol is not None:
                return sol
        return None


class _Counter:
    __slots__ = ("n", "cap", "cancelled")

    def __init__(self, cap, cancelled=None):
        self.n = 0
        self.cap = cap
        self.cancelled = cancelled

    def tick(self):
        self.n += 1
        if self.n > self.cap:
            raise _OutOfBudget
        if self.cancelled is not None and self.cancelled():
            raise _Found


def _coerce(X, continuous):
    if continuous:
        return as_combinatorial(X)
    return check_metric_space(X)


def _init_pair(X, Y, init, continuous):
    if init is None:
        return MapPair([0] * X.n, [0] * Y.n)
    p = init if isinstance(init, MapPair) else MapPair(*init)
    if len(p.f) != X.n or len(p.g) != Y.n:
        raise SizeMismatch("initial map pair does not match the spaces")
    if continuous and not (is_admissible(p.f, X, Y) and is_admissible(p.g, Y, X)):
        raise ValueError("initial map pair is not admissible")
    return p


def _minimize(X, Y, lower2, *, continuous, budget, threads, init, canonical):
    DX = np.asarray(X.dist, dtype=float)
    DY = np.asarray(Y.dist, dtype=float)
    Xf = FiniteMetricSpace(DX, check=False)
    Yf = FiniteMetricSpace(DY, check=False)
    if continuous:
        engine = _Engine(DX, DY, X.adjacency, Y.adjacency, budget, threads)
    else:
        engine = _Engine(DX, DY, budget=budget, threads=threads)

    best = _init_pair(X, Y, init, continuous)
    best_val = dis_map_pair(best, Xf, Yf)
    optimal = False
    try:
        while best_val > lower2:
            sol = engine.solve(np.nextafter(best_val, -np.inf))
            if sol is None:
                tag = "search"
                break
            best = MapPair(*sol)
            best_val = dis_map_pair(best, Xf, Yf)
        else:
            tag = "lower-bound"
        optimal = True
    except _OutOfBudget:
        tag = "budget"
    if optimal and canonical:
        try:
            sol = engine.solve(best_val, static=True)
            if sol is not None:
                best = MapPair(*sol)
        except _OutOfBudget:
            pass
    return DistanceResult(
        value=best_val / 2,
        certificate=best,
        nodes_explored=engine.nodes,
        bound_used=tag,
        optimal=optimal,
        lower=lower2 / 2,
    )


def _finish(result, strict):
    if strict and not result.optimal:
        raise BudgetExceeded(result)
    return result


def gh_exact(X, Y, *, budget=None, threads=1, init=None, canonical=True,
             strict=False) -> DistanceResult:
    """Gromov-Hausdorff distance between two finite metric spaces.

    Parameters
    ----------
    X, Y : FiniteMetricSpace or array-like
    budget : int, optional
        Node cap; defaults to ``$GHDIST_BUDGET`` or one million.
    threads : int, default=1
        Workers sharing the root branches. The returned value and, with
        ``canonical=True``, the certificate do not depend on it.
    init : MapPair, optional
        Starting incumbent.
    canonical : bool, default=True
        Re-scan at the optimum for the lexicographically smallest ``(f, g)``.
    strict : bool, default=False
        Raise :class:`BudgetExceeded` instead of returning a non-optimal result.
    """
    X, Y = _coerce(X, False), _coerce(Y, False)
    lower2 = 2 * lower_bounds(X.to_float(), Y.to_float()).lower
    res = _minimize(X, Y, lower2, continuous=False, budget=budget, threads=threads,
                    init=init, canonical=canonical)
    return _finish(res, strict)


def ghc_exact(Xc, Yc, *, budget=None, threads=1, init=None, canonical=True,
              strict=False) -> DistanceResult:
    """Continuous Gromov-Hausdorff distance between two combinatorial models.

    Same search as :func:`gh_exact` restricted to admissible map pairs and
    seeded with the connectivity lower bounds. Plain metric spaces are
    treated as edgeless models.
    """
    Xc, Yc = _coerce(Xc, True), _coerce(Yc, True)
    Xf = CombinatorialSpace(Xc.metric.to_float(), Xc.edges)
    Yf = CombinatorialSpace(Yc.metric.to_float(), Yc.edges)
    lower2 = 2 * max(lower_bounds(Xf.metric, Yf.metric).lower, ghc_lower_connectivity(Xf, Yf))
    res = _minimize(Xf, Yf, lower2, continuous=True, budget=budget, threads=threads,
                    init=init, canonical=canonical)
    return _finish(res, strict)


def _all_maps(n_from, n_to, Xc=None, Yc=None):
    M = np.array(list(itertools.product(range(n_to), repeat=n_from)), dtype=int)
    if Xc is not None:
        keep = [is_admissible(f, Xc, Yc) for f in M]
        M = M[np.asarray(keep, dtype=bool)]
    return M


def gh_bruteforce(X, Y, *, cap: int = 10**7, continuous: bool = False,
                  return_certificate: bool = False):
    """Exhaustive minimum over every map pair; a test oracle with no pruning.

    With ``continuous=True`` only admissible pairs of the two combinatorial
    models are enumerated. The certificate is the lexicographically smallest
    optimal ``(f, g)``.
    """
    if continuous:
        Xc, Yc = as_combinatorial(X), as_combinatorial(Y)
        DX, DY = np.asarray(Xc.dist, float), np.asarray(Yc.dist, float)
    else:
        Xc = Yc = None
        DX = np.asarray(check_metric_space(X).dist, float)
        DY = np.asarray(check_metric_space(Y).dist, float)
    nX, nY = len(DX), len(DY)
    if nY ** nX * nX ** nY > cap:
        raise TooLarge(f"{nY}^{nX} * {nX}^{nY} map pairs exceed the cap {cap}")
    Fs = _all_maps(nX, nY, Xc, Yc)
    Gs = _all_maps(nY, nX, Yc, Xc)
    dis_f = np.abs(DX[None] - DY[Fs[:, :, None], Fs[:, None, :]]).max(axis=(1, 2))
    dis_g = np.abs(DY[None] - DX[Gs[:, :, None], Gs[:, None, :]]).max(axis=(1, 2))
    B = DX[:, Gs].transpose(1, 0, 2)  # B[g, x, y] = |x g(y)|
    best, arg = np.inf, None
    chunk = max(1, 2**22 // max(1, len(Gs) * nX * nY))
    for start in range(0, len(Fs), chunk):
        Fc = Fs[start:start + chunk]
        A = DY[Fc]  # A[f, x, y] = |f(x) y|
        codis = np.abs(B[None] - A[:, None]).max(axis=(2, 3))
        total = np.maximum(np.maximum(dis_f[start:start + chunk, None], dis_g[None, :]), codis)
        k = int(np.argmin(total))
        if total.flat[k] < best:
            best = total.flat[k]
            i, j = divmod(k, len(Gs))
            arg = (Fs[start + i], Gs[j])
    value = best / 2
    if return_certificate:
        return value, MapPair(*arg)
    return value


def find_eps_isometry(X, Y, eps: float, *, budget=None) -> MapPair | None:
    """A map pair with distortion at most ``eps``, or None if there is none.

    Requires ``eps`` below the smallest non-zero distance of both spaces. Then
    any such pair consists of mutually inverse bijections.
    """
    X, Y = check_metric_space(X).to_float(), check_metric_space(Y).to_float()
    sX, sY = invariants(X).s_val, invariants(Y).s_val
    if eps >= sX:
        raise EpsilonTooLarge(f"eps={eps} must be below s(X)={sX}")
    if eps >= sY:
        raise EpsilonTooLarge(f"eps={eps} must be below s(Y)={sY}")
    engine = _Engine(X.dist, Y.dist, budget=budget)
    try:
        sol = engine.solve(eps)
    except _OutOfBudget as exc:
        raise BudgetExceeded(DistanceResult(np.inf, MapPair([0] * X.n, [0] * Y.n),
                                            engine.nodes, "budget", False)) from exc
    if sol is None:
        return None
    p = MapPair(*sol)
    assert all(p.g[p.f[x]] == x for x in range(X.n))
    assert all(p.f[p.g[y]] == y for y in range(Y.n))
    return p


@dataclass(frozen=True)
class RigidityCheck:
    holds: bool
    reason: str

    def __bool__(self):
        return self.holds


def spectrum_gap(*spaces) -> float:
    """Smallest gap between distinct values of the joint distance spectrum."""
    vals = np.unique(np.concatenate([dist_spectrum(check_metric_space(S)) for S in spaces]))
    if vals.size < 2:
        return np.inf
    return np.diff(vals).min()


def check_isometry_rigidity(X, p: MapPair, eps: float, Y=None, tol: float = 1e-9) -> RigidityCheck:
    """Check that an ``eps``-isometry ``p.f`` preserves every distance exactly.

    Valid only when ``eps`` is below the smallest gap of the joint spectrum of
    ``X`` and ``Y`` (``Y`` defaults to ``X``); otherwise the check is refused.
    """
    X = check_metric_space(X)
    Y = X if Y is None else check_metric_space(Y)
    gap = spectrum_gap(X, Y)
    if eps >= gap:
        return RigidityCheck(False, f"eps={eps} is not below the spectrum gap {gap}")
    dis = distortion_map(p.f, X, Y)
    if dis > eps:
        return RigidityCheck(True, f"dis f={dis} exceeds eps; nothing to check")
    f = np.asarray(p.f)
    err = np.abs(np.asarray(X.dist, float) - np.asarray(Y.dist, float)[np.ix_(f, f)]).max()
    if err <= tol:
        return RigidityCheck(True, "f preserves every distance")
    return RigidityCheck(False, f"f changes some distance by {err}")
