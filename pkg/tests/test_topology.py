import numpy as np
import pytest
from hypothesis import given, settings

from ghdist import (
    CombinatorialSpace,
    build_interval_stack,
    build_triode,
    components,
    eps_graph,
    from_points,
    gh_exact,
    ghc_exact,
    is_admissible,
    is_connected,
    is_incomparable,
    is_totally_disconnected,
    one_point,
    path_space,
    subspace,
)
from ghdist.search import _all_maps
from strategies import models


def test_model_validation():
    X = from_points([0, 1, 2])
    with pytest.raises(ValueError):
        CombinatorialSpace(X, [(1, 1)])
    with pytest.raises(IndexError):
        CombinatorialSpace(X, [(0, 3)])
    Xc = CombinatorialSpace(X, [(1, 0), (0, 1)])
    assert Xc.edges == ((0, 1),)
    with pytest.raises(AttributeError):
        Xc.edges = ()


def test_components_examples():
    X = from_points([0, 1, 2])
    assert len(components(CombinatorialSpace.edgeless(X))) == 3
    assert len(components(path_space(X))) == 1
    fx = build_interval_stack(5, 3)
    comps = components(fx.spaces["X_n"])
    big = [c for c in comps if len(c.points) > 1]
    assert len(big) == 3 and all(c.diam == 1 for c in big)
    assert all(len(c.points) == 1 for c in comps if c not in big)


def test_triode_components():
    for n in (2, 3, 4):
        comps = components(build_triode(n, 24).spaces["X_n"])
        assert sorted(c.diam for c in comps) == pytest.approx([1 - 1 / n, 2], abs=1e-12)
    assert is_connected(build_triode(2, 24).spaces["X"])


def test_eps_graph_examples():
    X = from_points([0, 0.5, 1])
    assert is_totally_disconnected(eps_graph(X, 0.4))
    assert eps_graph(X, 1).edges == ((0, 1), (0, 2), (1, 2))
    assert eps_graph(X, 0.5).edges == path_space(X).edges


def test_is_admissible_examples():
    P3 = path_space(from_points([0, 1, 2]))
    E2 = CombinatorialSpace.edgeless(from_points([0, 1]))
    assert is_admissible([0, 1, 2], P3, P3)
    assert is_admissible([1, 1, 1], P3, E2)
    assert not is_admissible([0, 0, 1], P3, E2)


def test_ghc_examples():
    X = from_points([0, 1, 3])
    Y = from_points([0, 2])
    assert ghc_exact(X, Y).value == gh_exact(X, Y).value
    P = path_space(from_points([i / 4 for i in range(5)]))
    E = CombinatorialSpace.edgeless(subspace(P.metric, [0, 4]))
    assert ghc_exact(P, E).value == 0.5
    assert ghc_exact(P, P).value == 0


def test_incomparable_examples():
    P = path_space(from_points([0, 1, 2]))
    E = CombinatorialSpace.edgeless(from_points([0, 1]))
    assert is_incomparable(P, E)
    assert not is_incomparable(E, P)
    assert not is_incomparable(P, P)
    assert is_incomparable(one_point(), P) and is_incomparable(P, one_point())


@given(models(max_size=4), models(max_size=3))
@settings(max_examples=80, deadline=None)
def test_incomparable_closed_form_matches_enumeration(Xc, Yc):
    maps = _all_maps(Xc.n, Yc.n, Xc, Yc)
    only_constant = all(len(set(f.tolist())) == 1 for f in maps)
    assert is_incomparable(Xc, Yc) == only_constant


def test_admissible_composition():
    rng = np.random.default_rng(0)
    X = path_space(from_points([0, 1, 2, 3]))
    for _ in range(50):
        f = rng.integers(4, size=4)
        g = rng.integers(4, size=4)
        if is_admissible(f, X, X) and is_admissible(g, X, X):
            assert is_admissible(g[f], X, X)
