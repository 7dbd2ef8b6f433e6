from fractions import Fraction

import pytest

from ghdist import MapPair, build_omega_space, build_triode, from_points
from ghdist.io import (
    ParseError,
    dumps,
    fixture_to_obj,
    map_pair_from_obj,
    model_from_obj,
    model_to_obj,
    space_from_obj,
    space_to_obj,
)


def test_space_layouts():
    a = space_from_obj({"dist": [[0, 1], [1, 0]], "labels": ["u", "v"]})
    b = space_from_obj([[0, 1], [1, 0]])
    c = space_from_obj({"points": [[0], [1]], "norm": "l1"})
    assert b == c and a.labels == ("u", "v")
    assert (a.dist == b.dist).all()
    with pytest.raises(ParseError):
        space_from_obj({"nope": 1})
    with pytest.raises(ParseError):
        space_from_obj({"dist": [[0, "x"], ["x", 0]]})


def test_rational_round_trip():
    X = build_omega_space(3, exact=True).spaces["X"].metric
    obj = space_to_obj(X)
    assert "7/6" in [v for row in obj["dist"] for v in row]
    Y = space_from_obj(obj)
    assert Y.exact and Y == X and Y.dist[0, 3] == Fraction(7, 6)


def test_model_round_trip():
    T = build_triode(2, 4).spaces["X_n"]
    back, explicit = model_from_obj(model_to_obj(T))
    assert explicit and back.edges == T.edges and back.metric == T.metric
    plain, explicit = model_from_obj({"points": [[0], [2]]})
    assert not explicit and plain.edges == ()
    with pytest.raises(ParseError):
        model_from_obj({"metric": [[0]], "edges": [[0]]})


def test_map_pair_and_fixture():
    assert map_pair_from_obj({"f": [1, 0], "g": [0, 0]}) == MapPair([1, 0], [0, 0])
    with pytest.raises(ParseError):
        map_pair_from_obj({"f": [1]})
    obj = fixture_to_obj(build_omega_space(2, exact=True))
    assert obj["reference_values"]["dis_h_2"]["value"] == "1/4"
    text = dumps(obj)
    assert text == dumps(fixture_to_obj(build_omega_space(2, exact=True)))


def test_dumps_numpy_scalars():
    X = from_points([0, 1])
    assert dumps({"d": X.dist[0, 1], "b": X.dist[0, 1] > 0}, indent=None) == '{"b": true, "d": 1.0}'
