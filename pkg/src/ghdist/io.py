"""JSON reading and writing for spaces, models, map pairs and fixtures.

A metric space is either ``{"dist": [[...]], "labels": [...]}`` or
``{"points": [[...]], "norm": "l2"}``; a bare nested list is read as a
distance matrix. A combinatorial model wraps one of these as
``{"metric": {...}, "edges": [[i, j], ...]}``. Exact rationals are written as
strings such as ``"3/2"`` and read back as :class:`~fractions.Fraction`.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .metric import TOL, FiniteMetricSpace, from_points
from .relations import MapPair
from .topology import CombinatorialSpace


class ParseError(ValueError):
    """Input is not in one of the accepted layouts."""


def _number(v):
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError as exc:
            raise ParseError(f"not a number: {v!r}") from exc
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"not a number: {v!r}")
    return v


def _matrix(rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("distance matrix must be a list of rows")
    vals = [[_number(v) for v in r] for r in rows]
    if any(isinstance(v, Fraction) for r in vals for v in r):
        return vals
    return np.array(vals, dtype=float) if vals else np.zeros((0, 0))


def space_from_obj(obj, tol: float = TOL) -> FiniteMetricSpace:
    if isinstance(obj, list):
        return FiniteMetricSpace(_matrix(obj), tol=tol)
    if not isinstance(obj, dict):
        raise ParseError("expected an object or a distance matrix")
    if "dist" in obj:
        return FiniteMetricSpace(_matrix(obj["dist"]), obj.get("labels"), tol=tol)
    if "points" in obj:
        pts = np.array(obj["points"], dtype=float)
        return from_points(pts, obj.get("norm", "l2"), obj.get("labels"))
    raise ParseError("a space needs 'dist' or 'points'")


def model_from_obj(obj, tol: float = TOL) -> tuple[CombinatorialSpace, bool]:
    """Parse a model; the flag tells whether adjacency was given explicitly."""
    if isinstance(obj, dict) and "metric" in obj:
        edges = obj.get("edges", [])
        if not isinstance(edges, list) or not all(
                isinstance(e, list) and len(e) == 2 for e in edges):
            raise ParseError("edges must be a list of [i, j] pairs")
        return CombinatorialSpace(space_from_obj(obj["metric"], tol), edges), True
    return CombinatorialSpace.edgeless(space_from_obj(obj, tol)), False


def read_json(path):
    with open(Path(path), encoding="utf-8") as fh:
        return json.load(fh)


def load_model(path, tol: float = TOL) -> tuple[CombinatorialSpace, bool]:
    return model_from_obj(read_json(path), tol)


def load_space(path, tol: float = TOL) -> FiniteMetricSpace:
    return load_model(path, tol)[0].metric


def _scalar(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    return v


def space_to_obj(X: FiniteMetricSpace) -> dict:
    out = {"dist": [[_scalar(v) for v in row] for row in X.dist.tolist()]}
    if X.labels is not None:
        out["labels"] = list(X.labels)
    return out


def model_to_obj(Xc) -> dict:
    if isinstance(Xc, FiniteMetricSpace):
        Xc = CombinatorialSpace.edgeless(Xc)
    return {"metric": space_to_obj(Xc.metric), "edges": [list(e) for e in Xc.edges]}


def map_pair_from_obj(obj) -> MapPair:
    try:
        return MapPair(obj["f"], obj["g"])
    except (KeyError, TypeError) as exc:
        raise ParseError("a map pair needs integer lists 'f' and 'g'") from exc


def fixture_to_obj(fx) -> dict:
    return {
        "name": fx.name,
        "params": fx.params,
        "spaces": {k: model_to_obj(v) for k, v in fx.spaces.items()},
        "maps": {k: v.to_dict() for k, v in fx.maps.items()},
        "subsets": {k: list(v) for k, v in fx.subsets.items()},
        "reference_values": {
            k: {"value": _scalar(r.value), "note": r.note}
            for k, r in fx.reference_values.items()
        },
    }


def dumps(obj, *, indent: int | None = 2) -> str:
    """Deterministic JSON text (sorted keys, exact rationals as strings)."""
    return json.dumps(obj, indent=indent, sort_keys=True, default=_scalar_default)


def _scalar_default(v):
    out = _scalar(v)
    if out is v:
        if isinstance(v, np.ndarray):
            return v.tolist()
        if isinstance(v, np.bool_):
            return bool(v)
        raise TypeError(f"cannot serialise {type(v).__name__}")
    return out
