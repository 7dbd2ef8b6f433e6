"""Relations, correspondences, map pairs and their distortion functionals."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import EmptyComposition, SizeMismatch


def _dist(X) -> np.ndarray:
    return X.dist


@dataclass(frozen=True)
class Relation:
    """A non-empty set of index pairs ``(i, j)`` in ``X x Y``.

    Pairs are stored sorted and without duplicates.
    """

    domain_size: int
    codomain_size: int
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted({(int(i), int(j)) for i, j in self.pairs}))
        if not pairs:
            raise ValueError("a relation must contain at least one pair")
        for i, j in pairs:
            if not (0 <= i < self.domain_size and 0 <= j < self.codomain_size):
                raise IndexError(f"pair {(i, j)} out of range "
                                 f"{self.domain_size}x{self.codomain_size}")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def inverse(self) -> "Relation":
        return Relation(self.codomain_size, self.domain_size, [(j, i) for i, j in self.pairs])

    def to_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs]}


@dataclass(frozen=True)
class MapPair:
    """Total maps ``f: X -> Y`` and ``g: Y -> X`` as dense index tuples."""

    f: tuple
    g: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))
        object.__setattr__(self, "g", tuple(int(v) for v in self.g))
        if not self.f or not self.g:
            raise ValueError("both maps need a non-empty domain")

    def to_dict(self) -> dict:
        return {"f": list(self.f), "g": list(self.g)}


def graph(f: Sequence[int], codomain_size: int) -> Relation:
    return Relation(len(f), codomain_size, [(i, int(y)) for i, y in enumerate(f)])


def _check_map(f, n_from: int, n_to: int, name: str = "f") -> np.ndarray:
    f = np.asarray(f, dtype=int)
    if f.ndim != 1 or f.size != n_from:
        raise SizeMismatch(f"{name} must have {n_from} entries, got {f.size}")
    if f.size and (f.min() < 0 or f.max() >= n_to):
        raise SizeMismatch(f"{name} takes values outside [0, {n_to})")
    return f


def _check_sizes(sigma: Relation, X, Y) -> None:
    if sigma.domain_size != len(_dist(X)) or sigma.codomain_size != len(_dist(Y)):
        raise SizeMismatch(
            f"relation is {sigma.domain_size}x{sigma.codomain_size}, "
            f"spaces are {len(_dist(X))}x{len(_dist(Y))}"
        )


def distortion_rel(sigma: Relation, X, Y) -> float:
    """Largest discrepancy ``||xx'| - |yy'||`` over all pairs of pairs in ``sigma``."""
    _check_sizes(sigma, X, Y)
    P = np.asarray(sigma.pairs)
    xs, ys = P[:, 0], P[:, 1]
    return np.abs(_dist(X)[np.ix_(xs, xs)] - _dist(Y)[np.ix_(ys, ys)]).max()


def distortion_map(f, X, Y) -> float:
    """Distortion of the graph of ``f: X -> Y``."""
    DX, DY = _dist(X), _dist(Y)
    f = _check_map(f, len(DX), len(DY))
    return np.abs(DX - DY[np.ix_(f, f)]).max()


def codistortion(p: MapPair, X, Y) -> float:
    """Largest ``||x g(y)| - |f(x) y||`` over ``x`` in ``X`` and ``y`` in ``Y``."""
    DX, DY = _dist(X), _dist(Y)
    f = _check_map(p.f, len(DX), len(DY), "f")
    g = _check_map(p.g, len(DY), len(DX), "g")
    return np.abs(DX[:, g] - DY[f, :]).max()


def dis_map_pair(p: MapPair, X, Y) -> float:
    """Distortion of the correspondence ``f U g^-1``: the max of dis f, dis g, codis."""
    return max(
        distortion_map(p.f, X, Y),
        distortion_map(p.g, Y, X),
        codistortion(p, X, Y),
    )


def corr_from_maps(p: MapPair) -> Relation:
    """The correspondence made of the graph of ``f`` and the inverse graph of ``g``."""
    n_x, n_y = len(p.f), len(p.g)
    pairs = [(x, y) for x, y in enumerate(p.f)] + [(x, y) for y, x in enumerate(p.g)]
    return Relation(n_x, n_y, pairs)


def compose(sigma: Relation, tau: Relation) -> Relation:
    """Relational composition ``tau o sigma``: first ``sigma``, then ``tau``."""
    if sigma.codomain_size != tau.domain_size:
        raise SizeMismatch("relations are not composable")
    step = {}
    for y, z in tau.pairs:
        step.setdefault(y, []).append(z)
    pairs = {(x, z) for x, y in sigma.pairs for z in step.get(y, ())}
    if not pairs:
        raise EmptyComposition("the composition is empty")
    return Relation(sigma.domain_size, tau.codomain_size, pairs)


def is_correspondence(sigma: Relation) -> bool:
    left = {i for i, _ in sigma.pairs}
    right = {j for _, j in sigma.pairs}
    return len(left) == sigma.domain_size and len(right) == sigma.codomain_size


def extract_map_pair(R: Relation, rng: np.random.Generator | None = None) -> MapPair:
    """Pick ``f`` inside ``R`` and ``g`` inside ``R^-1``.

    Chooses the smallest partner for each point, or a random one when ``rng``
    is given. ``R`` must be a correspondence.
    """
    if not is_correspondence(R):
        raise ValueError("R is not a correspondence")
    fwd: dict = {}
    bwd: dict = {}
    for x, y in R.pairs:
        fwd.setdefault(x, []).append(y)
        bwd.setdefault(y, []).append(x)

    def pick(options):
        return options[0] if rng is None else options[int(rng.integers(len(options)))]

    f = [pick(fwd[x]) for x in range(R.domain_size)]
    g = [pick(bwd[y]) for y in range(R.codomain_size)]
    return MapPair(f, g)


def compose_maps(outer: Iterable[int], inner: Iterable[int]) -> tuple:
    """Index-array composition ``outer o inner``."""
    outer = list(outer)
    return tuple(outer[i] for i in inner)
