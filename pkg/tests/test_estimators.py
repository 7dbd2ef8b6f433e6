import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ghdist import (
    CombinatorialSpace,
    GromovHausdorffDistance,
    PairwiseGromovHausdorff,
    from_points,
    gh_exact,
    one_point,
    path_space,
)
from helpers import random_metric


def test_params_round_trip():
    est = GromovHausdorffDistance(continuous=True, budget=500)
    assert est.get_params() == {"continuous": True, "budget": 500, "threads": 1, "strict": False}
    est.set_params(threads=2)
    assert clone(est).threads == 2


def test_fit_sets_attributes():
    X = from_points([0, 1, 3])
    est = GromovHausdorffDistance().fit(one_point(), X)
    assert est.distance_ == 1.5 and est.optimal_ and est.n_nodes_ >= 1
    assert est.lower_bound_ <= est.distance_
    assert len(est.certificate_.f) == 1


def test_continuous_flag():
    X = from_points([0, 0.5, 1])
    est = GromovHausdorffDistance(continuous=True).fit(path_space(X), CombinatorialSpace.edgeless(X))
    assert est.distance_ == 0.5
    assert GromovHausdorffDistance().fit(X, X).distance_ == 0


def test_bad_params():
    with pytest.raises(ValueError):
        GromovHausdorffDistance(budget=0).fit(one_point(), one_point())
    with pytest.raises(ValueError):
        PairwiseGromovHausdorff(threads=0).fit([one_point()])


def test_pairwise_transform():
    rng = np.random.default_rng(0)
    refs = [random_metric(rng, 4) for _ in range(3)]
    new = [random_metric(rng, 4) for _ in range(2)]
    est = PairwiseGromovHausdorff()
    with pytest.raises(NotFittedError):
        est.transform(new)
    D = est.fit(refs).transform(new)
    assert D.shape == (2, 3) and est.optimal_mask_.all()
    for i, A in enumerate(new):
        for j, B in enumerate(refs):
            assert D[i, j] == gh_exact(A, B).value
    S = est.fit_transform(refs)
    assert np.allclose(S, S.T) and np.all(np.diag(S) == 0)


def test_pairwise_requires_references():
    with pytest.raises(ValueError):
        PairwiseGromovHausdorff().fit([])
