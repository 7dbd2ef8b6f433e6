"""scikit-learn style wrappers around the exact search.

The inputs are finite metric spaces (or combinatorial models), not feature
matrices, so these estimators follow the ``fit``/``transform`` and
``get_params``/``set_params`` conventions without the array validation of
tabular estimators.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .metric import check_metric_space
from .search import gh_exact, ghc_exact
from .topology import as_combinatorial


def _prepare(X, continuous):
    return as_combinatorial(X) if continuous else check_metric_space(X)


def _check_params(est):
    if est.budget is not None and int(est.budget) < 1:
        raise ValueError(f"budget must be positive, got {est.budget}")
    if int(est.threads) < 1:
        raise ValueError(f"threads must be positive, got {est.threads}")


class GromovHausdorffDistance(BaseEstimator):
    """Exact distance between one pair of spaces.

    Parameters
    ----------
    continuous : bool, default=False
        Restrict to admissible maps (continuous variant). Plain metric spaces
        are read as edgeless models.
    budget : int, optional
        Search node cap.
    threads : int, default=1
    strict : bool, default=False
        Raise when the budget runs out instead of storing an upper bound.

    Attributes
    ----------
    distance_ : float
    certificate_ : MapPair
    optimal_ : bool
    lower_bound_ : float
    n_nodes_ : int
    """

    def __init__(self, continuous=False, budget=None, threads=1, strict=False):
        self.continuous = continuous
        self.budget = budget
        self.threads = threads
        self.strict = strict

    def fit(self, X, Y):
        _check_params(self)
        search = ghc_exact if self.continuous else gh_exact
        res = search(_prepare(X, self.continuous), _prepare(Y, self.continuous),
                     budget=self.budget, threads=self.threads, strict=self.strict)
        self.distance_ = res.value
        self.certificate_ = res.certificate
        self.optimal_ = res.optimal
        self.lower_bound_ = res.lower
        self.n_nodes_ = res.nodes_explored
        return self


class PairwiseGromovHausdorff(TransformerMixin, BaseEstimator):
    """Distances from new spaces to a fitted reference collection.

    ``transform(spaces)`` returns an array of shape
    ``(len(spaces), len(reference_spaces_))``. Entries from searches that ran
    out of budget are upper bounds; ``optimal_mask_`` marks the exact ones of
    the last call.
    """

    def __init__(self, continuous=False, budget=None, threads=1):
        self.continuous = continuous
        self.budget = budget
        self.threads = threads

    def fit(self, spaces, y=None):
        _check_params(self)
        spaces = list(spaces)
        if not spaces:
            raise ValueError("need at least one reference space")
        self.reference_spaces_ = [_prepare(S, self.continuous) for S in spaces]
        self.n_references_ = len(spaces)
        return self

    def transform(self, spaces):
        check_is_fitted(self, "reference_spaces_")
        search = ghc_exact if self.continuous else gh_exact
        rows = [_prepare(S, self.continuous) for S in spaces]
        out = np.zeros((len(rows), self.n_references_))
        mask = np.ones_like(out, dtype=bool)
        for i, A in enumerate(rows):
            for j, B in enumerate(self.reference_spaces_):
                res = search(A, B, budget=self.budget, threads=self.threads)
                out[i, j] = res.value
                mask[i, j] = res.optimal
        self.optimal_mask_ = mask
        return out
