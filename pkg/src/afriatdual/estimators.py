"""Scikit-learn style wrappers around the functional API."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .consistency import check_assumption_a, check_cyclical_consistency
from .housing import is_pareto, no_trade_prices, top_trading_cycles, welfare_gap
from .indices import full_report
from .model import DEFAULT_TOL, DemandDataset, InputError, as_r_matrix, r_from_demand
from .rationalize import NotRationalizableError, afriat_efficiency_index, afriat_utility, find_certificate


def _square(M, name):
    M = check_array(M, dtype=np.float64, input_name=name)
    if M.shape[0] != M.shape[1]:
        raise InputError(f"{name} must be square, got shape {M.shape}")
    return M


class AfriatRationalizer(BaseEstimator):
    """Fit a demand dataset; predict Afriat utilities of new bundles.

    Parameters
    ----------
    tol : float
        Entries of the revealed-preference matrix within ``tol`` of zero count
        as zero.

    Attributes
    ----------
    dataset_ : DemandDataset
    R_ : ndarray of shape (n_observations, n_observations)
    rationalizable_ : bool
    certificate_ : Certificate or None
    violation_cycle_ : tuple of int or None
    efficiency_index_ : EfficiencyIndexResult
        Computed with the observed expenditures as deflation weights.
    """

    def __init__(self, tol=DEFAULT_TOL):
        self.tol = tol

    def fit(self, X, prices):
        """``X`` holds the chosen bundles, ``prices`` the matching price vectors."""
        X = check_array(X, dtype=np.float64)
        prices = check_array(prices, dtype=np.float64, input_name="prices")
        self.dataset_ = DemandDataset(prices, X)
        self.n_features_in_ = X.shape[1]
        self.R_ = r_from_demand(self.dataset_)
        verdict = check_cyclical_consistency(self.R_, self.tol)
        self.rationalizable_ = verdict.consistent
        self.violation_cycle_ = verdict.cycle
        try:
            self.certificate_ = find_certificate(self.R_, self.tol)
        except NotRationalizableError:
            self.certificate_ = None
        self.efficiency_index_ = afriat_efficiency_index(self.R_, self.dataset_.expenditures(), self.tol)
        return self

    def predict(self, X):
        """Afriat utility of each row of ``X``; requires rationalizable data."""
        check_is_fitted(self, "certificate_")
        if self.certificate_ is None:
            raise NotRationalizableError(self.violation_cycle_)
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise InputError(f"X has {X.shape[1]} goods, expected {self.n_features_in_}")
        return np.atleast_1d(afriat_utility(self.dataset_, self.certificate_, X))

    def score(self, X=None, y=None):
        """Afriat efficiency index of the fitted data (1.0 when rationalizable)."""
        check_is_fitted(self, "efficiency_index_")
        return self.efficiency_index_.e


class RationalizabilityIndices(BaseEstimator):
    """Compute the indices A*, A, B and G of an R matrix.

    Parameters
    ----------
    eps : float or None
        Lower bound on welfare weights for A*; ``None`` picks a default from
        the data.
    tol : float
    """

    def __init__(self, eps=None, tol=DEFAULT_TOL):
        self.eps = eps
        self.tol = tol

    def fit(self, R, y=None):
        R = as_r_matrix(_square(R, "R"), self.tol)
        self.report_ = full_report(R, self.eps, self.tol)
        self.a_star_ = self.report_.a_star
        self.a_ = self.report_.a
        self.b_ = self.report_.b
        self.g_ = self.report_.g
        self.epsilon_ = self.report_.epsilon
        self.assumption_a_ = check_assumption_a(R, self.tol)
        return self

    def transform(self, R=None):
        """The four indices as a row ``[a_star, a, b, g]``."""
        check_is_fitted(self, "report_")
        return np.array([[self.a_star_, self.a_, self.b_, self.g_]])

    def fit_transform(self, R, y=None):
        return self.fit(R).transform()


class HousingAudit(BaseEstimator):
    """Audit the identity allocation of a housing market with cost matrix ``c``."""

    def __init__(self, tol=DEFAULT_TOL):
        self.tol = tol

    def fit(self, c, y=None):
        c = _square(c, "c")
        verdict = is_pareto(c, tol=self.tol)
        self.pareto_ = verdict.efficient
        self.blocking_cycle_ = verdict.blocking_cycle
        self.prices_ = no_trade_prices(c, self.tol)
        self.ttc_allocation_ = top_trading_cycles(c, self.tol)
        self.welfare_gap_ = welfare_gap(c)
        return self

    def predict(self, c=None):
        """The top-trading-cycles allocation."""
        check_is_fitted(self, "ttc_allocation_")
        return self.ttc_allocation_
