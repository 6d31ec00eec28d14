"""Housing-market side: Pareto audits, no-trade prices, top trading cycles.

``c[i, j]`` is individual ``i``'s cost (disutility) of living in house ``j``;
individual ``i`` initially owns house ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .assignment import min_cost_assignment
from .consistency import Cycle, check_cyclical_consistency
from .model import DEFAULT_TOL, InputError, as_permutation, as_square, check_tol, r_from_costs, sign_matrix
from .rationalize import NotRationalizableError, find_certificate


@dataclass(frozen=True)
class ParetoVerdict:
    """``blocking_cycle`` lists individuals ``i_1, ..., i_p``; each ``i_k`` would
    take the house currently held by ``i_{k+1}``."""

    efficient: bool
    blocking_cycle: Cycle | None = None

    def __bool__(self) -> bool:
        return self.efficient


def relabeled_costs(c: ArrayLike, sigma: ArrayLike) -> NDArray[np.float64]:
    """``c'[i, j] = c[i, sigma[j]]``: costs indexed by the current holder of each house."""
    c = as_square(c, "c")
    sigma = as_permutation(sigma, c.shape[0])
    return c[:, sigma]


def is_pareto(c: ArrayLike, sigma: ArrayLike | None = None, tol: float = DEFAULT_TOL) -> ParetoVerdict:
    """Pareto efficiency of allocation ``sigma`` (identity by default) under weak domination."""
    c = as_square(c, "c")
    if sigma is None:
        sigma = np.arange(c.shape[0])
    verdict = check_cyclical_consistency(r_from_costs(relabeled_costs(c, sigma)), tol)
    return ParetoVerdict(verdict.consistent, verdict.cycle)


def equilibrium_holds(c: ArrayLike, prices: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """No-trade equilibrium conditions for the identity allocation.

    ``R[i, j] < 0`` implies ``prices[j] > prices[i]``, and ``R[i, j] <= 0``
    implies ``prices[j] >= prices[i] - tol``, with signs of ``R`` classified
    under ``tol``.
    """
    R = r_from_costs(c)
    prices = np.asarray(prices, dtype=float).reshape(-1)
    if prices.shape != (R.shape[0],):
        raise InputError(f"price vector must have length {R.shape[0]}")
    s = sign_matrix(R, tol)
    np.fill_diagonal(s, 1)
    dp = prices[None, :] - prices[:, None]  # dp[i, j] = prices[j] - prices[i]
    return bool(np.all(dp[s < 0] > 0) and np.all(dp[s <= 0] >= -tol))


def no_trade_prices(c: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.float64] | None:
    """Prices supporting the identity allocation as a no-trade equilibrium, or ``None``.

    Prices are the negated utility levels of an Afriat certificate for
    ``R = r_from_costs(c)``; they exist exactly when the identity is Pareto
    efficient.
    """
    R = r_from_costs(c)
    try:
        cert = find_certificate(R, tol)
    except NotRationalizableError:
        return None
    prices = -cert.v
    prices = prices - prices.min()
    if not equilibrium_holds(c, prices, tol):
        return None
    return prices


def budget_set(prices: ArrayLike, i: int, tol: float = DEFAULT_TOL) -> frozenset[int]:
    """Houses individual ``i`` can afford by selling house ``i``."""
    prices = np.asarray(prices, dtype=float).reshape(-1)
    if not 0 <= i < prices.size:
        raise InputError(f"individual {i} out of range")
    return frozenset(np.flatnonzero(prices <= prices[i] + check_tol(tol)).tolist())


def top_trading_cycles(c: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.intp]:
    """Gale's top trading cycles from the identity endowment.

    Each round, every remaining individual points at the cheapest remaining
    house (within ``tol``, lowest index wins); every house points at its
    owner. All pointing cycles trade and leave. The outcome is Pareto efficient
    when preferences are strict; ties can break that.
    """
    c = as_square(c, "c")
    tol = check_tol(tol)
    n = c.shape[0]
    sigma = np.full(n, -1, dtype=np.intp)
    remaining = list(range(n))
    while remaining:
        costs = c[np.ix_(remaining, remaining)]
        best = costs.min(axis=1, keepdims=True)
        choice = np.argmax(costs <= best + tol, axis=1)
        points = {i: remaining[k] for i, k in zip(remaining, choice)}
        traded = set()
        for start in remaining:
            seen = []
            i = start
            while i not in seen and i not in traded:
                seen.append(i)
                i = points[i]
            if i in seen:
                for j in seen[seen.index(i):]:
                    sigma[j] = points[j]
                    traded.add(j)
        remaining = [i for i in remaining if i not in traded]
    return sigma


def welfare_gap(c: ArrayLike, lam: ArrayLike | None = None) -> float:
    """Weighted cost of the identity minus the optimal weighted assignment cost."""
    c = as_square(c, "c")
    n = c.shape[0]
    lam = np.full(n, 1.0 / n) if lam is None else np.asarray(lam, dtype=float).reshape(-1)
    if lam.shape != (n,) or np.any(lam < 0):
        raise InputError(f"weights must be {n} nonnegative numbers")
    K = lam[:, None] * c
    return float(np.trace(K) - min_cost_assignment(K).value)
