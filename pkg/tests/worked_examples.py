"""Derived micro-examples: each has a brute-force route and a library route.

Indices are 0-based here. Every case returns comparable values from both
routes so the same table drives the oracle check and the library check.
"""

from __future__ import annotations

import itertools

import numpy as np

import oracles as bf
from afriatdual import (
    Certificate,
    DemandDataset,
    afriat_efficiency_index,
    bottleneck_assignment,
    coherent_closure,
    extreme_point_test,
    full_report,
    increasing_cycle_partition,
    index_a,
    index_a_star,
    index_b,
    index_g,
    is_coherent,
    is_cyclically_monotone,
    is_pareto,
    min_cost_assignment,
    no_trade_prices,
    r_from_demand,
    rationalizable,
    support_function,
    top_trading_cycles,
    verify_certificate,
    welfare_gap,
)

SWAP = [[0, -1], [-1, 0]]
POS2 = [[0, 1], [1, 0]]
R3 = [[0, 1, 1], [1, 0, -1], [1, -1, 0]]
CYC3 = [[0, -1, 2], [2, 0, -1], [-1, 2, 0]]
ASYM = [[0, -1], [2, 0]]


def _dot_r(prices, bundles):
    n = len(prices)
    return [[sum(p * x for p, x in zip(prices[i], bundles[j])) - sum(p * x for p, x in zip(prices[i], bundles[i]))
             for j in range(n)] for i in range(n)]


def _bf_closure(R, seed):
    # smallest superset passing the definition, by enumeration
    n = len(R)
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            if set(seed) <= set(S) and bf.coherent(R, S):
                return frozenset(S)


def _bf_strict_perms(R):
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    return [tuple(p) for p in itertools.permutations(range(n)) if all(R[i, p[i]] < 0 for i in range(n))]


def _bf_argmin_assignment(K):
    K = np.asarray(K, dtype=float)
    n = K.shape[0]
    best = min(itertools.permutations(range(n)), key=lambda p: sum(K[i, p[i]] for i in range(n)))
    return tuple(best), bf.min_assignment(K)


def _bf_argmin_bottleneck(R):
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    value = bf.bottleneck(R)
    sigmas = [p for p in itertools.permutations(range(n)) if max(R[i, p[i]] for i in range(n)) == value]
    return value, sigmas


def _bf_cyclically_monotone(M):
    M = np.asarray(M, dtype=float)
    return all(sum(M[a, b] - M[a, a] for a, b in bf.steps(c)) >= 0 for c in bf.simple_cycles(M.shape[0]))


def _bf_certificate_ok(R, v, lam):
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    ineq = all(v[j] - v[i] <= lam[i] * R[i, j] for i in range(n) for j in range(n))
    weak = all(v[j] <= v[i] for i in range(n) for j in range(n) if R[i, j] <= 0)
    strict = all(v[j] < v[i] for i in range(n) for j in range(n) if R[i, j] < 0)
    return ineq and weak and strict


def _bf_efficiency(R, b, grid=2001):
    # consistent on a fine grid of e; report the largest consistent grid point
    R = np.asarray(R, dtype=float)
    b = np.asarray(b, dtype=float)
    good = [e for e in np.linspace(0, 1, grid) if bf.consistent(R + (1 - e) * b[:, None] - np.diag((1 - e) * b))]
    return max(good)


def _bf_support(c, lam):
    c = np.asarray(c, dtype=float)
    return bf.min_assignment(np.asarray(lam)[:, None] * c)


def _bf_prices_ok(c, pi):
    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    R = c - np.diag(c)[:, None]
    e1 = all(pi[j] > pi[i] for i in range(n) for j in range(n) if R[i, j] < 0)
    e2 = all(pi[j] >= pi[i] for i in range(n) for j in range(n) if R[i, j] <= 0)
    return e1 and e2


def _bf_welfare_gap(c, lam):
    c = np.asarray(c, dtype=float)
    lam = np.asarray(lam, dtype=float)
    return float(lam @ np.diag(c) - bf.min_assignment(lam[:, None] * c))


# name -> (oracle route, library route, expected)
CASES = {
    "r_from_demand asymmetric prices": (
        lambda: _dot_r([(2, 1), (1, 2)], [(1, 0), (0, 1)]),
        lambda: r_from_demand(DemandDataset([[2, 1], [1, 2]], [[1, 0], [0, 1]])).tolist(),
        [[0, -1], [-1, 0]],
    ),
    "is_coherent {1}": (lambda: bf.coherent(R3, [0]), lambda: is_coherent(R3, [0]), True),
    "is_coherent {2}": (lambda: bf.coherent(R3, [1]), lambda: is_coherent(R3, [1]), False),
    "coherent_closure {2}": (lambda: _bf_closure(R3, [1]), lambda: coherent_closure(R3, [1]), frozenset({1, 2})),
    "increasing partition 3-cycle": (
        lambda: _bf_strict_perms(CYC3),
        lambda: [tuple(increasing_cycle_partition(CYC3).tolist())],
        [(1, 2, 0)],
    ),
    "min_cost swap": (
        lambda: _bf_argmin_assignment(SWAP),
        lambda: (tuple(min_cost_assignment(SWAP).sigma.tolist()), min_cost_assignment(SWAP).value),
        ((1, 0), -2.0),
    ),
    "min_cost 3-cycle": (
        lambda: _bf_argmin_assignment(CYC3),
        lambda: (tuple(min_cost_assignment(CYC3).sigma.tolist()), min_cost_assignment(CYC3).value),
        ((1, 2, 0), -3.0),
    ),
    "bottleneck swap": (lambda: bf.bottleneck(SWAP), lambda: bottleneck_assignment(SWAP)[1], -1.0),
    "bottleneck positive": (lambda: bf.bottleneck(POS2), lambda: bottleneck_assignment(POS2)[1], 0.0),
    "bottleneck 3-cycle": (
        lambda: _bf_argmin_bottleneck(CYC3),
        lambda: (bottleneck_assignment(CYC3)[1], [tuple(bottleneck_assignment(CYC3)[0].tolist())]),
        (-1.0, [(1, 2, 0)]),
    ),
    "cyclically monotone positive": (lambda: _bf_cyclically_monotone(POS2), lambda: is_cyclically_monotone(POS2), True),
    "cyclically monotone swap": (lambda: _bf_cyclically_monotone(SWAP), lambda: is_cyclically_monotone(SWAP), False),
    "certificate (0,-1),(1,1)": (
        lambda: _bf_certificate_ok(ASYM, (0, -1), (1, 1)),
        lambda: verify_certificate(ASYM, Certificate([0, -1], [1, 1])),
        True,
    ),
    "efficiency index swap b=(2,2)": (
        lambda: _bf_efficiency(SWAP, [2, 2]),
        lambda: afriat_efficiency_index(SWAP, [2, 2]).e,
        0.5,
    ),
    "efficiency index consistent": (
        lambda: _bf_efficiency(ASYM, [1, 1]),
        lambda: afriat_efficiency_index(ASYM, [1, 1]).e,
        1.0,
    ),
    "rationalizable 3-cycle": (lambda: bf.consistent(CYC3), lambda: rationalizable(CYC3), False),
    "A positive": (lambda: bf.matrix_game_a(POS2), lambda: index_a(POS2)[0], 0.0),
    "A swap": (lambda: bf.matrix_game_a(SWAP), lambda: index_a(SWAP)[0], -1.0),
    "A R3": (lambda: bf.matrix_game_a(R3), lambda: index_a(R3)[0], 0.0),
    "A R3 at (1,0,0)": (
        lambda: bf.min_assignment(np.array([1, 0, 0])[:, None] * np.array(R3)),
        lambda: support_function(R3, [1, 0, 0]),
        0.0,
    ),
    "A* positive": (lambda: bf.matrix_game_a(POS2, 0.1), lambda: index_a_star(POS2, 0.1)[0], 0.0),
    "A* R3 <= -0.2": (
        lambda: bf.matrix_game_a(R3, 0.1) <= -0.2 + 1e-9,
        lambda: index_a_star(R3, 0.1)[0] <= -0.2 + 1e-9,
        True,
    ),
    "A* swap": (lambda: bf.matrix_game_a(SWAP, 0.25), lambda: index_a_star(SWAP, 0.25)[0], -1.0),
    "B swap": (lambda: bf.bottleneck(SWAP), lambda: index_b(SWAP)[0], -1.0),
    "B R3": (lambda: bf.bottleneck(R3), lambda: index_b(R3)[0], 0.0),
    "B 3-cycle": (lambda: bf.bottleneck(CYC3), lambda: index_b(CYC3)[0], -1.0),
    "G positive": (lambda: bf.matrix_game_g(POS2), lambda: index_g(POS2)[0], 0.0),
    "G swap": (lambda: bf.matrix_game_g(SWAP), lambda: index_g(SWAP)[0], -1.0),
    "G consistent": (lambda: bf.matrix_game_g(ASYM), lambda: index_g(ASYM)[0], 0.0),
    "support function": (
        lambda: _bf_support([[1, 2], [2, 1]], [0.5, 0.5]),
        lambda: support_function([[1, 2], [2, 1]], [0.5, 0.5]),
        1.0,
    ),
    "extreme point positive": (
        lambda: abs(bf.matrix_game_a(POS2, 0.1)) < 1e-9,
        lambda: extreme_point_test(POS2, 0.1),
        True,
    ),
    "extreme point swap": (
        lambda: abs(bf.matrix_game_a(SWAP, 0.1)) < 1e-9,
        lambda: extreme_point_test(SWAP, 0.1),
        False,
    ),
    "full report positive": (
        lambda: (bf.matrix_game_a(POS2, 0.5), bf.matrix_game_a(POS2), bf.bottleneck(POS2), bf.matrix_game_g(POS2)),
        lambda: (lambda r: (r.a_star, r.a, r.b, r.g))(full_report(POS2)),
        (0.0, 0.0, 0.0, 0.0),
    ),
    "full report swap": (
        lambda: (bf.matrix_game_a(SWAP, 0.1), bf.matrix_game_a(SWAP), bf.bottleneck(SWAP), bf.matrix_game_g(SWAP)),
        lambda: (lambda r: (r.a_star, r.a, r.b, r.g))(full_report(SWAP)),
        (-1.0, -1.0, -1.0, -1.0),
    ),
    "full report R3 eps=0.1": (
        lambda: (bf.matrix_game_a(R3, 0.1) < 0, bf.matrix_game_a(R3), bf.bottleneck(R3)),
        lambda: (lambda r: (r.a_star < 0, r.a, r.b))(full_report(R3, 0.1)),
        (True, 0.0, 0.0),
    ),
    "pareto identity efficient": (
        lambda: not bf.pareto_blocked([[1, 2], [2, 1]]),
        lambda: is_pareto([[1, 2], [2, 1]]).efficient,
        True,
    ),
    "pareto identity blocked": (
        lambda: bf.pareto_blocked([[2, 1], [1, 2]]),
        lambda: (not is_pareto([[2, 1], [1, 2]]).efficient) and is_pareto([[2, 1], [1, 2]]).blocking_cycle == (0, 1),
        True,
    ),
    "pareto swap efficient": (
        lambda: not bf.pareto_blocked([[2, 1], [1, 2]], [1, 0]),
        lambda: is_pareto([[2, 1], [1, 2]], [1, 0]).efficient,
        True,
    ),
    "no prices two-cycle": (
        lambda: bf.pareto_blocked([[2, 1], [4, 5]]),
        lambda: no_trade_prices([[2, 1], [4, 5]]) is None,
        True,
    ),
    "prices (0,1)": (
        lambda: _bf_prices_ok(ASYM, (0, 1)),
        lambda: _bf_prices_ok(ASYM, no_trade_prices(ASYM)),
        True,
    ),
    "ttc swap": (
        lambda: bf.ttc_trace([[2, 1], [1, 2]]).tolist(),
        lambda: top_trading_cycles([[2, 1], [1, 2]]).tolist(),
        [1, 0],
    ),
    "ttc ties": (
        lambda: bf.ttc_trace([[1, 1], [1, 1]]).tolist(),
        lambda: top_trading_cycles([[1, 1], [1, 1]]).tolist(),
        [0, 1],
    ),
    "welfare gap zero": (
        lambda: _bf_welfare_gap([[1, 2], [2, 1]], [0.5, 0.5]),
        lambda: welfare_gap([[1, 2], [2, 1]]),
        0.0,
    ),
    "welfare gap one": (
        lambda: _bf_welfare_gap([[2, 1], [1, 2]], [0.5, 0.5]),
        lambda: welfare_gap([[2, 1], [1, 2]]),
        1.0,
    ),
}


def same(got, expected, tol=1e-9):
    if isinstance(expected, bool) or expected is None:
        return got == expected
    if isinstance(expected, (int, float)):
        return abs(float(got) - expected) <= tol
    if isinstance(expected, frozenset):
        return frozenset(got) == expected
    if isinstance(expected, (list, tuple)):
        got = list(got)
        return len(got) == len(expected) and all(same(g, e, tol) for g, e in zip(got, expected))
    return got == expected
