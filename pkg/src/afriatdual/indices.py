"""Rationalizability indices A*, A, B and G, and assignment-polytope geometry.

All four indices are max-min (or min-max) values of ``sum_i lam_i R[i, sigma(i)]``
over welfare weights ``lam`` in the simplex and permutations ``sigma``; each is
nonpositive and equals 0 under increasingly weak forms of rationalizability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .assignment import bottleneck_assignment, min_cost_assignment
from .consistency import Cycle
from .lp import FEAS_TOL, OPT_TOL, LinearProgram, solve
from .model import DEFAULT_TOL, ConvergenceError, InputError, as_r_matrix, as_square, r_from_costs, sign_matrix
from .rationalize import Certificate, NotRationalizableError, find_certificate


@dataclass(frozen=True)
class IndexReport:
    a_star: float
    a: float
    b: float
    g: float
    epsilon: float
    lam_a_star: NDArray[np.float64]
    lam_a: NDArray[np.float64]
    sigma_b: NDArray[np.intp]
    lam_g: NDArray[np.float64]
    sigma_g: NDArray[np.intp]

    @property
    def chain_holds(self) -> bool:
        t = FEAS_TOL
        return (
            self.a_star <= self.a + t
            and self.a <= self.b + t
            and self.b <= t
            and self.a <= self.g + t
            and self.g <= t
        )


def _check_epsilon(eps: float, n: int) -> float:
    eps = float(eps)
    if not (0 < eps <= 1.0 / n + 1e-15):
        raise InputError(f"epsilon must lie in (0, 1/n] = (0, {1.0 / n:g}], got {eps!r}")
    return min(eps, 1.0 / n)


def _maxmin_assignment(R: NDArray, floor: float) -> tuple[float, NDArray[np.float64]]:
    # max sum(u) + sum(w) s.t. u_i + w_j <= lam_i R_ij, sum(lam) = 1, lam >= floor.
    # The inner min over permutations is replaced by its assignment dual.
    n = R.shape[0]
    A_ub = np.zeros((n * n, 3 * n))
    k = 0
    for i in range(n):
        for j in range(n):
            A_ub[k, i] = -R[i, j]
            A_ub[k, n + i] = 1.0
            A_ub[k, 2 * n + j] = 1.0
            k += 1
    c = np.concatenate([np.zeros(n), np.ones(2 * n)])
    A_eq = np.concatenate([np.ones(n), np.zeros(2 * n)])[None, :]
    lb = np.concatenate([np.full(n, floor), np.full(2 * n, -np.inf)])
    out = solve(LinearProgram(c, A_ub, np.zeros(n * n), A_eq, [1.0], lb))
    if not out.optimal:
        raise ConvergenceError(f"max-min assignment LP returned {out.status}")
    lam = np.clip(out.x[:n], 0.0, None)
    return min(out.value, 0.0), lam / lam.sum()


def index_a(R: ArrayLike, tol: float = DEFAULT_TOL) -> tuple[float, NDArray[np.float64]]:
    """``A = max over lam in simplex of min over sigma of sum lam_i R[i, sigma(i)]``."""
    return _maxmin_assignment(as_r_matrix(R, tol), 0.0)


def index_a_star(R: ArrayLike, eps: float, tol: float = DEFAULT_TOL) -> tuple[float, NDArray[np.float64]]:
    """Index A with every weight bounded below by ``eps`` (``0 < eps <= 1/n``)."""
    R = as_r_matrix(R, tol)
    return _maxmin_assignment(R, _check_epsilon(eps, R.shape[0]))


def epsilon_from_certificate(cert: Certificate) -> float:
    """Smallest normalized multiplier ``min(lam) / sum(lam)``."""
    lam = cert.lam
    if lam.size == 0 or np.any(lam <= 0):
        raise InputError("certificate multipliers must be positive")
    return float(lam.min() / lam.sum())


def default_epsilon(R: ArrayLike, tol: float = DEFAULT_TOL) -> float:
    """Lower weight bound used for A* when none is given.

    From a certificate when one exists (then A* = 0 is attained); otherwise
    ``1 / (2 n M)`` with ``M = 1 + max|R| / min{|R_ij| : R_ij < 0}``.
    """
    R = as_r_matrix(R, tol)
    try:
        return epsilon_from_certificate(find_certificate(R, tol))
    except NotRationalizableError:
        pass
    n = R.shape[0]
    neg = np.abs(R[sign_matrix(R, tol) < 0])
    scale = neg.min() if neg.size else 1.0
    m_bar = 1.0 + np.abs(R).max() / scale
    return float(1.0 / (2 * n * m_bar))


def index_b(R: ArrayLike, tol: float = DEFAULT_TOL) -> tuple[float, NDArray[np.intp]]:
    """``B = min over sigma of max_i R[i, sigma(i)]`` (bottleneck assignment)."""
    sigma, value = bottleneck_assignment(as_r_matrix(R, tol))
    return value, sigma


def min_weight_cycle(W: ArrayLike) -> tuple[float, Cycle]:
    """Lightest simple cycle of length >= 2 in the complete digraph with arc weights ``W``.

    Exact bitmask dynamic programming over paths that start at the cycle's
    smallest node: O(2^n n^2) time, so meant for small ``n``.
    """
    W = np.asarray(W, dtype=float)
    n = W.shape[0]
    if n < 2:
        return np.inf, ()
    if n > 20:
        raise InputError(f"exact cycle separation is limited to n <= 20, got {n}")
    size = 1 << n
    dp = np.full((size, n), np.inf)
    parent = np.full((size, n), -1, dtype=np.int64)
    for s in range(n):
        dp[1 << s, s] = 0.0
    best, best_end = np.inf, None
    for mask in range(1, size):
        s = (mask & -mask).bit_length() - 1
        row = dp[mask]
        live = np.flatnonzero(np.isfinite(row))
        if live.size == 0:
            continue
        if mask != 1 << s:
            closing = row[live] + W[live, s]
            k = int(np.argmin(closing))
            if closing[k] < best:
                best, best_end = float(closing[k]), (mask, int(live[k]))
        ext = row[live][:, None] + W[live]  # ext[a, u]: extend path ending at live[a] to u
        for u in range(s + 1, n):
            if mask >> u & 1:
                continue
            a = int(np.argmin(ext[:, u]))
            nxt = mask | 1 << u
            if ext[a, u] < dp[nxt, u]:
                dp[nxt, u] = ext[a, u]
                parent[nxt, u] = live[a]
    mask, v = best_end
    path = [v]
    while parent[mask, v] >= 0:
        p = int(parent[mask, v])
        mask ^= 1 << v
        v = p
        path.append(v)
    return best, tuple(path[::-1])


def cycle_permutation(cycle: Cycle, n: int) -> NDArray[np.intp]:
    sigma = np.arange(n)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        sigma[a] = b
    return sigma


def index_g(
    R: ArrayLike, tol: float = DEFAULT_TOL, opt_tol: float = OPT_TOL
) -> tuple[float, NDArray[np.float64], NDArray[np.intp]]:
    """Index G: like A but the inner minimum ranges over one-cycle permutations.

    The identity counts as a one-cycle permutation, which keeps G <= 0.
    Solved by constraint generation: maximize ``t`` over the simplex subject to
    the cycles found so far, then ask for the lightest cycle under arc weights
    ``lam_i R[i, j]``; stop once no cycle undercuts ``t`` by more than
    ``opt_tol``. The returned value is the final LP bound, which exceeds G by
    at most ``opt_tol``.

    Returns:
        ``(g, lam, sigma)`` where ``sigma`` is the cheapest one-cycle
        permutation at ``lam``.
    """
    R = as_r_matrix(R, tol)
    n = R.shape[0]
    if n == 1:
        return 0.0, np.ones(1), np.zeros(1, dtype=np.intp)
    cuts = [np.zeros(n)]  # identity: t <= 0
    cap = 10 * n * n
    c = np.zeros(n + 1)
    c[-1] = 1.0
    A_eq = np.concatenate([np.ones(n), [0.0]])[None, :]
    lb = np.concatenate([np.zeros(n), [-np.inf]])
    for _ in range(cap):
        A_ub = np.array([np.concatenate([-w, [1.0]]) for w in cuts])
        out = solve(LinearProgram(c, A_ub, np.zeros(len(cuts)), A_eq, [1.0], lb))
        if not out.optimal:
            raise ConvergenceError(f"cutting-plane LP returned {out.status}")
        lam, t = np.clip(out.x[:n], 0.0, None), out.x[n]
        lam = lam / lam.sum()
        weight, cycle = min_weight_cycle(lam[:, None] * R)
        if weight >= t - opt_tol:
            sigma = cycle_permutation(cycle, n) if weight < 0 else np.arange(n)
            return min(float(t), 0.0), lam, sigma
        cut = np.zeros(n)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            cut[a] += R[a, b]
        cuts.append(cut)
    raise ConvergenceError(f"index G did not converge within {cap} cuts")


def support_function(c: ArrayLike, lam: ArrayLike) -> float:
    """``W(lam) = min over sigma of sum lam_i c[i, sigma(i)]``, the support function of the assignment polytope."""
    c = as_square(c, "c")
    lam = np.asarray(lam, dtype=float).reshape(-1)
    if lam.shape != (c.shape[0],):
        raise InputError(f"weights must have length {c.shape[0]}")
    return min_cost_assignment(lam[:, None] * c).value


def extreme_point_test(c: ArrayLike, eps: float) -> bool:
    """Whether the current allocation's cost vector is an extreme point of the
    assignment polytope with a normal vector bounded below by ``eps``."""
    value, _ = index_a_star(r_from_costs(c), eps)
    return value >= -FEAS_TOL


def full_report(R: ArrayLike, eps: float | None = None, tol: float = DEFAULT_TOL) -> IndexReport:
    R = as_r_matrix(R, tol)
    if eps is None:
        eps = default_epsilon(R, tol)
    eps = _check_epsilon(eps, R.shape[0])
    a_star, lam_star = index_a_star(R, eps, tol)
    a, lam_a = index_a(R, tol)
    b, sigma_b = index_b(R, tol)
    g, lam_g, sigma_g = index_g(R, tol)
    report = IndexReport(a_star, a, b, g, eps, lam_star, lam_a, sigma_b, lam_g, sigma_g)
    if not report.chain_holds:
        raise ConvergenceError(f"index chain violated: A*={a_star}, A={a}, B={b}, G={g}")
    return report
