"""Optimal and bottleneck assignment over permutations of ``{0, ..., n-1}``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .consistency import perfect_matching
from .model import DEFAULT_TOL, as_square, check_tol


@dataclass(frozen=True)
class AssignmentResult:
    """Minimum-cost permutation with dual potentials.

    ``u[i] + v[j] <= K[i, j]`` everywhere, with equality on ``j = sigma[i]``,
    so ``u.sum() + v.sum() == value``.
    """

    sigma: NDArray[np.intp]
    value: float
    u: NDArray[np.float64]
    v: NDArray[np.float64]


def min_cost_assignment(K: ArrayLike) -> AssignmentResult:
    """Hungarian method (shortest augmenting paths) keeping feasible potentials."""
    K = as_square(K, "K")
    n = K.shape[0]
    INF = np.inf
    # 1-based internals; column 0 is a virtual start node.
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.intp)  # p[j] = row matched to column j
    way = np.zeros(n + 1, dtype=np.intp)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, INF)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used[1:]
            cur = K[i0 - 1] - u[i0] - v[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            cand = np.where(free, minv[1:], INF)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv[1:][free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    sigma = np.empty(n, dtype=np.intp)
    for j in range(1, n + 1):
        sigma[p[j] - 1] = j - 1
    value = float(K[np.arange(n), sigma].sum())
    return AssignmentResult(sigma, value, u[1:].copy(), v[1:].copy())


def bottleneck_assignment(R: ArrayLike) -> tuple[NDArray[np.intp], float]:
    """Permutation minimizing the largest selected entry, and that entry.

    Binary search over the sorted distinct entries; each probe asks for a
    perfect matching using only entries at or below the threshold.
    """
    R = as_square(R, "R")
    levels = np.unique(R)
    lo, hi = 0, levels.size - 1
    best = perfect_matching(R <= levels[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        match = perfect_matching(R <= levels[mid])
        if match is None:
            lo = mid + 1
        else:
            hi, best = mid, match
    if best is None or R[np.arange(R.shape[0]), best].max() > levels[lo]:
        best = perfect_matching(R <= levels[lo])
    return best, float(levels[lo])


def is_cyclically_monotone(M: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """Every cycle has ``sum(M[i_k, i_{k+1}] - M[i_k, i_k]) >= 0``.

    Equivalent to the identity solving the assignment problem for
    ``K[i, j] = M[i, j] - M[i, i]``, whose identity value is 0.
    """
    M = as_square(M, "M")
    K = M - np.diag(M)[:, None]
    return min_cost_assignment(K).value >= -check_tol(tol)
