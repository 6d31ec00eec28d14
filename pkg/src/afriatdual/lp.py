"""Dense two-phase simplex (Bland's rule) for the small LPs used in this package.

Problems are stated as::

    maximize    c @ z
    subject to  A_ub @ z <= b_ub
                A_eq @ z == b_eq
                z >= lb            (lb entries may be -inf: free variable)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .model import ConvergenceError, InputError

FEAS_TOL = 1e-7
OPT_TOL = 1e-7
PIVOT_TOL = 1e-9


def _matrix(A, n: int, name: str) -> NDArray[np.float64]:
    if A is None:
        return np.zeros((0, n))
    A = np.array(A, dtype=float)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, n)
    if A.ndim != 2 or A.shape[1] != n:
        raise InputError(f"{name} must have shape (m, {n}), got {A.shape}")
    return A


def _vector(b, m: int, name: str) -> NDArray[np.float64]:
    if b is None:
        b = np.zeros(0)
    b = np.array(b, dtype=float).reshape(-1)
    if b.shape != (m,):
        raise InputError(f"{name} must have length {m}, got {b.shape[0]}")
    return b


@dataclass(frozen=True)
class LinearProgram:
    c: NDArray[np.float64]
    A_ub: NDArray[np.float64] = None
    b_ub: NDArray[np.float64] = None
    A_eq: NDArray[np.float64] = None
    b_eq: NDArray[np.float64] = None
    lb: NDArray[np.float64] = field(default=None)

    def __post_init__(self):
        c = np.array(self.c, dtype=float).reshape(-1)
        n = c.size
        A_ub = _matrix(self.A_ub, n, "A_ub")
        A_eq = _matrix(self.A_eq, n, "A_eq")
        b_ub = _vector(self.b_ub, A_ub.shape[0], "b_ub")
        b_eq = _vector(self.b_eq, A_eq.shape[0], "b_eq")
        lb = np.zeros(n) if self.lb is None else np.broadcast_to(np.array(self.lb, dtype=float), (n,)).copy()
        for name, arr in (("c", c), ("A_ub", A_ub), ("A_eq", A_eq), ("b_ub", b_ub), ("b_eq", b_eq)):
            if not np.all(np.isfinite(arr)):
                raise InputError(f"{name} has non-finite entries")
        if np.any(np.isnan(lb)) or np.any(lb == np.inf):
            raise InputError("lower bounds must be finite or -inf")
        for name, arr in (("c", c), ("A_ub", A_ub), ("b_ub", b_ub), ("A_eq", A_eq), ("b_eq", b_eq), ("lb", lb)):
            object.__setattr__(self, name, arr)

    @property
    def n_vars(self) -> int:
        return self.c.size

    def violation(self, z: ArrayLike) -> float:
        """Largest constraint violation of ``z`` (0 when feasible)."""
        z = np.asarray(z, dtype=float)
        worst = float(np.max(self.lb - z, initial=0.0))
        if self.b_ub.size:
            worst = max(worst, float(np.max(self.A_ub @ z - self.b_ub)))
        if self.b_eq.size:
            worst = max(worst, float(np.max(np.abs(self.A_eq @ z - self.b_eq))))
        return max(worst, 0.0)


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: NDArray[np.float64] | None = None
    value: float | None = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Rows ``0..m-1`` hold ``[B^-1 A | B^-1 b]``; row ``m`` holds reduced costs."""

    def __init__(self, A: NDArray, b: NDArray, basis: list[int]):
        m, n = A.shape
        self.T = np.zeros((m + 1, n + 1))
        self.T[:m, :n] = A
        self.T[:m, n] = b
        self.basis = list(basis)
        self.iterations = 0

    @property
    def m(self) -> int:
        return self.T.shape[0] - 1

    def set_objective(self, c: NDArray) -> None:
        # reduced costs d = c_B B^-1 A - c (maximization: entering when d_j < 0)
        m = self.m
        cB = c[self.basis]
        self.T[m, :-1] = cB @ self.T[:m, :-1] - c
        self.T[m, -1] = cB @ self.T[:m, -1]

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.iterations += 1

    def run(self, allowed: NDArray[np.bool_], max_iter: int, cost_tol: float = PIVOT_TOL) -> str:
        T, m = self.T, self.m
        while True:
            if self.iterations >= max_iter:
                raise ConvergenceError(f"simplex exceeded {max_iter} pivots")
            d = T[m, :-1]
            cand = np.flatnonzero((d < -cost_tol) & allowed)
            if cand.size == 0:
                return "optimal"
            j = int(cand[0])  # Bland: lowest-index improving column
            col = T[:m, j]
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                return "unbounded"
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            r = int(min(ties, key=lambda k: self.basis[k]))
            self.pivot(r, j)


def solve(
    lp: LinearProgram,
    *,
    feas_tol: float = FEAS_TOL,
    cost_tol: float = PIVOT_TOL,
    max_iter: int = 100_000,
) -> LpOutcome:
    """Solve ``lp`` by the two-phase simplex method.

    Optimal points are re-checked by substitution; a check failure beyond
    ``feas_tol`` raises :class:`ConvergenceError` rather than returning a
    silently wrong answer.
    """
    n = lp.n_vars
    free = np.isneginf(lp.lb)
    shift = np.where(free, 0.0, lp.lb)

    # z = shift + P @ y with y >= 0; free variables split into a +/- pair.
    cols = []
    for k in range(n):
        cols.append((k, 1.0))
        if free[k]:
            cols.append((k, -1.0))
    ny = len(cols)
    P = np.zeros((n, ny))
    for t, (k, s) in enumerate(cols):
        P[k, t] = s

    m_ub, m_eq = lp.b_ub.size, lp.b_eq.size
    m = m_ub + m_eq
    width = ny + m_ub  # structural + slack columns
    A = np.zeros((m, width))
    A[:m_ub, :ny] = lp.A_ub @ P
    A[:m_ub, ny:] = np.eye(m_ub)
    A[m_ub:, :ny] = lp.A_eq @ P
    b = np.concatenate([lp.b_ub - lp.A_ub @ shift, lp.b_eq - lp.A_eq @ shift])
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1

    # Slack columns of untouched <= rows start basic; every other row gets an artificial.
    basis = [-1] * m
    for r in range(m_ub):
        if not neg[r]:
            basis[r] = ny + r
    art_rows = [r for r in range(m) if basis[r] < 0]
    n_art = len(art_rows)
    A_full = np.zeros((m, width + n_art))
    A_full[:, :width] = A
    for t, r in enumerate(art_rows):
        A_full[r, width + t] = 1.0
        basis[r] = width + t

    tab = _Tableau(A_full, b, basis)
    allowed = np.ones(width + n_art, dtype=bool)

    if n_art:
        c1 = np.zeros(width + n_art)
        c1[width:] = -1.0
        tab.set_objective(c1)
        tab.run(allowed, max_iter, cost_tol)
        if -tab.T[m, -1] > feas_tol:
            return LpOutcome("infeasible", iterations=tab.iterations)
        # Drive remaining artificials out of the basis; drop redundant rows.
        r = 0
        while r < tab.m:
            if tab.basis[r] >= width:
                nz = np.flatnonzero(np.abs(tab.T[r, :width]) > PIVOT_TOL)
                if nz.size:
                    tab.pivot(r, int(nz[0]))
                else:
                    tab.T = np.delete(tab.T, r, axis=0)
                    del tab.basis[r]
                    continue
            r += 1
        allowed[width:] = False
        tab.T[:-1, width:-1] = 0.0

    c2 = np.zeros(width + n_art)
    c2[:ny] = P.T @ lp.c
    tab.set_objective(c2)
    status = tab.run(allowed, max_iter, cost_tol)
    if status == "unbounded":
        return LpOutcome("unbounded", iterations=tab.iterations)

    y = np.zeros(width + n_art)
    y[tab.basis] = tab.T[:-1, -1]
    z = shift + P @ y[:ny]
    err = lp.violation(z)
    if err > feas_tol:
        raise ConvergenceError(f"simplex solution violates constraints by {err:.3g}")
    return LpOutcome("optimal", z, float(lp.c @ z), tab.iterations)


def feasible(
    A_ub=None, b_ub=None, A_eq=None, b_eq=None, lb=None, *, n_vars: int | None = None, feas_tol: float = FEAS_TOL
) -> NDArray[np.float64] | None:
    """A point satisfying the constraints, or ``None`` if there is none."""
    if n_vars is None:
        for A in (A_ub, A_eq, lb):
            if A is not None and np.size(A):
                n_vars = np.shape(A)[-1]
                break
        else:
            raise InputError("cannot infer the number of variables")
    lp = LinearProgram(np.zeros(n_vars), A_ub, b_ub, A_eq, b_eq, lb)
    out = solve(lp, feas_tol=feas_tol)
    return out.x if out.optimal else None
