"""Afriat certificates, the piecewise-linear Afriat utility, and the efficiency index."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .consistency import Cycle, check_cyclical_consistency
from .lp import FEAS_TOL, LinearProgram, solve
from .model import DEFAULT_TOL, DemandDataset, InputError, as_r_matrix, check_tol, sign_matrix, snap


@dataclass(frozen=True)
class Certificate:
    """Utility levels ``v`` and multipliers ``lam`` with ``v[j] - v[i] <= lam[i] * R[i, j]``."""

    v: NDArray[np.float64]
    lam: NDArray[np.float64]

    def __post_init__(self):
        v = np.array(self.v, dtype=float).reshape(-1)
        lam = np.array(self.lam, dtype=float).reshape(-1)
        if v.shape != lam.shape:
            raise InputError("v and lam must have the same length")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "lam", lam)

    def scaled(self, t: float) -> "Certificate":
        return Certificate(t * self.v, t * self.lam)


class NotRationalizableError(ValueError):
    """No certificate exists; ``cycle`` (if known) is the offending cycle."""

    def __init__(self, cycle: Cycle | None):
        self.cycle = cycle
        shown = "unknown" if cycle is None else "-".join(str(i + 1) for i in cycle)
        super().__init__(f"R is not cyclically consistent (cycle {shown})")


@dataclass(frozen=True)
class EfficiencyIndexResult:
    """Afriat efficiency index.

    ``e`` is the largest breakpoint (or 0 or 1) at which the deflated matrix
    is consistent. The consistent set is an interval starting at 0 that may be
    open on the right; ``supremum`` is its right end, which exceeds ``e`` only
    in that open case. ``attained`` is False when not even ``e = 0`` is
    consistent. ``breakpoint`` is a pair ``(i, j)`` whose deflated entry is
    exactly zero at ``e``, when there is one.
    """

    e: float
    supremum: float
    attained: bool = True
    breakpoint: tuple[int, int] | None = None


def find_certificate(R: ArrayLike, tol: float = DEFAULT_TOL) -> Certificate:
    """Solve the Afriat inequalities as an LP.

    Variables ``(v, lam)`` with ``v[j] - v[i] - lam[i] * R[i, j] <= 0`` and
    ``lam >= 1`` (the system is homogeneous, so this loses nothing); the total
    multiplier mass is minimized to keep the certificate small. Entries within
    ``tol`` of zero are treated as exact zeros.

    Raises:
        NotRationalizableError: the LP is infeasible. The error carries the
            violating cycle found by :func:`check_cyclical_consistency`.
    """
    R = snap(as_r_matrix(R, tol), tol)
    n = R.shape[0]
    rows = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            row = np.zeros(2 * n)
            row[j] += 1.0
            row[i] -= 1.0
            row[n + i] = -R[i, j]
            rows.append(row)
    A_ub = np.array(rows).reshape(-1, 2 * n)
    c = np.concatenate([np.zeros(n), -np.ones(n)])
    lb = np.concatenate([np.full(n, -np.inf), np.ones(n)])
    out = solve(LinearProgram(c, A_ub, np.zeros(A_ub.shape[0]), lb=lb))
    if not out.optimal:
        raise NotRationalizableError(check_cyclical_consistency(R, tol).cycle)
    v, lam = out.x[:n], out.x[n:]
    return Certificate(v - v[0], lam)


def verify_certificate(R: ArrayLike, cert: Certificate, tol: float = DEFAULT_TOL, feas_tol: float = FEAS_TOL) -> bool:
    """Check the Afriat inequalities and the sign implications they entail.

    Requires ``lam > 0``, ``v[j] - v[i] <= lam[i] * R[i, j] + feas_tol``, and
    under sign classification: ``R[i, j] <= 0`` implies ``v[j] <= v[i] + tol``
    and ``R[i, j] < 0`` implies ``v[j] < v[i]``.
    """
    R = as_r_matrix(R, tol)
    n = R.shape[0]
    if cert.v.size != n:
        raise InputError(f"certificate has length {cert.v.size}, R has {n} rows")
    if np.any(cert.lam <= 0):
        return False
    dv = cert.v[None, :] - cert.v[:, None]  # dv[i, j] = v[j] - v[i]
    if np.any(dv > cert.lam[:, None] * snap(R, tol) + feas_tol):
        return False
    s = sign_matrix(R, tol)
    if np.any(dv[s <= 0] > tol):
        return False
    return not np.any(dv[s < 0] >= 0)


def rationalizable(R: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    return check_cyclical_consistency(R, tol).consistent


def afriat_utility(ds: DemandDataset, cert: Certificate, x: ArrayLike) -> float | NDArray[np.float64]:
    """``min_i v[i] + lam[i] * p_i . (x - x_i)``; accepts one bundle or a stack of them."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != ds.L:
        raise InputError(f"bundle has {x.shape[-1]} goods, dataset has {ds.L}")
    if cert.v.size != ds.n:
        raise InputError("certificate does not match the dataset")
    terms = cert.v + cert.lam * (x @ ds.prices.T - ds.expenditures())
    out = terms.min(axis=-1)
    return float(out) if out.ndim == 0 else out


def afriat_efficiency_index(R: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> EfficiencyIndexResult:
    """Largest ``e`` in [0, 1] keeping ``R + (1 - e) * b[:, None]`` cyclically consistent.

    Off-diagonal entries only decrease as ``e`` grows, so consistency is
    monotone in ``e`` and can only change at a breakpoint ``1 + R[i, j] / b[i]``.
    Binary search runs over the breakpoints and the midpoints between them;
    a consistent midpoint followed by an inconsistent breakpoint marks an
    interval open on the right.
    """
    R = as_r_matrix(R, tol)
    tol = check_tol(tol)
    b = np.asarray(b, dtype=float).reshape(-1)
    n = R.shape[0]
    if b.shape != (n,):
        raise InputError(f"b must have length {n}")
    if not np.all(np.isfinite(b)) or np.any(b <= 0):
        raise InputError("b must be strictly positive")

    def deflated(e: float) -> NDArray[np.float64]:
        Re = R + (1.0 - e) * b[:, None]
        np.fill_diagonal(Re, 0.0)
        return Re

    def consistent(e: float) -> bool:
        return check_cyclical_consistency(deflated(e), tol).consistent

    off = ~np.eye(n, dtype=bool)
    bp = 1.0 + R / b[:, None]
    cands = np.unique(np.concatenate([[0.0, 1.0], bp[off & (bp >= 0) & (bp <= 1)]]))
    points = [float(cands[0])]
    for lo, hi in zip(cands[:-1], cands[1:]):
        points += [0.5 * (lo + hi), float(hi)]

    if consistent(1.0):
        return EfficiencyIndexResult(1.0, 1.0)
    if not consistent(points[0]):
        return EfficiencyIndexResult(0.0, 0.0, False, _binding(bp, off, 0.0))
    lo, hi = 0, len(points) - 1  # points[lo] consistent, points[hi] not
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if consistent(points[mid]):
            lo = mid
        else:
            hi = mid
    if lo % 2 == 0:
        e = sup = points[lo]
    else:
        e, sup = points[lo - 1], points[hi]
    return EfficiencyIndexResult(e, sup, True, _binding(bp, off, e))


def _binding(bp: NDArray, off: NDArray, e: float) -> tuple[int, int] | None:
    hits = np.argwhere(off & (bp == e))
    return (int(hits[0][0]), int(hits[0][1])) if hits.size else None
