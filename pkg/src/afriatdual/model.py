"""Domain types and matrix construction.

Everything downstream consumes an "R matrix": a square array with an exact
zero diagonal whose off-diagonal signs encode direct revealed preference
(consumer side) or the desire to trade (housing side).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

DEFAULT_TOL = 1e-9


class InputError(ValueError):
    """Malformed or out-of-domain input."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to certify its answer."""


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def check_tol(tol: float) -> float:
    tol = float(tol)
    if not np.isfinite(tol) or tol < 0:
        raise InputError(f"tolerance must be a finite nonnegative number, got {tol!r}")
    return tol


def classify(x: float, tol: float = DEFAULT_TOL) -> Sign:
    """Sign of ``x`` with everything in ``[-tol, tol]`` counted as zero."""
    tol = check_tol(tol)
    if x > tol:
        return Sign.POSITIVE
    if x < -tol:
        return Sign.NEGATIVE
    return Sign.ZERO


def sign_matrix(R: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.int8]:
    """Elementwise :func:`classify` as an int8 array of -1/0/+1."""
    R = np.asarray(R, dtype=float)
    tol = check_tol(tol)
    out = np.zeros(R.shape, dtype=np.int8)
    out[R > tol] = 1
    out[R < -tol] = -1
    return out


def snap(R: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """Copy of ``R`` with entries classified as zero set to exactly 0."""
    R = np.array(R, dtype=float)
    R[np.abs(R) <= check_tol(tol)] = 0.0
    return R


def as_square(M: ArrayLike, name: str = "matrix") -> NDArray[np.float64]:
    try:
        M = np.array(M, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not numeric: {exc}") from None
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"{name} must be square, got shape {M.shape}")
    if M.shape[0] == 0:
        raise InputError(f"{name} must have at least one row")
    if not np.all(np.isfinite(M)):
        raise InputError(f"{name} has non-finite entries")
    return M


def as_r_matrix(R: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """Validate an R matrix, snapping a diagonal within ``tol`` of 0 to exact 0."""
    R = as_square(R, "R")
    diag = np.diag(R)
    bad = np.flatnonzero(np.abs(diag) > check_tol(tol))
    if bad.size:
        i = int(bad[0])
        raise InputError(f"R diagonal must be 0, got R[{i + 1},{i + 1}] = {diag[i]!r}")
    np.fill_diagonal(R, 0.0)
    return R


def as_permutation(sigma: ArrayLike, n: int | None = None) -> NDArray[np.intp]:
    s = np.asarray(sigma)
    if s.ndim != 1 or (s.size and not np.issubdtype(s.dtype, np.integer)):
        raise InputError("allocation must be a 1-d integer array")
    s = s.astype(np.intp)
    if n is not None and s.size != n:
        raise InputError(f"allocation has length {s.size}, expected {n}")
    if sorted(s.tolist()) != list(range(s.size)):
        raise InputError(f"allocation {s.tolist()} is not a permutation of 0..{s.size - 1}")
    return s


@dataclass(frozen=True)
class DemandDataset:
    """Observed prices and chosen bundles, one row per observation.

    Attributes:
        prices: (n, L) array of strictly positive prices.
        bundles: (n, L) array of nonnegative quantities.
    """

    prices: NDArray[np.float64]
    bundles: NDArray[np.float64]

    def __post_init__(self):
        p = np.array(self.prices, dtype=float)
        x = np.array(self.bundles, dtype=float)
        if p.ndim != 2 or x.ndim != 2:
            raise InputError("prices and bundles must be 2-d (observations x goods)")
        if p.shape != x.shape:
            raise InputError(f"prices {p.shape} and bundles {x.shape} differ in shape")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise InputError("need at least one observation and one good")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(x))):
            raise InputError("prices and bundles must be finite")
        if np.any(p <= 0):
            raise InputError("prices must be strictly positive")
        if np.any(x < 0):
            raise InputError("bundles must be nonnegative")
        p.setflags(write=False)
        x.setflags(write=False)
        object.__setattr__(self, "prices", p)
        object.__setattr__(self, "bundles", x)

    @property
    def n(self) -> int:
        return self.prices.shape[0]

    @property
    def L(self) -> int:
        return self.prices.shape[1]

    def expenditures(self) -> NDArray[np.float64]:
        """``p_i . x_i`` for each observation."""
        return np.einsum("ij,ij->i", self.prices, self.bundles)


def r_from_demand(ds: DemandDataset) -> NDArray[np.float64]:
    """``R[i, j] = p_i . x_j - p_i . x_i`` with an exact zero diagonal."""
    cost = ds.prices @ ds.bundles.T
    R = cost - np.diag(cost)[:, None]
    np.fill_diagonal(R, 0.0)
    return R


def r_from_costs(c: ArrayLike) -> NDArray[np.float64]:
    """``R[i, j] = c[i, j] - c[i, i]``: cost relative to the current holding."""
    c = as_square(c, "c")
    R = c - np.diag(c)[:, None]
    np.fill_diagonal(R, 0.0)
    return R
