"""Graph diagnostics on R: cyclical consistency, coherent subsets, increasing cycles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .model import DEFAULT_TOL, as_r_matrix, sign_matrix

Cycle = tuple[int, ...]


@dataclass(frozen=True)
class ConsistencyVerdict:
    """Outcome of the cyclical consistency test.

    ``cycle`` is ``None`` when consistent; otherwise a closed walk
    ``i_1 -> ... -> i_p -> i_1`` of distinct indices along which every step has
    ``R <= 0`` and at least one step has ``R < 0``.
    """

    consistent: bool
    cycle: Cycle | None = None

    def __bool__(self) -> bool:
        return self.consistent


def cycle_steps(cycle: Iterable[int]) -> list[tuple[int, int]]:
    c = list(cycle)
    return list(zip(c, c[1:] + c[:1]))


def perfect_matching(allowed: NDArray[np.bool_]) -> NDArray[np.intp] | None:
    """Perfect matching in the bipartite graph ``allowed[i, j]`` by augmenting paths.

    Returns ``match`` with ``match[i] = j`` or ``None`` if no perfect matching exists.
    """
    n = allowed.shape[0]
    adj = [np.flatnonzero(allowed[i]).tolist() for i in range(n)]
    owner = [-1] * n  # owner[j] = row currently matched to column j

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return None
    match = np.empty(n, dtype=np.intp)
    for j, i in enumerate(owner):
        match[i] = j
    return match


def _path(weak: NDArray[np.bool_], src: int, dst: int, members: NDArray[np.bool_]) -> list[int]:
    # BFS over weak arcs restricted to one strong component.
    prev = {src: -1}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for v in np.flatnonzero(weak[u] & members):
            v = int(v)
            if v not in prev:
                prev[v] = u
                queue.append(v)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def check_cyclical_consistency(R: ArrayLike, tol: float = DEFAULT_TOL) -> ConsistencyVerdict:
    """Test whether every cycle of nonpositive steps consists of zero steps only.

    Arcs ``i -> j`` (``i != j``) exist where ``R[i, j]`` is not positive. The
    matrix is inconsistent exactly when a strictly negative arc lies inside a
    strongly connected component; the witness closes that arc with a shortest
    path back through the component.
    """
    R = as_r_matrix(R, tol)
    s = sign_matrix(R, tol)
    weak = s <= 0
    np.fill_diagonal(weak, False)
    strict = s < 0
    np.fill_diagonal(strict, False)
    _, labels = connected_components(csr_matrix(weak), directed=True, connection="strong")
    bad = strict & (labels[:, None] == labels[None, :])
    hits = np.argwhere(bad)
    if hits.size == 0:
        return ConsistencyVerdict(True)
    i, j = (int(k) for k in hits[0])
    back = _path(weak, j, i, labels == labels[i])
    return ConsistencyVerdict(False, tuple([i] + back[:-1]))


def is_coherent(R: ArrayLike, subset: Iterable[int], tol: float = DEFAULT_TOL) -> bool:
    """True iff ``i in I`` and ``R[i, j] < 0`` always imply ``j in I``."""
    R = as_r_matrix(R, tol)
    members = np.zeros(R.shape[0], dtype=bool)
    members[list(subset)] = True
    strict = sign_matrix(R, tol) < 0
    return not np.any(strict[members] & ~members[None, :])


def coherent_closure(R: ArrayLike, seed: Iterable[int], tol: float = DEFAULT_TOL) -> frozenset[int]:
    """Smallest coherent superset of ``seed`` (forward closure along strict arcs)."""
    R = as_r_matrix(R, tol)
    strict = sign_matrix(R, tol) < 0
    closed = set(seed)
    stack = list(closed)
    while stack:
        i = stack.pop()
        for j in np.flatnonzero(strict[i]):
            j = int(j)
            if j not in closed:
                closed.add(j)
                stack.append(j)
    return frozenset(closed)


def increasing_cycle_partition(R: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.intp] | None:
    """Permutation with ``R[i, sigma[i]] < 0`` for every ``i``, if one exists.

    Its cycles partition the observations into increasing cycles; fixed points
    cannot occur because the diagonal is zero.
    """
    R = as_r_matrix(R, tol)
    return perfect_matching(sign_matrix(R, tol) < 0)


def check_assumption_a(R: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """No off-diagonal entry of ``R`` is (numerically) zero."""
    R = as_r_matrix(R, tol)
    zero = sign_matrix(R, tol) == 0
    np.fill_diagonal(zero, False)
    return not zero.any()
