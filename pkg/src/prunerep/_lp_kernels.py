"""Dense two-phase tableau simplex with Bland's rule.

Solves min c.lam  s.t.  D lam = d, lam >= 0 (the dual of the row-form
program this package works with; see lp.py). Bland's smallest-index
entering rule plus smallest-basic-index ratio ties make the pivot
sequence, and therefore the pivot count, deterministic and cycle-free.

Status codes: 0 optimal, 1 infeasible, 2 unbounded, 3 numerically
degenerate (rank-deficient system or iteration guard tripped).
"""

import numpy as np

from ._accel import maybe_njit

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
DEGENERATE = 3


@maybe_njit(cache=True)
def _pivot(T, red, basis, r, jin, n_cols):
    piv = T[r, jin]
    for col in range(n_cols):
        T[r, col] /= piv
    T[r, jin] = 1.0
    for i in range(T.shape[0]):
        if i == r:
            continue
        f = T[i, jin]
        if f != 0.0:
            for col in range(n_cols):
                T[i, col] -= f * T[r, col]
            T[i, jin] = 0.0
    f = red[jin]
    if f != 0.0:
        for col in range(red.shape[0]):
            red[col] -= f * T[r, col]
        red[jin] = 0.0
    basis[r] = jin


@maybe_njit(cache=True)
def _bland_iterate(T, red, basis, n_eligible, n_cols, pivot_tol, opt_tol, max_iters):
    """Pivot until optimal or unbounded; returns (status, pivots done)."""
    n_rows = T.shape[0]
    pivots = 0
    for _ in range(max_iters):
        jin = -1
        for j in range(n_eligible):
            if red[j] < -opt_tol:
                jin = j
                break
        if jin < 0:
            return OPTIMAL, pivots
        r = -1
        best_ratio = 0.0
        for i in range(n_rows):
            t = T[i, jin]
            if t > pivot_tol:
                ratio = T[i, n_cols - 1] / t
                if r < 0 or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[r]
                ):
                    r = i
                    best_ratio = ratio
        if r < 0:
            return UNBOUNDED, pivots
        _pivot(T, red, basis, r, jin, n_cols)
        pivots += 1
    return DEGENERATE, pivots


@maybe_njit(cache=True)
def dual_simplex_kernel(D, d, c, pivot_tol, opt_tol, feas_tol):
    """Two-phase simplex on min c.lam, D lam = d, lam >= 0.

    D is (n, ms) with ms >= n expected but not required. Returns
    (status, pivots, basis, lam) where basis holds the n basic column
    indices (all real, < ms, when status is 0) and lam their values.
    Pivots counts phase 1 + artificial drive-out + phase 2.
    """
    n, ms = D.shape
    n_cols = ms + n + 1
    T = np.zeros((n, n_cols), dtype=np.float64)
    for i in range(n):
        if d[i] < 0.0:
            for j in range(ms):
                T[i, j] = -D[i, j]
            T[i, n_cols - 1] = -d[i]
        else:
            for j in range(ms):
                T[i, j] = D[i, j]
            T[i, n_cols - 1] = d[i]
        T[i, ms + i] = 1.0

    basis = np.empty(n, dtype=np.int64)
    for i in range(n):
        basis[i] = ms + i

    max_iters = 2000 + 50 * (ms + n)

    # phase 1: minimize the artificial sum; reduced costs relative to
    # the all-artificial basis are the negated column sums
    red = np.zeros(ms + n, dtype=np.float64)
    for j in range(ms):
        s = 0.0
        for i in range(n):
            s += T[i, j]
        red[j] = -s

    status, pivots = _bland_iterate(
        T, red, basis, ms, n_cols, pivot_tol, opt_tol, max_iters
    )
    if status == UNBOUNDED:
        # a sum of nonnegative variables cannot be unbounded below;
        # only numerical breakage lands here
        return DEGENERATE, pivots, basis, T[:, n_cols - 1].copy()
    if status == DEGENERATE:
        return DEGENERATE, pivots, basis, T[:, n_cols - 1].copy()

    phase1_obj = 0.0
    for i in range(n):
        if basis[i] >= ms:
            phase1_obj += T[i, n_cols - 1]
    if phase1_obj > feas_tol:
        return INFEASIBLE, pivots, basis, T[:, n_cols - 1].copy()

    # drive zero-level artificials out of the basis
    for i in range(n):
        if basis[i] >= ms:
            jin = -1
            for j in range(ms):
                if abs(T[i, j]) > pivot_tol:
                    jin = j
                    break
            if jin < 0:
                # row is zero over the real columns: D is rank-deficient
                return DEGENERATE, pivots, basis, T[:, n_cols - 1].copy()
            _pivot(T, red, basis, i, jin, n_cols)
            pivots += 1

    # phase 2 over the true costs
    red2 = np.zeros(ms + n, dtype=np.float64)
    for j in range(ms):
        s = c[j]
        for i in range(n):
            s -= c[basis[i]] * T[i, j]
        red2[j] = s

    status, more = _bland_iterate(
        T, red2, basis, ms, n_cols, pivot_tol, opt_tol, max_iters
    )
    pivots += more
    lam = T[:, n_cols - 1].copy()
    if status == OPTIMAL:
        return OPTIMAL, pivots, basis, lam
    if status == UNBOUNDED:
        return UNBOUNDED, pivots, basis, lam
    return DEGENERATE, pivots, basis, lam
