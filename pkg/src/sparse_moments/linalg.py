"""Smallest eigenpair of a symmetric matrix and Vandermonde systems.

The eigensolver is the textbook dense route: Householder reduction to
tridiagonal form, Sturm-sequence bisection for the low end of the spectrum,
then inverse iteration on the original matrix from a random start.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import ConvergenceFailure, DegenerateNodes, InvalidInput
from .model import make_rng

__all__ = [
    "EigenPair",
    "tridiagonalize",
    "sturm_count",
    "bisect_eigenvalue",
    "smallest_eigenvalues",
    "min_eigenpair",
    "canonical_sign",
    "solve_vandermonde",
    "solve_vandermonde_transposed",
    "vandermonde_residual",
    "vandermonde_inverse_inf_norm",
    "NODE_THRESHOLD",
]

EPS = np.finfo(float).eps
NODE_THRESHOLD = 1e-12
SYMMETRY_TOL = 1e-10


class EigenPair(NamedTuple):
    lam: float
    v: np.ndarray
    residual: float
    gap: float
    iterations: int


def _check_symmetric(H):
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H), initial=0.0)))
    if np.max(np.abs(H - H.T), initial=0.0) > SYMMETRY_TOL * scale:
        raise InvalidInput("matrix is not symmetric")
    return 0.5 * (H + H.T)


def tridiagonalize(H):
    """Householder similarity reduction; returns (diagonal, off-diagonal)."""
    A = np.array(H, dtype=float)
    n = A.shape[0]
    for j in range(n - 2):
        x = A[j + 1 :, j]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        u = x.copy()
        u[0] -= alpha
        unorm2 = u @ u
        if unorm2 == 0.0:
            continue
        # A <- P A P with P = I - 2 u u^T / (u^T u), applied to the trailing block
        B = A[j + 1 :, j + 1 :]
        p = B @ u * (2.0 / unorm2)
        kcoef = (u @ p) / unorm2
        q = p - kcoef * u
        B -= np.outer(u, q) + np.outer(q, u)
        A[j + 1 :, j] = 0.0
        A[j, j + 1 :] = 0.0
        A[j + 1, j] = A[j, j + 1] = alpha
    return np.diag(A).copy(), np.diag(A, 1).copy()


def sturm_count(d, e, x):
    """Number of eigenvalues of the tridiagonal (d, e) strictly below x."""
    count = 0
    q = d[0] - x
    tiny = EPS * (np.max(np.abs(d), initial=0.0) + np.max(np.abs(e), initial=0.0) + 1e-300)
    for i in range(len(d)):
        if i:
            q = d[i] - x - e[i - 1] ** 2 / q
        if q == 0.0:
            q = -tiny
        if q < 0.0:
            count += 1
    return count


def _gershgorin(d, e):
    r = np.zeros_like(d)
    r[:-1] += np.abs(e)
    r[1:] += np.abs(e)
    return float(np.min(d - r)), float(np.max(d + r))


def bisect_eigenvalue(d, e, index, abs_tol=0.0):
    """Bracket of the ``index``-th smallest eigenvalue (1-based) by bisection.

    Stops when the bracket is narrower than ``abs_tol`` or cannot shrink
    further in floating point. Returns ``(lo, hi)``.
    """
    lo, hi = _gershgorin(d, e)
    pad = EPS * max(abs(lo), abs(hi), 1.0)
    lo, hi = lo - pad, hi + pad
    scale = max(abs(lo), abs(hi))
    floor = 2 * EPS * scale
    while hi - lo > max(abs_tol, floor):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sturm_count(d, e, mid) >= index:
            hi = mid
        else:
            lo = mid
    return lo, hi


def smallest_eigenvalues(H, count=2):
    """The ``count`` smallest eigenvalues of symmetric H, ascending."""
    d, e = tridiagonalize(_check_symmetric(H))
    return np.array([0.5 * sum(bisect_eigenvalue(d, e, i + 1)) for i in range(count)])


def canonical_sign(v, tol=None):
    """Flip v so that its first entry (from index 0) that is not negligible is positive."""
    v = np.asarray(v, dtype=float)
    if tol is None:
        tol = 8 * EPS * v.size * max(np.max(np.abs(v), initial=0.0), 1e-300)
    for x in v:
        if abs(x) > tol:
            return v if x > 0 else -v
    return v


def min_eigenpair(H, eps1, seed=0, max_iter=60, restarts=3):
    """Unit eigenvector for the smallest eigenvalue of symmetric H.

    Meets ``||v - v1|| <= eps1`` whenever the gap between the two smallest
    eigenvalues exceeds ``2 * eps1``; with a smaller gap the result is best
    effort. ``v`` is returned with :func:`canonical_sign`.

    Raises
    ------
    InvalidInput
        If ``H`` is not symmetric to within 1e-10.
    ConvergenceFailure
        If inverse iteration neither reaches the tangent bound nor stalls
        at rounding level within ``max_iter`` steps on every restart. The
        best iterate is attached as ``exc.best``.
    """
    if not eps1 > 0:
        raise ValueError("eps1 must be positive")
    H = _check_symmetric(H)
    n = H.shape[0]
    if n == 1:
        return EigenPair(float(H[0, 0]), np.ones(1), 0.0, np.inf, 0)

    d, e = tridiagonalize(H)
    lo1, hi1 = bisect_eigenvalue(d, e, 1, abs_tol=eps1 * eps1)
    lo2, hi2 = bisect_eigenvalue(d, e, 2, abs_tol=eps1 * eps1)
    lam1 = 0.5 * (lo1 + hi1)
    gap = max(0.5 * (lo2 + hi2) - lam1, 0.0)
    hnorm = np.linalg.norm(H)
    noise = 16 * n * EPS * max(hnorm, 1e-300)

    rng = make_rng(seed)
    best = None
    for attempt in range(restarts + 1):
        shift = lo1
        for bump in range(8):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", LinAlgWarning)
                lu = lu_factor(H - shift * np.eye(n), check_finite=False)
            if np.all(np.isfinite(lu[0])) and np.min(np.abs(np.diag(lu[0]))) > 0:
                break
            shift -= noise * 4.0**bump
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        prev_step = np.inf
        for it in range(1, max_iter + 1):
            x = lu_solve(lu, v, check_finite=False)
            xnorm = np.linalg.norm(x)
            if not np.isfinite(xnorm) or xnorm == 0.0:
                break
            x /= xnorm
            if x @ v < 0:
                x = -x
            step = np.linalg.norm(x - v)
            v = x
            Hv = H @ v
            rq = float(v @ Hv)
            residual = float(np.linalg.norm(Hv - rq * v))
            if best is None or residual < best[2]:
                best = (rq, v.copy(), residual, it)
            tan_theta = residual / gap if gap > 0 else np.inf
            # a small residual alone says nothing about the angle when the gap
            # is tiny; it only ends the run once the steps stop contracting
            stalled = residual <= noise and (gap <= 2 * eps1 or step >= 0.5 * prev_step)
            if tan_theta <= eps1 or step <= 4 * np.sqrt(n) * EPS or stalled:
                return EigenPair(rq, canonical_sign(v), residual, gap, it)
            prev_step = step
    rq, v, residual, it = best if best else (lam1, np.full(n, np.nan), np.inf, 0)
    raise ConvergenceFailure(
        "inverse iteration did not converge",
        best=EigenPair(rq, canonical_sign(v), residual, gap, it),
        diagnostics={"lambda_min": rq, "eigen_residual": residual},
    )


def _check_nodes(nodes, threshold):
    x = np.asarray(nodes, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise InvalidInput("nodes must be a non-empty 1-d array")
    if x.size > 1:
        srt = np.sort(x)
        gaps = np.diff(srt)
        if np.min(gaps) < threshold:
            i = int(np.argmin(gaps))
            raise DegenerateNodes(
                f"nodes {srt[i]!r} and {srt[i + 1]!r} closer than {threshold:g}"
            )
    return x


def solve_vandermonde(nodes, rhs, threshold=NODE_THRESHOLD):
    """Solve ``V w = rhs`` with ``V[i, j] = nodes[j]**i`` in O(k^2).

    This is the moment system: row i says ``sum_j w_j nodes_j**i = rhs_i``.
    Björck-Pereyra dual algorithm (Newton-basis divided differences).
    """
    x = _check_nodes(nodes, threshold)
    b = np.array(rhs, dtype=float)
    if b.shape != x.shape:
        raise InvalidInput(f"rhs has shape {b.shape}, nodes {x.shape}")
    n = x.size - 1
    for k in range(n):
        b[k + 1 :] -= x[k] * b[k:n]
    for k in range(n - 1, -1, -1):
        b[k + 1 :] /= x[k + 1 :] - x[: n - k]
        b[k:n] -= b[k + 1 :]
    return b


def solve_vandermonde_transposed(nodes, values, threshold=NODE_THRESHOLD):
    """Solve ``V^T a = values``: monomial coefficients of the interpolant.

    Björck-Pereyra primal algorithm (Newton divided differences, then
    conversion to the monomial basis).
    """
    x = _check_nodes(nodes, threshold)
    a = np.array(values, dtype=float)
    if a.shape != x.shape:
        raise InvalidInput(f"values has shape {a.shape}, nodes {x.shape}")
    n = x.size - 1
    for k in range(n):
        a[k + 1 :] = (a[k + 1 :] - a[k:n]) / (x[k + 1 :] - x[: n - k])
    for k in range(n - 1, -1, -1):
        a[k:n] -= x[k] * a[k + 1 :]
    return a


def vandermonde_residual(nodes, w, rhs):
    """``||V w - rhs||_inf`` for the moment-system Vandermonde matrix."""
    x = np.asarray(nodes, dtype=float)
    V = x[None, :] ** np.arange(x.size)[:, None]
    return float(np.max(np.abs(V @ np.asarray(w) - np.asarray(rhs))))


def vandermonde_inverse_inf_norm(nodes, threshold=NODE_THRESHOLD):
    """Closed-form ``||V^{-1}||_inf`` for distinct non-negative nodes.

    With ``q(z) = prod (z - x_i)`` the value is
    ``|q(-1)| / min_i (1 + x_i) |q'(x_i)|``.
    """
    x = _check_nodes(nodes, threshold)
    if np.any(x < 0):
        raise InvalidInput("closed form needs non-negative nodes")
    q_at_minus_one = np.prod(-1.0 - x)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    dq = np.prod(diff, axis=1)
    return float(abs(q_at_minus_one) / np.min((1.0 + x) * np.abs(dq)))
