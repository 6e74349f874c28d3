"""Histogram to moments (Pascal transform), Hankel matrices, sample planning."""

from __future__ import annotations

import math

import numpy as np

from .errors import InfeasibleSampleSize
from .model import Histogram

__all__ = [
    "pascal_matrix",
    "histogram_to_moments",
    "build_hankel",
    "hankel_determinant",
    "plan_sample_size",
    "DEFAULT_SAMPLE_CAP",
]

DEFAULT_SAMPLE_CAP = 10**15


def _binomial_row(n):
    """C(n, 0..n) by the multiplicative recurrence, in floating point."""
    row = np.empty(n + 1)
    row[0] = 1.0
    for i in range(1, n + 1):
        row[i] = row[i - 1] * (n - i + 1) / i
    return np.round(row)


def pascal_matrix(k, exact=False):
    """The (2k+1) x (2k+1) upper-triangular map from histogram to moments.

    ``P[i, j] = C(j, i) / C(2k, i)`` for ``j >= i``. Binomials come from the
    multiplicative recurrence (exact integers in double precision up to about
    k = 25); ``exact=True`` uses integer arithmetic and rounds each quotient
    once.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k
    P = np.zeros((n + 1, n + 1))
    if exact:
        for j in range(n + 1):
            for i in range(j + 1):
                P[i, j] = math.comb(j, i) / math.comb(n, i)
        return P
    top = _binomial_row(n)
    for j in range(n + 1):
        P[: j + 1, j] = _binomial_row(j) / top[: j + 1]
    return P


def histogram_to_moments(h, k=None):
    """Empirical moments ``Pas @ h`` from a histogram of 2k-snapshots.

    ``h`` is a :class:`Histogram` or an already-normalized frequency vector of
    length 2k+1 (e.g. an exact expected histogram).
    """
    if isinstance(h, Histogram):
        m, freq = h.m, h.normalized()
    else:
        freq = np.asarray(h, dtype=float)
        m = freq.size - 1
        if abs(freq.sum() - 1.0) > 1e-9:
            raise ValueError("frequency vector must sum to 1")
    if m % 2:
        raise ValueError(f"snapshot length m={m} is odd; need m = 2k")
    if k is not None and m != 2 * k:
        raise ValueError(f"snapshot length m={m} does not equal 2k={2 * k}")
    mu = pascal_matrix(m // 2) @ freq
    mu[0] = 1.0
    return mu


def build_hankel(mu, k=None):
    """(k+1) x (k+1) Hankel matrix with entry (i, j) = mu[i + j]."""
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or mu.size % 2 == 0:
        raise ValueError(f"need 2k+1 moments, got {mu.size}")
    if k is not None and mu.size != 2 * k + 1:
        raise ValueError(f"need {2 * k + 1} moments for k={k}, got {mu.size}")
    n = mu.size // 2 + 1
    idx = np.arange(n)
    return mu[idx[:, None] + idx[None, :]]


def hankel_determinant(mu):
    """Determinant of the Hankel matrix of ``mu``: a diagnostic, not a rank test."""
    return float(np.linalg.det(build_hankel(mu)))


def plan_sample_size(k, eps, delta, cap=DEFAULT_SAMPLE_CAP):
    """Number of 2k-snapshots giving all moments within ``eps`` w.p. >= 1 - delta.

    Chains the per-bin Hoeffding bound with ``||Pas||_2 <= 6**k``: each bin is
    held to ``t = eps / (6**k sqrt(2k+1))`` and
    ``s = ceil(ln(4k / delta) / (2 t**2))``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    t = eps / (6.0**k * math.sqrt(2 * k + 1))
    s = math.log(4 * k / delta) / (2 * t * t)
    if not math.isfinite(s) or s > cap:
        raise InfeasibleSampleSize(f"required sample size {s:.3g} exceeds cap {cap:.3g}")
    # a few ulps of slack so exact-integer results do not round up
    return max(1, math.ceil(s * (1 - 8 * np.finfo(float).eps)))
