"""Mixture models on [0, 1], snapshot sampling and evaluation metrics."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.stats import binom

__all__ = [
    "MixtureModel",
    "Histogram",
    "make_rng",
    "separation",
    "exact_moments",
    "exact_histogram",
    "sample_histogram",
    "random_model",
    "matching_distance",
    "optimal_matching",
    "wasserstein",
    "load_model",
    "save_model",
    "load_histogram",
    "save_histogram",
]

WEIGHT_SUM_TOL = 1e-12


def _readonly(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class MixtureModel:
    """A k-point distribution on [0, 1]: coin biases ``alpha`` with weights ``w``.

    The stored form is canonical: ``alpha`` ascending, no repeated support
    points (exact duplicates are merged and their weights summed).
    """

    alpha: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        alpha = np.atleast_1d(np.asarray(self.alpha, dtype=float))
        w = np.atleast_1d(np.asarray(self.w, dtype=float))
        if alpha.ndim != 1 or alpha.shape != w.shape or alpha.size == 0:
            raise ValueError("alpha and w must be non-empty 1-d arrays of equal length")
        if not (np.all(np.isfinite(alpha)) and np.all(np.isfinite(w))):
            raise ValueError("alpha and w must be finite")
        if np.any(alpha < 0) or np.any(alpha > 1):
            raise ValueError(f"coin biases must lie in [0, 1], got {alpha}")
        if np.any(w < 0):
            raise ValueError(f"weights must be non-negative, got {w}")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1, got sum {w.sum()!r}")

        order = np.argsort(alpha, kind="stable")
        alpha, w = alpha[order], w[order]
        keep = np.concatenate(([True], np.diff(alpha) != 0))
        if not keep.all():
            groups = np.cumsum(keep) - 1
            w = np.bincount(groups, weights=w)
            alpha = alpha[keep]
        object.__setattr__(self, "alpha", _readonly(alpha))
        object.__setattr__(self, "w", _readonly(w))

    @property
    def k(self):
        return self.alpha.size

    @property
    def w_min(self):
        return float(self.w.min())

    def to_dict(self):
        return {"k": self.k, "alpha": self.alpha.tolist(), "w": self.w.tolist()}

    @classmethod
    def from_dict(cls, d):
        try:
            alpha, w = d["alpha"], d["w"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"model object needs 'alpha' and 'w': {exc}") from None
        if "k" in d and (int(d["k"]) != len(alpha) or len(alpha) != len(w)):
            raise ValueError("'k' does not match the lengths of 'alpha' and 'w'")
        return cls(alpha, w)

    def __repr__(self):
        return f"MixtureModel(alpha={self.alpha.tolist()}, w={self.w.tolist()})"


@dataclass(frozen=True, eq=False)
class Histogram:
    """Counts of "j heads out of m" over s snapshots."""

    m: int
    counts: tuple = field(default=())

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if self.m < 1 or len(counts) != self.m + 1:
            raise ValueError(f"need m >= 1 and m+1 counts, got m={self.m}, {len(counts)} counts")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be non-negative")
        if sum(counts) <= 0:
            raise ValueError("histogram is empty")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "m", int(self.m))

    @property
    def s(self):
        return sum(self.counts)

    def normalized(self):
        return np.asarray(self.counts, dtype=float) / self.s

    def to_dict(self):
        return {"m": self.m, "s": self.s, "counts": list(self.counts)}

    @classmethod
    def from_dict(cls, d):
        try:
            h = cls(int(d["m"]), d["counts"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"histogram object needs 'm' and 'counts': {exc}") from None
        if "s" in d and int(d["s"]) != h.s:
            raise ValueError("'s' does not equal the sum of 'counts'")
        return h


def make_rng(seed=None, *key):
    """Philox generator for ``seed``, optionally on the substream named by ``key``.

    Substreams for distinct integer keys are statistically independent, which
    lets trials run in any order (or in parallel) and still reproduce.
    """
    if isinstance(seed, np.random.Generator):
        if key:
            raise ValueError("substream keys need an integer seed")
        return seed
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    else:
        ss = np.random.SeedSequence(seed, spawn_key=tuple(int(x) for x in key))
    return np.random.Generator(np.random.Philox(ss))


def separation(model):
    """Minimum pairwise gap between support points (``inf`` for k = 1)."""
    if model.k == 1:
        return math.inf
    return float(np.min(np.diff(model.alpha)))


def exact_moments(model, n):
    """Moments ``mu_i = sum_j w_j alpha_j**i`` for i = 0..n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    powers = model.alpha[None, :] ** np.arange(n + 1)[:, None]
    mu = powers @ model.w
    mu[0] = 1.0
    return mu


def exact_histogram(model, m):
    """Expected normalized histogram of m-snapshots (the mixture of binomial pmfs)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    j = np.arange(m + 1)
    pmf = binom.pmf(j[:, None], m, model.alpha[None, :]) @ model.w
    return pmf / pmf.sum()


def sample_histogram(model, m, s, seed=None):
    """Draw s independent m-snapshots and return their histogram."""
    if m < 1 or s < 1:
        raise ValueError("m and s must be >= 1")
    rng = make_rng(seed)
    per_coin = rng.multinomial(s, model.w)
    counts = np.zeros(m + 1, dtype=np.int64)
    for a, n in zip(model.alpha, per_coin):
        if n:
            counts += np.bincount(rng.binomial(m, a, size=n), minlength=m + 1)
    return Histogram(m, counts.tolist())


def random_model(k, zeta, w_min, rng):
    """Uniform random model with separation >= zeta and weights >= w_min.

    Draws from exactly the distribution that rejection sampling (uniform
    biases, flat Dirichlet weights) would produce, without the loop: sorted
    uniforms on the shrunken interval are spread out by ``i * zeta``, and a
    flat Dirichlet is affinely mapped onto the constrained simplex.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if zeta < 0 or (k > 1 and (k - 1) * zeta > 1):
        raise ValueError(f"separation {zeta} infeasible for k={k} (need zeta <= 1/(k-1))")
    if w_min < 0 or k * w_min > 1:
        raise ValueError(f"w_min {w_min} infeasible for k={k} (need w_min <= 1/k)")
    rng = make_rng(rng)
    room = 1.0 - (k - 1) * zeta
    alpha = np.sort(rng.uniform(0.0, room, size=k)) + zeta * np.arange(k)
    alpha = np.minimum(alpha, 1.0)
    w = w_min + (1.0 - k * w_min) * rng.dirichlet(np.ones(k))
    w /= w.sum()
    return MixtureModel(alpha, w)


def optimal_matching(a, b):
    """Bottleneck matching between two equal-size multisets of (complex) numbers.

    Returns ``(d, perm)`` where ``d = min over permutations of max_i |a_i - b_perm[i]|``
    and ``perm`` attains it.
    """
    a = np.atleast_1d(np.asarray(a))
    b = np.atleast_1d(np.asarray(b))
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"size mismatch: {a.shape} vs {b.shape}")
    dist = np.abs(a[:, None] - b[None, :])
    levels = np.unique(dist)

    def match(t):
        graph = csr_matrix(dist <= t)
        perm = maximum_bipartite_matching(graph, perm_type="column")
        return perm if np.all(perm >= 0) else None

    lo, hi = 0, levels.size - 1
    best = match(levels[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        perm = match(levels[mid])
        if perm is None:
            lo = mid + 1
        else:
            hi, best = mid, perm
    return float(levels[hi]), best


def matching_distance(a, b):
    return optimal_matching(a, b)[0]


def wasserstein(model_a, model_b):
    """Exact 1-Wasserstein distance: integral of |CDF_a - CDF_b| over [0, 1]."""
    xs = np.union1d(model_a.alpha, model_b.alpha)
    cdf_a = np.cumsum(model_a.w)[np.searchsorted(model_a.alpha, xs, side="right") - 1]
    cdf_b = np.cumsum(model_b.w)[np.searchsorted(model_b.alpha, xs, side="right") - 1]
    # searchsorted index -1 means "before the first atom": CDF is 0 there
    cdf_a = np.where(xs < model_a.alpha[0], 0.0, cdf_a)
    cdf_b = np.where(xs < model_b.alpha[0], 0.0, cdf_b)
    return float(np.sum(np.abs(cdf_a - cdf_b)[:-1] * np.diff(xs)))


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _dump_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def load_model(path):
    return MixtureModel.from_dict(_load_json(path))


def save_model(model, path):
    _dump_json(model.to_dict(), path)


def load_histogram(path):
    return Histogram.from_dict(_load_json(path))


def save_histogram(hist, path):
    _dump_json(hist.to_dict(), path)
