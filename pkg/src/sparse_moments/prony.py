"""Prony-style identification of a k-coin mixture from 2k-snapshot statistics.

Pipeline: histogram -> moments -> Hankel -> smallest eigenvector -> roots of
its polynomial -> projection onto [0, 1] -> Vandermonde solve for weights ->
rectification onto the simplex.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeDeficient, InvalidInput, SparseMomentsError
from .linalg import min_eigenpair, solve_vandermonde, vandermonde_residual
from .model import MixtureModel
from .moments import build_hankel, histogram_to_moments, plan_sample_size
from .roots import find_roots, project_roots

__all__ = [
    "LearnConfig",
    "LearnReport",
    "rectify_weights",
    "learn_coin_mixture",
    "learn_from_exact_moments",
    "default_fp_floor",
    "DIAGNOSTIC_KEYS",
]

FP_FLOOR_ENV = "SPARSE_MOMENTS_FP_FLOOR"
DIAGNOSTIC_KEYS = (
    "lambda_min",
    "eigen_residual",
    "root_residual_max",
    "vandermonde_residual",
    "rectified_mass",
    "tolerance_clamped",
)


def default_fp_floor():
    """Tolerance floor: 64 machine epsilons unless overridden by the environment."""
    raw = os.environ.get(FP_FLOOR_ENV)
    if raw:
        value = float(raw)
        if not value > 0:
            raise ValueError(f"{FP_FLOOR_ENV} must be positive, got {raw!r}")
        return value
    return 64 * np.finfo(float).eps


@dataclass(frozen=True)
class LearnConfig:
    """Inputs of the learner and the tolerances derived from them.

    ``eps1`` (eigenvector accuracy) and ``eps2`` (root accuracy) default to
    ``w_min 2**-gamma (zeta/16)**(2k)`` and ``2**-gamma (zeta/2)**k / (6k)``,
    raised to ``fp_floor`` when they underflow double precision.
    """

    k: int
    zeta: float
    w_min: float
    gamma: float = 20.0
    delta: float = 0.01
    eps1: float | None = None
    eps2: float | None = None
    fp_floor: float | None = None
    seed: int = 0
    clamped: bool = field(init=False, default=False)

    def __post_init__(self):
        k, zeta, w_min = self.k, self.zeta, self.w_min
        if int(k) != k or k < 1:
            raise InvalidInput(f"k must be a positive integer, got {k}")
        if not zeta > 0:
            raise InvalidInput(f"zeta must be positive, got {zeta}")
        if k >= 2 and zeta > 1.0 / (k - 1) * (1 + 1e-12):
            raise InvalidInput(f"zeta={zeta} exceeds 1/(k-1)={1 / (k - 1):.6g}")
        if not 0 < w_min <= 1.0 / k * (1 + 1e-12):
            raise InvalidInput(f"w_min={w_min} must lie in (0, 1/k]")
        if not self.gamma >= 1:
            raise InvalidInput(f"gamma must be >= 1, got {self.gamma}")
        if not 0 < self.delta < 1:
            raise InvalidInput(f"delta must lie in (0, 1), got {self.delta}")
        floor = self.fp_floor if self.fp_floor is not None else default_fp_floor()
        object.__setattr__(self, "fp_floor", floor)

        clamped = False
        if self.eps1 is None:
            theory = self.eps1_theory
            clamped |= theory < floor
            object.__setattr__(self, "eps1", max(theory, floor))
        if self.eps2 is None:
            theory = self.eps2_theory
            clamped |= theory < floor
            object.__setattr__(self, "eps2", max(theory, floor))
        if not (self.eps1 > 0 and self.eps2 > 0):
            raise InvalidInput("eps1 and eps2 must be positive")
        object.__setattr__(self, "clamped", clamped)

    @property
    def eps1_theory(self):
        return self.w_min * 2.0**-self.gamma * (self.zeta / 16) ** (2 * self.k)

    @property
    def eps2_theory(self):
        return 2.0**-self.gamma * (self.zeta / 2) ** self.k / (6 * self.k)

    @property
    def moment_accuracy(self):
        """Moment error that keeps the Hankel within w_min 2**-gamma (zeta/16)**(4k)."""
        hankel_eps = self.w_min * 2.0**-self.gamma * (self.zeta / 16) ** (4 * self.k)
        return hankel_eps / (self.k + 1)

    def planned_sample_size(self, cap=None):
        kwargs = {} if cap is None else {"cap": cap}
        return plan_sample_size(self.k, self.moment_accuracy, self.delta, **kwargs)


@dataclass(frozen=True, eq=False)
class LearnReport:
    model: MixtureModel
    diagnostics: dict

    def to_dict(self):
        return {
            "status": "ok",
            "model": self.model.to_dict(),
            "diagnostics": {key: float(self.diagnostics[key]) for key in DIAGNOSTIC_KEYS},
        }


def rectify_weights(wprime):
    """Project a sum-one weight vector onto the simplex in linear time.

    Negative entries are zeroed and the non-negative ones rescaled by
    ``1 + W_neg / W_pos``, which moves no entry by more than
    ``k * ||w' - w||_inf`` for any simplex point ``w``.
    """
    wp = np.asarray(wprime, dtype=float)
    if wp.ndim != 1 or wp.size == 0 or not np.all(np.isfinite(wp)):
        raise InvalidInput("weights must be a finite non-empty 1-d array")
    if abs(wp.sum() - 1.0) > 1e-9:
        raise InvalidInput(f"weights must sum to 1, got {wp.sum()!r}")
    negative = wp < 0
    if negative.all():
        raise InvalidInput("all weights are negative")
    w_pos = wp[~negative].sum()
    if w_pos == 0:
        raise InvalidInput("no positive weight to rescale")
    # 1 + W_neg/W_pos == 1/W_pos when the input sums to 1; dividing keeps
    # the output on the simplex to rounding even if the sum is slightly off
    return np.where(negative, 0.0, wp / w_pos)


def _stage(name, diagnostics, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SparseMomentsError as exc:
        exc.stage = exc.stage or name
        for key, value in diagnostics.items():
            exc.diagnostics.setdefault(key, value)
        raise


def _learn(cfg, mu):
    k = cfg.k
    diag = {key: math.nan for key in DIAGNOSTIC_KEYS}
    diag["tolerance_clamped"] = float(cfg.clamped)

    H = build_hankel(mu, k)
    pair = _stage("eigen", diag, min_eigenpair, H, cfg.eps1, seed=cfg.seed)
    diag["lambda_min"] = float(pair.lam)
    diag["eigen_residual"] = float(pair.residual)
    if pair.gap <= 2 * cfg.eps1:
        # several (numerically) null directions: fewer than k support points
        raise DegreeDeficient(
            f"smallest eigenvalue not isolated (gap {pair.gap:.3g} <= 2 eps1)",
            stage="eigen",
            diagnostics=diag,
        )

    rs = _stage("roots", diag, find_roots, pair.v, cfg.eps2)
    diag["root_residual_max"] = float(np.max(rs.residuals))
    alpha = project_roots(rs)

    rhs = mu[:k]
    wprime = _stage("weights", diag, solve_vandermonde, alpha, rhs)
    diag["vandermonde_residual"] = vandermonde_residual(alpha, wprime, rhs)

    w = _stage("rectify", diag, rectify_weights, wprime)
    diag["rectified_mass"] = float(np.sum(np.clip(-wprime, 0.0, None)))
    return LearnReport(MixtureModel(alpha, w), diag)


def learn_from_exact_moments(cfg, mu):
    """Run the identification pipeline on a given moment vector (mu_0..mu_2k)."""
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or mu.size != 2 * cfg.k + 1:
        raise InvalidInput(
            f"need {2 * cfg.k + 1} moments for k={cfg.k}, got {mu.size}", stage="input"
        )
    if abs(mu[0] - 1.0) > 1e-9:
        raise InvalidInput(f"mu_0 must be 1, got {mu[0]!r}", stage="input")
    return _learn(cfg, mu)


def learn_coin_mixture(cfg, h):
    """Identify a k-coin mixture from a histogram of 2k-snapshots.

    Parameters
    ----------
    cfg : LearnConfig
    h : Histogram or array_like
        Observed histogram, or a normalized frequency vector of length 2k+1.

    Returns
    -------
    LearnReport
        The learned model with diagnostics. Solver failures raise
        :class:`~sparse_moments.errors.SparseMomentsError` subclasses whose
        ``stage`` names the failing step; no model is fabricated.
    """
    try:
        mu = histogram_to_moments(h, cfg.k)
    except ValueError as exc:
        raise InvalidInput(str(exc), stage="moments") from exc
    return _learn(cfg, mu)
