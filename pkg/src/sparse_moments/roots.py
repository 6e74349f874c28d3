"""Roots of the kernel polynomial and their projection onto [0, 1].

Polynomials are coefficient arrays in increasing degree: ``p[j]`` multiplies
``z**j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DegreeDeficient

__all__ = [
    "RootSet",
    "find_roots",
    "project_roots",
    "polyval",
    "poly_from_roots",
    "LEADING_COEFF_THRESHOLD",
]

EPS = np.finfo(float).eps
LEADING_COEFF_THRESHOLD = 1e-10


@dataclass(frozen=True, eq=False)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    iterations: int = 0

    def __len__(self):
        return self.roots.size


def polyval(p, z):
    """Horner evaluation of increasing-degree coefficients ``p`` at ``z``."""
    z = np.asarray(z)
    out = np.zeros_like(z, dtype=np.result_type(z, p, float))
    for c in p[::-1]:
        out = out * z + c
    return out


def poly_from_roots(roots):
    """Monic coefficients (increasing degree) of ``prod (z - r)``."""
    p = np.ones(1, dtype=np.result_type(np.asarray(roots), float))
    for r in roots:
        p = np.concatenate(([0], p)) - r * np.concatenate((p, [0]))
    return p


def find_roots(p, eps2, max_iter=500):
    """All k roots of the degree-k polynomial ``p`` by Aberth iteration.

    The polynomial is normalized to monic and rescaled so that roots in the
    disc of radius (2k-1)/(2k-2) land in the unit disc; starting points sit
    on a circle just outside the Cauchy root bound. A root is frozen once its
    correction drops below the scaled tolerance or its residual is at the
    rounding level of Horner's rule.

    Raises
    ------
    DegreeDeficient
        If ``|p[k]| < 1e-10 * max |p|``.
    ConvergenceFailure
        On hitting ``max_iter``; ``exc.best`` holds the last RootSet.
    """
    p = np.asarray(p, dtype=float)
    k = p.size - 1
    if k < 1:
        raise DegreeDeficient("constant polynomial has no roots")
    if not eps2 > 0:
        raise ValueError("eps2 must be positive")
    top = np.max(np.abs(p))
    if not np.isfinite(top) or abs(p[-1]) < LEADING_COEFF_THRESHOLD * top:
        raise DegreeDeficient(
            f"leading coefficient {p[-1]:.3g} is negligible against {top:.3g}"
        )
    monic = p / p[-1]
    if k == 1:
        root = np.array([-monic[0] + 0j])
        return RootSet(root, np.abs(polyval(p, root)), 0)

    scale = (2 * k - 1) / (2 * k - 2)
    g = monic * scale ** np.arange(k + 1)
    g /= g[-1]
    dg = g[1:] * np.arange(1, k + 1)
    tol = eps2 / scale

    cauchy = 1.0 + np.max(np.abs(g[:-1]))
    angles = 2 * np.pi * np.arange(k) / k + 0.4
    z = 1.05 * cauchy * np.exp(1j * angles)
    active = np.ones(k, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        zi = z[idx]
        pz = polyval(g, zi)
        dpz = polyval(dg, zi)
        ratio = np.divide(pz, dpz, out=np.zeros_like(pz), where=dpz != 0)
        diff = zi[:, None] - z[None, :]
        diff[np.arange(idx.size), idx] = np.inf
        repulsion = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - ratio * repulsion
        step = np.divide(ratio, denom, out=ratio.copy(), where=denom != 0)
        z[idx] = zi - step
        # Horner's running error bound: below it p(z) is pure rounding
        noise = 4 * k * EPS * polyval(np.abs(g), np.abs(zi))
        done = (np.abs(step) <= tol) | (np.abs(pz) <= noise)
        active[idx[done]] = False
        if not active.any():
            break
    roots = z * scale
    result = RootSet(roots, np.abs(polyval(p, roots)), it)
    if active.any():
        raise ConvergenceFailure(
            f"Aberth iteration left {int(active.sum())} of {k} roots unconverged",
            best=result,
            diagnostics={"root_residual_max": float(np.max(result.residuals))},
        )
    return result


def project_roots(rs):
    """Real parts clamped to [0, 1], sorted ascending."""
    roots = rs.roots if isinstance(rs, RootSet) else np.asarray(rs)
    return np.sort(np.clip(np.real(roots).astype(float), 0.0, 1.0))
