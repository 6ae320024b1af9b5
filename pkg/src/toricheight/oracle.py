"""Monte-Carlo cross-check of roof integrals.

The roof is rebuilt here in floating point, independently of the exact
construction: qhull computes the hull of the lifted points together with
one point far below, and the roof at ``x`` is the minimum over the upper
facets of the facet's affine function.  Points are drawn uniformly from
the bounding box of ``Q_A``; those outside ``Q_A`` count as zero, which
gives an unbiased estimate of the integral with an honest standard error.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, sqrt
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull

__all__ = ["FloatRoof", "MonteCarloResult", "estimate_integral", "estimate_weighted",
           "agrees"]

# slack for comparisons made in floating point
_TOL = 1e-9


class FloatRoof:
    """Floating-point roof of ``(points, heights)``, vectorized over samples."""

    def __init__(self, points, heights):
        P = np.asarray([[float(x) for x in p] for p in points], dtype=float)
        t = np.asarray([float(h) for h in heights], dtype=float)
        if P.ndim != 2 or len(P) != len(t):
            raise ValueError("points and heights do not match")
        self.dim = P.shape[1]
        self.lo = P.min(axis=0)
        self.hi = P.max(axis=0)
        if self.dim == 1:
            self._domain = None
        else:
            dom = ConvexHull(P)
            self._domain = dom.equations  # rows (u, c) with u.x + c <= 0 inside
        spread = float(np.ptp(t)) if len(t) > 1 else 0.0
        width = float(np.max(self.hi - self.lo)) or 1.0
        below = np.append(P.mean(axis=0), t.min() - 10.0 * (spread + 1.0) * (1.0 + width))
        lifted = np.vstack([np.column_stack([P, t]), below])
        eq = ConvexHull(lifted).equations
        up = eq[eq[:, self.dim] > _TOL]
        # upper facet u.x + w y + c = 0  gives  y = -(u.x + c) / w
        self._grad = -up[:, :self.dim] / up[:, [self.dim]]
        self._const = -up[:, self.dim + 1] / up[:, self.dim]

    @property
    def box_volume(self) -> float:
        return float(np.prod(self.hi - self.lo))

    def inside(self, X: np.ndarray) -> np.ndarray:
        if self._domain is None:
            return (X[:, 0] >= self.lo[0] - _TOL) & (X[:, 0] <= self.hi[0] + _TOL)
        return np.all(X @ self._domain[:, :-1].T + self._domain[:, -1] <= _TOL, axis=1)

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.min(X @ self._grad.T + self._const, axis=1)


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    std_error: float
    samples: int
    seed: int | None

    def z_score(self, exact: float) -> float:
        diff = abs(self.estimate - exact)
        if self.std_error == 0:
            return 0.0 if diff <= _float_slack(exact) else float("inf")
        return diff / self.std_error


def _float_slack(exact: float) -> float:
    return 1e-9 * (1.0 + abs(exact))


def agrees(result: MonteCarloResult, exact: float, sigmas: float = 3.0) -> bool:
    """``|estimate - exact| <= sigmas * SE`` up to floating-point rounding."""
    return abs(result.estimate - exact) <= sigmas * result.std_error + _float_slack(exact)


def estimate_weighted(roofs: Sequence[tuple[FloatRoof, float]], samples: int = 100_000,
                      seed: int | None = 0, chunk: int = 50_000) -> MonteCarloResult:
    """Estimate ``sum_k c_k * integral of f_k`` over their common domain.

    All roofs must share one domain; they are evaluated on the same samples
    so the standard error accounts for their correlation.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    if not roofs:
        return MonteCarloResult(0.0, 0.0, samples, seed)
    ref = roofs[0][0]
    rng = np.random.default_rng(seed)
    vol = ref.box_volume
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        X = ref.lo + rng.random((k, ref.dim)) * (ref.hi - ref.lo)
        mask = ref.inside(X)
        y = np.zeros(k)
        if mask.any():
            Xin = X[mask]
            y[mask] = sum(c * f(Xin) for f, c in roofs)
        y *= vol
        total += float(y.sum())
        total_sq += float(np.dot(y, y))
        done += k
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return MonteCarloResult(mean, sqrt(var / samples), samples, seed)


def estimate_integral(points, heights, samples: int = 100_000,
                      seed: int | None = 0) -> MonteCarloResult:
    """Monte-Carlo estimate of the integral of the roof of ``(points, heights)``."""
    return estimate_weighted([(FloatRoof(points, heights), 1.0)], samples, seed)


def chow_scale(n: int, lattice_factor: int = 1) -> float:
    """Factor turning a roof integral into a Chow weight."""
    return factorial(n + 1) / lattice_factor
