"""Ordinary least squares in log-log space."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import FewerThanTwoPoints, NonPositiveCoordinate


@dataclass(frozen=True)
class PowerLawFit:
    """Result of regressing ``log y`` on ``log x`` (natural logs).

    ``stderr_exponent`` is NaN for two-point fits, which leave no residual
    degrees of freedom.
    """

    exponent: float
    log_intercept: float
    r_squared: float
    n_points: int
    stderr_exponent: float

    @property
    def prefactor(self) -> float:
        return math.exp(self.log_intercept)

    def predict(self, x):
        return np.exp(self.log_intercept) * np.asarray(x, dtype=float) ** self.exponent


def fit_loglog(x: Iterable[float], y: Iterable[float] | None = None) -> PowerLawFit:
    """Fit ``y = c * x**k`` by unweighted OLS on ``(log x, log y)``.

    Accepts either two coordinate arrays or a single sequence of ``(x, y)`` pairs.
    Constant ``y`` is treated as a perfect zero-exponent power law
    (``exponent = 0``, ``r_squared = 1``).
    """
    if y is None:
        pts = np.asarray(list(x) if not isinstance(x, np.ndarray) else x, dtype=float)
        if pts.size == 0:
            raise FewerThanTwoPoints("no points to fit")
        pts = pts.reshape(-1, 2)
        xs, ys = pts[:, 0], pts[:, 1]
    else:
        xs = np.asarray(x, dtype=float).ravel()
        ys = np.asarray(y, dtype=float).ravel()
        if xs.shape != ys.shape:
            raise ValueError(f"x and y differ in length ({xs.size} vs {ys.size})")

    n = xs.size
    if n < 2:
        raise FewerThanTwoPoints(f"need at least 2 points, got {n}")
    if not (np.all(xs > 0) and np.all(ys > 0)):
        raise NonPositiveCoordinate("all coordinates must be strictly positive")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise ValueError("coordinates must be finite")

    lx = np.log(xs)
    ly = np.log(ys)
    dx = lx - lx.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise FewerThanTwoPoints("need at least 2 distinct x values")

    if np.all(ly == ly[0]):
        slope = 0.0
        intercept = float(ly[0])
        r2 = 1.0
        resid = np.zeros(n)
    else:
        dy = ly - ly.mean()
        sxy = float(dx @ dy)
        syy = float(dy @ dy)
        slope = sxy / sxx
        intercept = float(ly.mean() - slope * lx.mean())
        r2 = min(1.0, max(0.0, sxy * sxy / (sxx * syy)))
        resid = ly - (intercept + slope * lx)

    if n > 2:
        stderr = math.sqrt(float(resid @ resid) / (n - 2) / sxx)
    else:
        stderr = math.nan
    return PowerLawFit(
        exponent=slope,
        log_intercept=intercept,
        r_squared=r2,
        n_points=n,
        stderr_exponent=stderr,
    )
