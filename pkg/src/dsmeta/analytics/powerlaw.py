"""Continuous power-law fit (Hill maximum-likelihood estimator)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from dsmeta.errors import PowerLawError

MIN_TAIL = 10


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    stderr: float
    xmin: float
    n_tail: int
    # 1 - slope of the log-log complementary CDF, reported alongside the MLE
    ls_exponent: float | None = None


def _ccdf_slope(tail: np.ndarray) -> float | None:
    values, counts = np.unique(tail, return_counts=True)
    if len(values) < 2:
        return None
    # P(X >= v) for each distinct v
    ccdf = counts[::-1].cumsum()[::-1] / len(tail)
    slope = np.polyfit(np.log(values), np.log(ccdf), 1)[0]
    return float(slope)


def fit_power_law(sizes: Sequence[float], quantile: float = 0.5, min_tail: int = MIN_TAIL) -> PowerLawFit:
    """Fit p(x) ~ x^-alpha to the tail x >= xmin, with xmin the empirical ``quantile``.

    alpha = 1 + n / sum(ln(x_i / xmin)),  stderr = (alpha - 1) / sqrt(n).
    """
    x = np.asarray(sizes, dtype=float)
    if x.ndim != 1 or len(x) == 0:
        raise PowerLawError(f"need at least {min_tail} sizes at or above xmin, got none")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise PowerLawError("sizes must be finite and positive")
    if not 0.0 <= quantile < 1.0:
        raise PowerLawError(f"quantile must be in [0, 1), got {quantile}")
    xmin = float(np.quantile(x, quantile, method="lower"))
    tail = np.sort(x[x >= xmin])
    n = len(tail)
    if n < min_tail:
        raise PowerLawError(f"need at least {min_tail} sizes at or above xmin={xmin:g}, got {n}")
    log_sum = float(np.sum(np.log(tail / xmin)))
    if log_sum <= 0.0:
        raise PowerLawError(f"degenerate tail: all {n} sizes at or above xmin equal {xmin:g}")
    alpha = 1.0 + n / log_sum
    slope = _ccdf_slope(tail)
    return PowerLawFit(
        exponent=alpha,
        stderr=(alpha - 1.0) / math.sqrt(n),
        xmin=xmin,
        n_tail=n,
        ls_exponent=None if slope is None else 1.0 - slope,
    )


def pareto_sample(alpha: float, n: int, xmin: float = 1.0, rng: np.random.Generator | None = None) -> np.ndarray:
    """Inverse-CDF draws from a continuous Pareto with density exponent ``alpha``."""
    rng = rng if rng is not None else np.random.default_rng()
    u = rng.random(n)
    return xmin * (1.0 - u) ** (-1.0 / (alpha - 1.0))
