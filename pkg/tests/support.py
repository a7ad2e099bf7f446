"""Randomized instance generators shared across the test modules.

Log-concave pmfs are produced by exponentiating concave log-weight
sequences (increments sorted to be non-increasing); forcing every
increment non-positive makes the pmf monotone decreasing, and mirroring a
monotone half builds the symmetric families.
"""

import numpy as np

from lclc.lattice import LatticePMF, normalize


def random_monotone_log_concave(rng, max_support=60, min_support=2,
                                max_step=3.0, direction=None) -> LatticePMF:
    """Monotone log-concave pmf with support size in [min_support, max_support]."""
    n = int(rng.integers(min_support, max_support + 1))
    if n == 1:
        return normalize([1.0])
    steps = -np.sort(rng.uniform(0.0, max_step, n - 1))  # <= 0, non-increasing
    log_w = np.concatenate(([0.0], np.cumsum(steps)))
    if direction is None:
        direction = "decreasing" if rng.random() < 0.5 else "increasing"
    if direction == "increasing":
        log_w = log_w[::-1]
    return normalize(np.exp(log_w - log_w.max()), int(rng.integers(-5, 6)))


def random_log_concave(rng, max_support=60, min_support=2, max_step=2.0) -> LatticePMF:
    """Log-concave pmf, not necessarily monotone (peak anywhere)."""
    n = int(rng.integers(min_support, max_support + 1))
    steps = np.sort(rng.uniform(-max_step, max_step, n - 1))[::-1]
    log_w = np.concatenate(([0.0], np.cumsum(steps)))
    return normalize(np.exp(log_w - log_w.max()), int(rng.integers(-5, 6)))


def _monotone_half(rng, half, max_step):
    steps = -np.sort(rng.uniform(0.0, max_step, half))
    return np.cumsum(np.concatenate(([0.0], steps)))


def random_symmetric_log_concave(rng, max_half=25, max_step=2.0) -> LatticePMF:
    """Log-concave pmf symmetric about an integer center."""
    half = int(rng.integers(1, max_half + 1))
    log_half = _monotone_half(rng, half, max_step)
    log_w = np.concatenate((log_half[:0:-1], log_half))
    center = int(rng.integers(-3, 4))
    return normalize(np.exp(log_w - log_w.max()), center - half)


def random_half_integer_symmetric(rng, max_half=25, max_step=2.0) -> LatticePMF:
    """Log-concave pmf symmetric about a half-integer (even support size)."""
    half = int(rng.integers(1, max_half + 1))
    log_half = _monotone_half(rng, half - 1, max_step) if half > 1 else np.zeros(1)
    log_w = np.concatenate((log_half[::-1], log_half))
    return normalize(np.exp(log_w - log_w.max()), int(rng.integers(-3, 4)) - half)


def random_pmf(rng, max_support=60, min_support=1) -> LatticePMF:
    """Arbitrary pmf with positive weights, no structural constraints."""
    n = int(rng.integers(min_support, max_support + 1))
    log_w = rng.uniform(-8.0, 0.0, n)
    return normalize(np.exp(log_w), int(rng.integers(-5, 6)))
