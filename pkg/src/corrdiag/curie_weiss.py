"""Curie-Weiss spin systems: exact sampling, finite-size pair correlation,
and the limiting correlation across the phase transition.

The model puts weight exp(beta * (sum of spins)^2 / (2n)) on each of the 2^n
sign vectors.  Everything here works through the law of the total spin
S = 2j - n, whose level weights binom(n, j) * exp(beta * S^2 / (2n)) are
handled in log-domain (the exponent grows like beta*n/2 and overflows naive
exponentials).

The limiting pair correlation is 0 up to beta = 1 and m(beta)^2 beyond it,
where m(beta) is the unique positive root of m = tanh(beta*m) — solved by
damped fixed-point iteration with a bisection fallback.  That consistency
equation is a standard mean-field reconstruction: it reproduces the
threshold at beta = 1, monotonicity in beta, and the limits 0 and 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, logsumexp

FIXED_POINT_TOL = 1e-12
MAX_SPINS = 100_000


def _check_params(n: int, beta: float) -> None:
    if n < 1:
        raise ValueError(f"spin count must be >= 1, got {n}")
    if n > MAX_SPINS:
        raise ValueError(f"spin count {n} exceeds the O(n) summation cap {MAX_SPINS}")
    if beta <= 0:
        raise ValueError(f"inverse temperature must be > 0, got {beta}")


@dataclass(frozen=True, eq=False)
class MagnetizationLaw:
    """Distribution of the total spin: levels s = 2j - n with probabilities."""

    n: int
    beta: float
    totals: np.ndarray
    probs: np.ndarray


@lru_cache(maxsize=512)
def magnetization_levels(n: int, beta: float) -> MagnetizationLaw:
    _check_params(n, beta)
    j = np.arange(n + 1)
    totals = 2 * j - n
    log_weights = (
        gammaln(n + 1)
        - gammaln(j + 1)
        - gammaln(n - j + 1)
        + beta * totals.astype(np.float64) ** 2 / (2.0 * n)
    )
    log_weights -= logsumexp(log_weights)
    return MagnetizationLaw(n, float(beta), totals, np.exp(log_weights))


@lru_cache(maxsize=512)
def _level_cdf(n: int, beta: float) -> np.ndarray:
    probs = magnetization_levels(n, beta).probs
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    return cdf


def pair_correlation(n: int, beta: float) -> float:
    """Exact correlation of two distinct spins at size n.

    E[x_1 x_2] = (n * E[(S/n)^2] - 1) / (n - 1), computed from the
    magnetization law.
    """
    if n < 2:
        raise ValueError("pairwise correlation needs at least two spins")
    law = magnetization_levels(n, beta)
    mean_square = float(np.sum(law.probs * (law.totals / n) ** 2))
    return (n * mean_square - 1.0) / (n - 1.0)


def spontaneous_magnetization(beta: float) -> float:
    """Positive root of m = tanh(beta*m) for beta > 1, else 0.

    Damped fixed-point iteration, with bisection as fallback when the
    iteration has not settled to FIXED_POINT_TOL (it slows down near the
    critical point where the root approaches 0).
    """
    if beta <= 0:
        raise ValueError(f"inverse temperature must be > 0, got {beta}")
    if beta <= 1.0:
        return 0.0
    m = 0.9
    for _ in range(200):
        updated = 0.5 * (m + math.tanh(beta * m))
        if abs(updated - m) < 0.1 * FIXED_POINT_TOL:
            return updated
        m = updated
    lo, hi = 1e-16, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if math.tanh(beta * mid) - mid > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < FIXED_POINT_TOL:
            break
    return 0.5 * (lo + hi)


def limiting_correlation(beta: float) -> float:
    """Large-n limit of the pair correlation: 0 below the transition,
    squared spontaneous magnetization above it."""
    m = spontaneous_magnetization(beta)
    return m * m


def sample_spins(n: int, beta: float, rng) -> np.ndarray:
    """One exact sample of the n spins as a +-1 float vector.

    Draws the total-spin level by inverse CDF, then places the +1 spins
    uniformly at random.  ``rng`` is anything numpy's default_rng accepts
    (a Generator passes through unchanged).
    """
    _check_params(n, beta)
    rng = np.random.default_rng(rng)
    cdf = _level_cdf(n, beta)
    level = int(np.searchsorted(cdf, rng.random(), side="right"))
    level = min(level, n)
    spins = np.full(n, -1.0)
    if level:
        spins[rng.permutation(n)[:level]] = 1.0
    return spins
