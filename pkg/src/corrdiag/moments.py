"""Moments of the limiting spectral distribution.

The even moment of order k is a sum over pair partitions of {1,...,k}:
each partition contributes its cube-section volume times c raised to
(k/2 - height).  Non-crossing partitions have volume 1 and height k/2, so
they contribute exactly 1 each and the c = 0 moments collapse to Catalan
numbers (the semicircle moments).  Odd moments vanish.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .partitions import enumerate_pair_partitions, height, is_crossing
from .volumes import VolumeCache, derive_volume_seed

DEFAULT_SAMPLES = 200_000

FORMS = ("all_partitions", "catalan_plus_crossing")


def catalan(m: int) -> int:
    if m < 0:
        raise ValueError(f"catalan index must be >= 0, got {m}")
    if m > 30:
        raise ValueError(f"catalan({m}) exceeds the supported exact range (m <= 30)")
    return math.comb(2 * m, m) // (m + 1)


def semicircle_moment(k: int) -> int:
    """k-th moment of the unit-variance semicircle: Catalan for even k, 0 for odd."""
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    return 0 if k % 2 else catalan(k // 2)


@dataclass(frozen=True)
class MomentValue:
    k: int
    c: float
    value: float
    std_error: float
    form_used: str


def limiting_moment(
    k: int,
    c: float,
    cache: VolumeCache | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    form: str = "all_partitions",
) -> MomentValue:
    """Moment of order k of the limiting distribution with correlation c.

    Only crossing partitions carry Monte Carlo error; their volume estimates
    come from ``cache`` when present (matching samples and seed), and are
    computed and stored otherwise.  ``samples=0`` demands a pre-populated
    cache.  The two evaluation forms share the crossing sum and differ only
    in how the non-crossing block is counted, so with a common cache they
    agree exactly.
    """
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    if k % 2:
        return MomentValue(k, float(c), 0.0, 0.0, form)
    if not 0.0 <= c <= 1.0:
        warnings.warn(
            f"c={c} is outside [0, 1]; no bundled matrix generator attains it",
            stacklevel=2,
        )

    if cache is None:
        cache = VolumeCache()
    half = k // 2
    crossing_sum = 0.0
    crossing_var = 0.0
    noncrossing_count = 0
    for index, p in enumerate(enumerate_pair_partitions(k)):
        if not is_crossing(p):
            noncrossing_count += 1
            continue
        weight = float(c) ** (half - height(p))
        if weight == 0.0:
            continue
        if samples == 0:
            estimate = cache.get(p.canonical())
            if estimate is None:
                raise ValueError(
                    f"volume cache has no entry for {p.canonical()} and samples=0; "
                    "run a volume pass first"
                )
        else:
            estimate = cache.ensure(p, samples, derive_volume_seed(seed, k, index))
        crossing_sum += weight * estimate.value
        crossing_var += (weight * estimate.std_error) ** 2

    if form == "catalan_plus_crossing":
        value = catalan(half) + crossing_sum
    else:
        value = noncrossing_count + crossing_sum
    return MomentValue(k, float(c), float(value), math.sqrt(crossing_var), form)
