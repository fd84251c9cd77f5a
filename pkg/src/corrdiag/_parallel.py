"""Thread-count plumbing shared by the Monte Carlo and enumeration loops."""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "CORRDIAG_THREADS"


def thread_count() -> int:
    """Worker threads requested via the CORRDIAG_THREADS env var (default 1)."""
    raw = os.environ.get(ENV_VAR, "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    return max(1, value)


def parallel_map(fn, jobs):
    """Map fn over jobs, threaded when CORRDIAG_THREADS > 1.

    Results come back in job order, so aggregation downstream is
    deterministic no matter how the work was scheduled.
    """
    jobs = list(jobs)
    workers = thread_count()
    if workers == 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))
