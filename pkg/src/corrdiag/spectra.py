"""Eigenvalues, empirical moments, ensembles, and their CSV artifacts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._parallel import parallel_map
from .sampler import GeneratorSpec, build_matrix

TRACE_MOMENT_MAX_K = 12
TRACE_MOMENT_MAX_N = 500


@dataclass(frozen=True, eq=False)
class SpectralSample:
    n: int
    eigenvalues: np.ndarray  # ascending


def eigenvalues_symmetric(matrix: np.ndarray) -> SpectralSample:
    """All eigenvalues of a dense symmetric matrix, sorted ascending."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if not np.isfinite(matrix).all():
        raise ValueError("matrix entries must be finite")
    return SpectralSample(matrix.shape[0], np.linalg.eigvalsh(matrix))


def empirical_moments(sample: SpectralSample, kmax: int) -> np.ndarray:
    """Vector of (1/n) * sum(lambda^k) for k = 1..kmax."""
    if kmax < 1:
        raise ValueError(f"kmax must be >= 1, got {kmax}")
    out = np.empty(kmax)
    acc = np.ones_like(sample.eigenvalues)
    for k in range(1, kmax + 1):
        acc = acc * sample.eigenvalues
        out[k - 1] = acc.mean()
    return out


def trace_moment_direct(matrix: np.ndarray, k: int) -> float:
    """(1/n) * trace(M^k) by repeated matrix product — the eigenvalue-free route."""
    matrix = np.asarray(matrix, dtype=np.float64)
    n = matrix.shape[0]
    if not 1 <= k <= TRACE_MOMENT_MAX_K:
        raise ValueError(f"k must be in 1..{TRACE_MOMENT_MAX_K}, got {k}")
    if n > TRACE_MOMENT_MAX_N:
        raise ValueError(f"n={n} exceeds the cost guard {TRACE_MOMENT_MAX_N}")
    power = matrix
    for _ in range(k - 1):
        power = power @ matrix
    return float(np.trace(power)) / n


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Pooled results of one ensemble run.

    ``counts`` are the in-range histogram counts; together with underflow
    and overflow they sum to realizations * n exactly.
    """

    n: int
    realizations: int
    generator: GeneratorSpec
    seed: int
    kmax: int
    per_realization: np.ndarray  # (realizations, kmax)
    moments: np.ndarray
    moment_se: np.ndarray
    bin_edges: np.ndarray
    counts: np.ndarray
    underflow: int
    overflow: int

    def total_count(self) -> int:
        return int(self.counts.sum()) + self.underflow + self.overflow


def run_ensemble(
    n: int,
    gen: GeneratorSpec,
    realizations: int,
    kmax: int = 6,
    bins: int = 100,
    hist_range: tuple[float, float] = (-5.0, 5.0),
    seed: int = 0,
) -> EnsembleStats:
    """Sample, diagonalize and pool ``realizations`` independent matrices.

    Per-realization results are collected into arrays indexed by the
    realization number and reduced at the end, so the aggregate does not
    depend on scheduling order.
    """
    if realizations < 1:
        raise ValueError(f"realizations must be >= 1, got {realizations}")
    lo, hi = hist_range
    if not lo < hi:
        raise ValueError(f"histogram range must be increasing, got {hist_range}")
    edges = np.linspace(lo, hi, bins + 1)

    def one(r: int):
        sample = eigenvalues_symmetric(build_matrix(n, gen, realization=r, seed=seed))
        counts, _ = np.histogram(sample.eigenvalues, bins=edges)
        under = int((sample.eigenvalues < lo).sum())
        over = int((sample.eigenvalues > hi).sum())
        return empirical_moments(sample, kmax), counts, under, over

    results = parallel_map(one, range(realizations))
    per = np.stack([row for row, _, _, _ in results])
    counts = np.sum([c for _, c, _, _ in results], axis=0, dtype=np.int64)
    underflow = sum(u for _, _, u, _ in results)
    overflow = sum(o for _, _, _, o in results)
    moments = per.mean(axis=0)
    if realizations > 1:
        moment_se = per.std(axis=0, ddof=1) / math.sqrt(realizations)
    else:
        moment_se = np.zeros(kmax)
    return EnsembleStats(
        n, realizations, gen, seed, kmax, per, moments, moment_se,
        edges, counts, underflow, overflow,
    )


def concentration_probe(
    n_grid: tuple[int, ...],
    gen: GeneratorSpec,
    k: int,
    realizations: int,
    seed: int = 0,
) -> dict:
    """Fourth central moment of trace(X^k) along a size grid, with its
    log-log slope against n."""
    if len(n_grid) < 3:
        raise ValueError(f"need at least 3 grid points, got {len(n_grid)}")
    if realizations < 200:
        raise ValueError(f"need at least 200 realizations, got {realizations}")
    fourth = []
    for n in n_grid:
        child = int(np.random.SeedSequence(seed, spawn_key=(n,)).generate_state(1, np.uint64)[0])

        def one(r: int, n=n, child=child):
            sample = eigenvalues_symmetric(build_matrix(n, gen, realization=r, seed=child))
            return float(np.sum(sample.eigenvalues**k))

        traces = np.array(parallel_map(one, range(realizations)))
        fourth.append(float(np.mean((traces - traces.mean()) ** 4)))
    slope = float(np.polyfit(np.log(np.asarray(n_grid, float)), np.log(fourth), 1)[0])
    return {"n_grid": tuple(n_grid), "k": k, "fourth_central": fourth, "slope": slope}


def write_histogram_csv(stats: EnsembleStats, path: str | Path,
                        header_lines: tuple[str, ...] = ()) -> Path:
    """CSV columns: bin_left, bin_right, count, density.

    Density normalizes by total eigenvalue count (including out-of-range
    ones) and bin width, so it integrates to the in-range mass.
    """
    path = Path(path)
    total = stats.total_count()
    widths = np.diff(stats.bin_edges)
    lines = [f"# {h}" for h in header_lines]
    lines.append(f"# underflow={stats.underflow} overflow={stats.overflow}")
    lines.append("bin_left,bin_right,count,density")
    for left, right, count, width in zip(
        stats.bin_edges[:-1], stats.bin_edges[1:], stats.counts, widths
    ):
        density = count / (total * width)
        lines.append(f"{left:.17g},{right:.17g},{int(count)},{density:.17g}")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_moment_csv(rows: list[dict], path: str | Path,
                     header_lines: tuple[str, ...] = ()) -> Path:
    """CSV columns: k, empirical, SE, theoretical, theory_SE, z_score."""
    path = Path(path)
    lines = [f"# {h}" for h in header_lines]
    lines.append("k,empirical,SE,theoretical,theory_SE,z_score")
    for row in rows:
        lines.append(
            f"{row['k']},{row['empirical']:.17g},{row['SE']:.17g},"
            f"{row['theoretical']:.17g},{row['theory_SE']:.17g},{row['z_score']:.17g}"
        )
    path.write_text("\n".join(lines) + "\n")
    return path


def moment_comparison_rows(stats: EnsembleStats, theory: dict[int, tuple[float, float]]) -> list[dict]:
    """Pair empirical ensemble moments with theory values.

    ``theory`` maps k -> (value, std_error).  The z-score combines the
    ensemble SE with the theory's Monte Carlo SE in quadrature.
    """
    rows = []
    for k in range(1, stats.kmax + 1):
        if k not in theory:
            continue
        theo, theo_se = theory[k]
        emp = float(stats.moments[k - 1])
        se = float(stats.moment_se[k - 1])
        spread = math.hypot(se, theo_se)
        if spread > 0:
            z = (emp - theo) / spread
        else:
            z = 0.0 if emp == theo else math.copysign(math.inf, emp - theo)
        rows.append({
            "k": k, "empirical": emp, "SE": se,
            "theoretical": theo, "theory_SE": theo_se, "z_score": z,
        })
    return rows
