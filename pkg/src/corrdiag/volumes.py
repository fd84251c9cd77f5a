"""Cube-section volumes attached to pair partitions.

Each block (i,j) of a pair partition, i < j, imposes one linear relation

    x_i - x_{i-1} + x_j - x_{j-1} = 0

on variables x_0,...,x_k.  Eliminating the larger element of every block
(in increasing order of j) leaves k/2 + 1 free variables.  The volume of
the partition is the probability that a uniform draw of the free variables
from [0,1] keeps every eliminated variable inside [0,1]; for non-crossing
partitions that probability is exactly 1, for crossing ones it is estimated
by seeded Monte Carlo.

Reproducibility contract: the uniform stream is a counter-based generator
(Philox) laid out as sample index -> point, and chunks are aligned on
multiples of four samples (one Philox counter block = four doubles), so a
chunked parallel run counts exactly the same hits as a serial one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._parallel import parallel_map
from .partitions import PairPartition, is_crossing

# Chunk length for Monte Carlo; a multiple of 4 keeps every chunk start
# aligned with a Philox counter-block boundary for any point dimension.
_CHUNK = 1 << 18


@dataclass(frozen=True)
class SolvedSystem:
    """Triangular solution of the block relations for one pair partition.

    ``determined`` maps each eliminated variable index to an affine form:
    integer coefficients over ``free_vars`` (in that order) plus an integer
    constant, which is always 0 here because every relation is a sum of two
    differences.
    """

    k: int
    free_vars: tuple[int, ...]
    determined: tuple[tuple[int, tuple[int, ...], int], ...]

    def coefficient_matrix(self) -> np.ndarray:
        """Rows = determined variables, columns = free variables."""
        return np.array([coeffs for _, coeffs, _ in self.determined], dtype=np.float64)

    def substitute(self, free_values: np.ndarray) -> np.ndarray:
        """Evaluate every determined variable at the given free-variable values."""
        free_values = np.asarray(free_values, dtype=np.float64)
        consts = np.array([c for _, _, c in self.determined], dtype=np.float64)
        return free_values @ self.coefficient_matrix().T + consts


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    std_error: float
    samples: int
    seed: int
    exact: bool


def solve_partition_system(p: PairPartition) -> SolvedSystem:
    """Eliminate the larger element of each block, in increasing order.

    Because eliminated indices are exactly the larger block elements, every
    substitution only ever references variables that are either free or
    already resolved, so the elimination is triangular.
    """
    k = p.k
    resolved: dict[int, np.ndarray] = {}

    def expand(v: int) -> np.ndarray:
        if v in resolved:
            return resolved[v].copy()
        e = np.zeros(k + 1, dtype=np.int64)
        e[v] = 1
        return e

    for i, j in sorted(p.blocks, key=lambda block: block[1]):
        # x_j = x_{j-1} + x_{i-1} - x_i
        resolved[j] = expand(j - 1) + expand(i - 1) - expand(i)

    free = tuple(v for v in range(k + 1) if v not in resolved)
    determined = []
    for j in sorted(resolved):
        row = resolved[j]
        assert all(row[d] == 0 for d in resolved), "elimination left a resolved index"
        determined.append((j, tuple(int(row[v]) for v in free), 0))
    return SolvedSystem(k, free, tuple(determined))


def _chunk_hits(seed: int, start: int, count: int, matrix: np.ndarray) -> int:
    dim = matrix.shape[1]
    bits = np.random.Philox(np.random.SeedSequence(seed))
    offset_doubles = start * dim
    assert offset_doubles % 4 == 0, "chunk start drifted off the counter-block grid"
    bits.advance(offset_doubles // 4)
    points = np.random.Generator(bits).random((count, dim))
    values = points @ matrix.T
    inside = (values >= 0.0) & (values <= 1.0)
    return int(inside.all(axis=1).sum())


def toeplitz_volume(p: PairPartition, samples: int, seed: int) -> VolumeEstimate:
    """Volume of the cube section attached to ``p``.

    Non-crossing partitions return 1 exactly.  Crossing partitions are
    estimated with ``samples`` uniform points of the free variables; the
    standard error is the binomial plug-in sqrt(v(1-v)/samples).
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if not is_crossing(p):
        return VolumeEstimate(1.0, 0.0, samples, seed, True)

    matrix = solve_partition_system(p).coefficient_matrix()
    starts = range(0, samples, _CHUNK)
    counts = parallel_map(
        lambda start: _chunk_hits(seed, start, min(_CHUNK, samples - start), matrix),
        starts,
    )
    hits = sum(counts)
    value = hits / samples
    std_error = math.sqrt(value * (1.0 - value) / samples)
    return VolumeEstimate(value, std_error, samples, seed, False)


def derive_volume_seed(base_seed: int, k: int, index: int) -> int:
    """Per-partition Monte Carlo seed: child stream (k, index) of the base seed."""
    seq = np.random.SeedSequence(base_seed, spawn_key=(k, index))
    return int(seq.generate_state(1, np.uint64)[0])


class VolumeCache:
    """Text-backed store of volume estimates keyed by canonical partition.

    One record per line: canonical partition, samples, seed, value,
    std_error, exact flag (0/1), whitespace-separated.  Lines starting with
    '#' are headers and are skipped on load.
    """

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else None
        self._entries: dict[str, VolumeEstimate] = {}
        if self.path is not None and self.path.exists():
            self.load(self.path)

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, key: str) -> VolumeEstimate | None:
        return self._entries.get(key)

    def put(self, key: str, estimate: VolumeEstimate) -> None:
        self._entries[key] = estimate

    def ensure(self, p: PairPartition, samples: int, seed: int) -> VolumeEstimate:
        """Cached estimate if it was produced by the same (samples, seed) run,
        otherwise compute and store a fresh one."""
        key = p.canonical()
        hit = self._entries.get(key)
        if hit is not None and hit.samples == samples and hit.seed == seed:
            return hit
        estimate = toeplitz_volume(p, samples, seed)
        self._entries[key] = estimate
        return estimate

    @staticmethod
    def format_line(key: str, e: VolumeEstimate) -> str:
        return f"{key} {e.samples} {e.seed} {e.value:.17g} {e.std_error:.17g} {int(e.exact)}"

    @staticmethod
    def parse_line(line: str) -> tuple[str, VolumeEstimate]:
        key, samples, seed, value, std_error, exact = line.split()
        return key, VolumeEstimate(
            float(value), float(std_error), int(samples), int(seed), bool(int(exact))
        )

    def load(self, path: str | Path) -> None:
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, estimate = self.parse_line(line)
            self._entries[key] = estimate

    def save(self, path: str | Path | None = None, header_lines: tuple[str, ...] = ()) -> Path:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no path given and the cache was created without one")
        lines = [f"# {h}" for h in header_lines]
        lines += [self.format_line(k, e) for k, e in sorted(self._entries.items())]
        target.write_text("\n".join(lines) + "\n")
        return target
