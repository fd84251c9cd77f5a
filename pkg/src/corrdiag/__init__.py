"""Spectral statistics of symmetric random matrices with correlated diagonals."""

__version__ = "0.1.0"

from .curie_weiss import (
    limiting_correlation,
    magnetization_levels,
    pair_correlation,
    sample_spins,
    spontaneous_magnetization,
)
from .moments import MomentValue, catalan, limiting_moment, semicircle_moment
from .oracle import (
    census_report,
    check_excess_crossing_decay,
    check_cell_bound,
    check_sn_minus_snstar_decay,
    extrapolated_opposed_ratio,
    opposed_ratio,
    walk_census,
)
from .partitions import (
    PairPartition,
    count_noncrossing,
    enumerate_pair_partitions,
    height,
    is_crossing,
)
from .sampler import (
    CurieWeiss,
    Equicorrelated,
    Independent,
    Toeplitz,
    build_matrix,
    sample_diagonal,
    validate_conditions,
)
from .spectra import (
    EnsembleStats,
    SpectralSample,
    concentration_probe,
    eigenvalues_symmetric,
    empirical_moments,
    run_ensemble,
    trace_moment_direct,
)
from .volumes import (
    VolumeCache,
    VolumeEstimate,
    derive_volume_seed,
    solve_partition_system,
    toeplitz_volume,
)

__all__ = [
    "PairPartition",
    "enumerate_pair_partitions",
    "is_crossing",
    "height",
    "count_noncrossing",
    "toeplitz_volume",
    "solve_partition_system",
    "derive_volume_seed",
    "VolumeCache",
    "VolumeEstimate",
    "limiting_moment",
    "semicircle_moment",
    "catalan",
    "MomentValue",
    "pair_correlation",
    "limiting_correlation",
    "spontaneous_magnetization",
    "magnetization_levels",
    "sample_spins",
    "Independent",
    "Equicorrelated",
    "CurieWeiss",
    "Toeplitz",
    "sample_diagonal",
    "build_matrix",
    "validate_conditions",
    "SpectralSample",
    "EnsembleStats",
    "eigenvalues_symmetric",
    "empirical_moments",
    "trace_moment_direct",
    "run_ensemble",
    "concentration_probe",
    "walk_census",
    "opposed_ratio",
    "extrapolated_opposed_ratio",
    "check_cell_bound",
    "check_sn_minus_snstar_decay",
    "check_excess_crossing_decay",
    "census_report",
]
