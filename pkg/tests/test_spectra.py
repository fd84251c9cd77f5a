"""Spectral statistics: eigenvalues, moments, ensembles, CSV output."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from corrdiag.sampler import Equicorrelated, Independent, build_matrix
from corrdiag.spectra import (
    SpectralSample,
    concentration_probe,
    eigenvalues_symmetric,
    empirical_moments,
    moment_comparison_rows,
    run_ensemble,
    trace_moment_direct,
    write_histogram_csv,
    write_moment_csv,
)


def test_eigenvalues_of_known_matrix():
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    s = eigenvalues_symmetric(m)
    assert s.eigenvalues == pytest.approx([1.0, 3.0])
    assert s.n == 2


def test_eigenvalues_rejects_bad_input():
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_empirical_vs_trace_power_routes():
    m = build_matrix(120, Equicorrelated(0.3), realization=0, seed=8)
    s = eigenvalues_symmetric(m)
    moments = empirical_moments(s, 12)
    for k in range(1, 13):
        assert moments[k - 1] == pytest.approx(trace_moment_direct(m, k), abs=1e-8)


def test_trace_and_frobenius_identities():
    m = build_matrix(90, Independent(), realization=1, seed=8)
    lam = eigenvalues_symmetric(m).eigenvalues
    assert lam.sum() == pytest.approx(np.trace(m), abs=1e-10 * 90)
    assert (lam**2).sum() == pytest.approx(np.linalg.norm(m, "fro") ** 2, abs=1e-10 * 90)


def test_trace_moment_guards():
    m = build_matrix(20, Independent(), 0, 0)
    with pytest.raises(ValueError):
        trace_moment_direct(m, 0)
    with pytest.raises(ValueError):
        trace_moment_direct(m, 13)  # above the supported direct range


def test_run_ensemble_statistics():
    stats = run_ensemble(80, Equicorrelated(0.5), 12, kmax=4, seed=6)
    assert stats.per_realization.shape == (12, 4)
    assert stats.moments.shape == (4,)
    assert stats.total_count() == 80 * 12
    assert stats.moments[1] == pytest.approx(1.0, abs=0.15)
    # odd moments of a symmetric-law ensemble hover near zero
    assert abs(stats.moments[0]) < 0.05
    assert np.all(stats.moment_se > 0)


def test_run_ensemble_reproducible():
    a = run_ensemble(50, Equicorrelated(0.5), 5, kmax=2, seed=3)
    b = run_ensemble(50, Equicorrelated(0.5), 5, kmax=2, seed=3)
    assert np.array_equal(a.per_realization, b.per_realization)
    assert np.array_equal(a.counts, b.counts)


def test_run_ensemble_single_realization_has_zero_se():
    stats = run_ensemble(50, Independent(), 1, kmax=2, seed=0)
    assert np.all(stats.moment_se == 0.0)


def test_thread_count_does_not_change_results():
    baseline = run_ensemble(60, Equicorrelated(0.25), 6, kmax=4, seed=11)
    env_before = os.environ.get("CORRDIAG_THREADS")
    os.environ["CORRDIAG_THREADS"] = "3"
    try:
        threaded = run_ensemble(60, Equicorrelated(0.25), 6, kmax=4, seed=11)
    finally:
        if env_before is None:
            del os.environ["CORRDIAG_THREADS"]
        else:
            os.environ["CORRDIAG_THREADS"] = env_before
    assert np.array_equal(baseline.per_realization, threaded.per_realization)
    assert np.array_equal(baseline.counts, threaded.counts)


def test_histogram_accounts_for_every_eigenvalue():
    stats = run_ensemble(70, Independent(), 4, kmax=2, bins=40, hist_range=(-2.5, 2.5), seed=1)
    assert stats.counts.sum() + stats.underflow + stats.overflow == 70 * 4
    assert len(stats.bin_edges) == 41


def test_histogram_csv_format(tmp_path):
    stats = run_ensemble(40, Independent(), 3, kmax=2, bins=10, hist_range=(-3, 3), seed=2)
    path = write_histogram_csv(stats, tmp_path / "h.csv", ("corrdiag test", "config: x"))
    lines = path.read_text().splitlines()
    assert lines[0] == "# corrdiag test"
    assert any(line.startswith("# underflow=") for line in lines)
    header_idx = lines.index("bin_left,bin_right,count,density")
    data = [line.split(",") for line in lines[header_idx + 1 :]]
    assert len(data) == 10
    counts = np.array([int(row[2]) for row in data])
    densities = np.array([float(row[3]) for row in data])
    width = 0.6
    total = counts.sum() + stats.underflow + stats.overflow
    assert densities == pytest.approx(counts / (total * width), rel=1e-12)


def test_moment_csv_and_z_scores(tmp_path):
    stats = run_ensemble(60, Equicorrelated(0.5), 8, kmax=4, seed=5)
    rows = moment_comparison_rows(stats, {2: (1.0, 0.0), 4: (13.0 / 6.0, 0.01)})
    path = write_moment_csv(rows, tmp_path / "m.csv", ("corrdiag test",))
    lines = path.read_text().splitlines()
    assert lines[1] == "k,empirical,SE,theoretical,theory_SE,z_score"
    by_k = {int(row.split(",")[0]): row.split(",") for row in lines[2:]}
    z4 = float(by_k[4][5])
    expected = (stats.moments[3] - 13.0 / 6.0) / math.hypot(stats.moment_se[3], 0.01)
    assert z4 == pytest.approx(expected, rel=1e-12)


def test_concentration_probe_slope():
    report = concentration_probe((30, 60, 120), Equicorrelated(0.5), 2, 200, seed=4)
    assert set(report) == {"n_grid", "k", "fourth_central", "slope"}
    assert len(report["fourth_central"]) == 3
    assert all(v > 0 for v in report["fourth_central"])
    assert report["slope"] < 2.5


def test_concentration_probe_guards():
    with pytest.raises(ValueError):
        concentration_probe((30, 60), Independent(), 2, 200)
    with pytest.raises(ValueError):
        concentration_probe((30, 60, 120), Independent(), 2, 50)


def test_spectral_sample_immutable():
    s = SpectralSample(2, np.array([1.0, 2.0]))
    with pytest.raises(AttributeError):
        s.n = 3
