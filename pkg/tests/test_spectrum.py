import numpy as np
import pytest

from eeenum.array_model import ScenarioConfig, generate_snapshots, population_covariance
from eeenum.spectrum import (EigenSpectrum, eigendecompose, eigenvalues_descending,
                             sample_covariance, snapshot_spectrum)


def test_sample_covariance_of_zeros():
    np.testing.assert_array_equal(sample_covariance(np.zeros((3, 4))), np.zeros((3, 3)))


def test_sample_covariance_single_snapshot():
    c = sample_covariance(np.array([[1.0], [1j]]))
    np.testing.assert_allclose(c, [[1, -1j], [1j, 1]])


def test_sample_covariance_hermitian_psd(rng):
    x = rng.standard_normal((3, 50)) + 1j * rng.standard_normal((3, 50))
    c = sample_covariance(x)
    assert np.abs(c - c.conj().T).max() < 1e-12
    np.testing.assert_allclose(c, sum(np.outer(v, v.conj()) for v in x.T) / 50, atol=1e-12)
    assert eigenvalues_descending(c).values.min() >= 0


def test_sample_covariance_rejects_empty():
    with pytest.raises(ValueError):
        sample_covariance(np.zeros((3, 0)))


def test_scaled_identity():
    np.testing.assert_array_equal(eigenvalues_descending(2 * np.eye(4)).values, [2, 2, 2, 2])


def test_rank_one_matrix():
    s = eigenvalues_descending(np.array([[1, -1j], [1j, 1]]))
    np.testing.assert_allclose(s.values, [2, 0], atol=1e-14)
    assert s.values[1] >= 0


def test_population_noise_eigenvalues():
    s = eigenvalues_descending(population_covariance(ScenarioConfig(6, 2, 10, snr_db=10)))
    np.testing.assert_allclose(s.values[2:], 1.0, atol=1e-10)


def test_descending_and_reconstruction(rng):
    x = rng.standard_normal((7, 40)) + 1j * rng.standard_normal((7, 40))
    c = sample_covariance(x)
    d = eigendecompose(c)
    v = d.spectrum.values
    assert np.all(np.diff(v) <= 0)
    recon = d.vectors @ np.diag(v) @ d.vectors.conj().T
    assert np.linalg.norm(recon - c) <= 1e-8 * np.linalg.norm(c)
    np.testing.assert_allclose(d.vectors.conj().T @ d.vectors, np.eye(7), atol=1e-12)


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        eigenvalues_descending(np.array([[np.nan, 0], [0, 1]]))


def test_indefinite_rejected():
    with pytest.raises(ValueError, match="semi-definite"):
        eigenvalues_descending(np.diag([1.0, -0.5]))


def test_tiny_negative_clamped():
    s = eigenvalues_descending(np.diag([1.0, -1e-13]))
    np.testing.assert_array_equal(s.values, [1.0, 0.0])


def test_trace_identity(rng):
    x = rng.standard_normal((5, 20)) + 1j * rng.standard_normal((5, 20))
    s = snapshot_spectrum(x)
    total = np.linalg.norm(x) ** 2 / 20
    assert abs(s.values.sum() - total) <= 1e-10 * total
    assert s.source_dims == (5, 20)


def test_rank_deficient_block(rng):
    x = rng.standard_normal((8, 3)) + 1j * rng.standard_normal((8, 3))
    v = snapshot_spectrum(x).values
    assert np.all(v[3:] <= 1e-10 * v[0])
    assert np.all(v[:3] > 1e-3)


def test_spectrum_converges_with_n():
    cfg = ScenarioConfig(6, 2, 100, snr_db=5)
    truth = eigenvalues_descending(population_covariance(cfg)).values
    meds = []
    for n in (100, 10_000):
        rng = np.random.default_rng(n)
        c = ScenarioConfig(6, 2, n, snr_db=5)
        dev = [np.abs(snapshot_spectrum(generate_snapshots(c, rng)).values - truth).max()
               for _ in range(50)]
        meds.append(np.median(dev))
    assert meds[1] < meds[0]


def test_eigen_spectrum_is_read_only():
    s = EigenSpectrum([3.0, 1.0])
    with pytest.raises(ValueError):
        s.values[0] = 0
    assert len(s) == 2
    np.testing.assert_array_equal(s.scaled(2).values, [6.0, 2.0])
