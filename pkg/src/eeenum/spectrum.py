"""Sample covariance and its descending eigenvalue spectrum."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

CLAMP_RTOL = 1e-10


@dataclass(frozen=True)
class EigenSpectrum:
    """Real eigenvalues sorted in descending order.

    ``source_dims`` records the (P, N) of the snapshot block it came from,
    when known.
    """

    values: np.ndarray
    source_dims: Optional[tuple] = None

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).reshape(-1)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def scaled(self, c):
        return EigenSpectrum(self.values * c, self.source_dims)


@dataclass(frozen=True)
class EigenDecomposition:
    spectrum: EigenSpectrum
    vectors: np.ndarray


def sample_covariance(x) -> np.ndarray:
    """``(1/N) sum_i x_i x_i^H`` over the columns of a P x N block."""
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[1] == 0 or x.shape[0] == 0:
        raise ValueError(f"need a non-empty P x N snapshot block, got shape {x.shape}")
    return (x @ x.conj().T) / x.shape[1]


def _sorted_spectrum(w, source_dims):
    order = np.argsort(-w, kind="stable")
    w = w[order]
    scale = np.max(np.abs(w)) if w.size else 0.0
    tol = CLAMP_RTOL * scale
    if w.size and w[-1] < -tol:
        raise ValueError(f"matrix is not positive semi-definite (eigenvalue {w[-1]:.3e})")
    w = np.where(w < 0.0, 0.0, w)
    return EigenSpectrum(w, source_dims), order


def _checked_hermitian(c):
    c = np.asarray(c)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise ValueError("matrix has non-finite entries")
    return 0.5 * (c + c.conj().T)


def eigenvalues_descending(c, source_dims=None) -> EigenSpectrum:
    """Eigenvalues of Hermitian ``c``, descending, with float noise clamped to 0.

    Values below ``-1e-10 * max|lambda|`` mean the input was not PSD and raise.
    """
    w = np.linalg.eigvalsh(_checked_hermitian(c))
    return _sorted_spectrum(w, source_dims)[0]


def eigendecompose(c, source_dims=None) -> EigenDecomposition:
    w, u = np.linalg.eigh(_checked_hermitian(c))
    spec, order = _sorted_spectrum(w, source_dims)
    return EigenDecomposition(spec, u[:, order])


def snapshot_spectrum(x) -> EigenSpectrum:
    """Shortcut: descending spectrum of the sample covariance of ``x``."""
    x = np.asarray(x)
    return eigenvalues_descending(sample_covariance(x), source_dims=x.shape)
