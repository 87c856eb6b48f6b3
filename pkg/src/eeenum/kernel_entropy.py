"""Kernel entropy estimation over windows of an eigenvalue spectrum.

The estimator of a window ``w`` of ``n`` samples at bandwidth ``h`` is the
resubstitution (leave-none-out) plug-in

    H(w) = -(1/n) sum_k log( (1/n) sum_l K_h(w_k - w_l) )

with ``K_h(x) = K(x / h) / h`` and ``K`` the standard Gaussian density.
``F(i)`` is the entropy of the tail window ``lambda_i .. lambda_P`` and the
head profile uses the prefix windows ``lambda_1 .. lambda_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _backend
from .spectrum import EigenSpectrum

SILVERMAN_FACTOR = 1.06
FLOOR_RTOL = 1e-9

_SCOPES = ("window", "global")


@dataclass(frozen=True)
class KernelConfig:
    """How the entropy estimator smooths.

    Parameters
    ----------
    kernel
        Only ``"gaussian"`` is available.
    bandwidth
        ``"silverman"`` or a fixed positive float.
    scope
        With Silverman bandwidths, ``"window"`` recomputes the rule on every
        window of the profile; ``"global"`` computes it once from the whole
        spectrum and reuses it. Ignored for fixed bandwidths.
    bandwidth_floor
        Lower bound for Silverman bandwidths. ``None`` means
        ``1e-9 * max(1, mean eigenvalue)``.
    """

    kernel: str = "gaussian"
    bandwidth: Union[str, float] = "silverman"
    scope: str = "window"
    bandwidth_floor: Optional[float] = None

    def __post_init__(self):
        if self.kernel != "gaussian":
            raise ValueError(f"unsupported kernel {self.kernel!r}")
        if isinstance(self.bandwidth, str):
            if self.bandwidth != "silverman":
                raise ValueError(f"bandwidth must be 'silverman' or a float, got {self.bandwidth!r}")
        elif not float(self.bandwidth) > 0:
            raise ValueError(f"fixed bandwidth must be > 0, got {self.bandwidth}")
        if self.scope not in _SCOPES:
            raise ValueError(f"scope must be one of {_SCOPES}, got {self.scope!r}")
        if self.bandwidth_floor is not None and not self.bandwidth_floor > 0:
            raise ValueError(f"bandwidth_floor must be > 0, got {self.bandwidth_floor}")

    @property
    def fixed(self):
        return not isinstance(self.bandwidth, str)


DEFAULT_KERNEL = KernelConfig()


@dataclass(frozen=True)
class EntropyWindow:
    """Samples ``lambda_i .. lambda_j`` of a spectrum (1-based, inclusive)."""

    samples: np.ndarray
    i: int
    j: int

    @classmethod
    def of(cls, spectrum, i, j):
        values = _values(spectrum)
        if not 1 <= i <= j <= values.shape[0]:
            raise ValueError(f"need 1 <= i <= j <= {values.shape[0]}, got i={i}, j={j}")
        return cls(values[i - 1:j], i, j)


def gaussian_kernel(x):
    return np.exp(-0.5 * np.square(x)) / np.sqrt(2.0 * np.pi)


def scaled_kernel(x, h):
    if not h > 0:
        raise ValueError(f"bandwidth must be > 0, got {h}")
    return gaussian_kernel(np.asarray(x) / h) / h


def _values(spectrum):
    if isinstance(spectrum, EigenSpectrum):
        return spectrum.values
    return np.ascontiguousarray(spectrum, dtype=np.float64).reshape(-1)


def default_floor(spectrum):
    return FLOOR_RTOL * max(1.0, float(np.mean(_values(spectrum))))


def silverman_bandwidth(spectrum, floor=None):
    """``1.06 * std * n ** (-1/5)`` over all values, never below ``floor``."""
    values = _values(spectrum)
    n = values.shape[0]
    if n < 2:
        raise ValueError("Silverman bandwidth needs at least 2 samples")
    if floor is None:
        floor = default_floor(values)
    h = SILVERMAN_FACTOR * np.std(values, ddof=1) * n ** -0.2
    return float(max(h, floor))


def window_bandwidths(spectrum, kernel: KernelConfig = DEFAULT_KERNEL, direction="tail"):
    """Bandwidth used for each window of a tail or head profile.

    In window scope a single-sample window borrows the bandwidth of its
    two-sample neighbour (``lambda_{P-1}..lambda_P`` for the tail,
    ``lambda_1..lambda_2`` for the head).
    """
    values = _values(spectrum)
    p = values.shape[0]
    if p < 2:
        raise ValueError("an entropy profile needs at least 2 eigenvalues")
    if kernel.fixed:
        return np.full(p, float(kernel.bandwidth))
    floor = kernel.bandwidth_floor if kernel.bandwidth_floor is not None else default_floor(values)
    if kernel.scope == "global":
        return np.full(p, silverman_bandwidth(values, floor))
    k = _backend.kernels
    if direction == "tail":
        std = np.asarray(k.suffix_std(values))
        n = p - np.arange(p)
    elif direction == "head":
        std = np.asarray(k.prefix_std(values))
        n = np.arange(1, p + 1)
    else:
        raise ValueError(f"direction must be 'tail' or 'head', got {direction!r}")
    with np.errstate(invalid="ignore"):
        hs = np.maximum(SILVERMAN_FACTOR * std * n ** -0.2, floor)
    if direction == "tail":
        hs[-1] = hs[-2]
    else:
        hs[0] = hs[1]
    return hs


def entropy_estimate(window, h, kernel: KernelConfig = DEFAULT_KERNEL):
    """Kernel entropy (nats) of the samples in ``window`` at bandwidth ``h``."""
    samples = window.samples if isinstance(window, EntropyWindow) else window
    samples = np.ascontiguousarray(samples, dtype=np.float64).reshape(-1)
    if samples.shape[0] == 0:
        raise ValueError("entropy of an empty window is undefined")
    if not h > 0:
        raise ValueError(f"bandwidth must be > 0, got {h}")
    return float(_backend.kernels.entropy(samples, float(h)))


def tail_entropy_profile(spectrum, kernel: KernelConfig = DEFAULT_KERNEL):
    """``F(i)`` for i = 1..P: entropy of ``lambda_i .. lambda_P``."""
    values = _values(spectrum)
    hs = window_bandwidths(values, kernel, "tail")
    return np.asarray(_backend.kernels.tail_profile(values, hs))


def head_entropy_profile(spectrum, kernel: KernelConfig = DEFAULT_KERNEL):
    """``G(i)`` for i = 1..P: entropy of ``lambda_1 .. lambda_i``."""
    values = _values(spectrum)
    hs = window_bandwidths(values, kernel, "head")
    return np.asarray(_backend.kernels.head_profile(values, hs))


def delta_F(profile):
    """First difference ``F(i+1) - F(i)``, i = 1..P-1."""
    profile = np.asarray(profile, dtype=np.float64)
    if profile.shape[0] < 2:
        raise ValueError("profile needs at least 2 entries")
    return np.diff(profile)
