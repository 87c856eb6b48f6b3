"""Source-number estimators operating on a descending eigenvalue spectrum.

``eee_tail`` and ``eee_head`` locate the signal/noise boundary from jumps in
the kernel entropy of eigenvalue windows. ``aic`` and ``mdl`` are the
Wax-Kailath information criteria for complex data.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _backend
from .kernel_entropy import (DEFAULT_KERNEL, KernelConfig, _values, delta_F,
                             head_entropy_profile, tail_entropy_profile)

EIGENVALUE_FLOOR = 1e-30


class EnumMethod(enum.Enum):
    EEE_TAIL = "eee-tail"
    EEE_HEAD = "eee-head"
    AIC = "aic"
    MDL = "mdl"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {name!r} (expected one of {valid})") from None


@dataclass(frozen=True)
class EstimateResult:
    method: EnumMethod
    k_hat: int
    criterion_values: np.ndarray


def _first_argmin(values):
    # np.argmin already returns the first of tied minima
    return int(np.argmin(values))


def eee_tail(spectrum, kernel: KernelConfig = DEFAULT_KERNEL) -> EstimateResult:
    """Estimate K as the argmin over i = 1..P-1 of ``F(i+1) - F(i)``."""
    dF = delta_F(tail_entropy_profile(spectrum, kernel))
    return EstimateResult(EnumMethod.EEE_TAIL, _first_argmin(dF) + 1, dF)


def eee_head(spectrum, kernel: KernelConfig = DEFAULT_KERNEL) -> EstimateResult:
    """Estimate K as the argmax over i = 1..P-1 of ``G(i+1) - G(i)``."""
    dG = delta_F(head_entropy_profile(spectrum, kernel))
    return EstimateResult(EnumMethod.EEE_HEAD, int(np.argmax(dG)) + 1, dG)


def _ic(spectrum, n_snapshots, use_mdl):
    if not n_snapshots > 0:
        raise ValueError(f"number of snapshots must be > 0, got {n_snapshots}")
    values = _values(spectrum)
    if values.shape[0] < 2:
        raise ValueError("need at least 2 eigenvalues")
    floored = np.maximum(values, EIGENVALUE_FLOOR)
    return np.asarray(_backend.kernels.ic_scan(floored, float(n_snapshots), use_mdl))


def aic(spectrum, n_snapshots) -> EstimateResult:
    """Akaike criterion ``-2N(P-k) log(g_k/a_k) + 2k(2P-k)`` minimised over k = 0..P-1."""
    values = _ic(spectrum, n_snapshots, False)
    return EstimateResult(EnumMethod.AIC, _first_argmin(values), values)


def mdl(spectrum, n_snapshots) -> EstimateResult:
    """Minimum description length ``-N(P-k) log(g_k/a_k) + k(2P-k) log(N)/2``."""
    values = _ic(spectrum, n_snapshots, True)
    return EstimateResult(EnumMethod.MDL, _first_argmin(values), values)


def estimate(method, spectrum, n_snapshots, kernel: KernelConfig = DEFAULT_KERNEL):
    """Dispatch to the estimator named by ``method``."""
    method = EnumMethod(method)
    if method is EnumMethod.EEE_TAIL:
        return eee_tail(spectrum, kernel)
    if method is EnumMethod.EEE_HEAD:
        return eee_head(spectrum, kernel)
    if method is EnumMethod.AIC:
        return aic(spectrum, n_snapshots)
    return mdl(spectrum, n_snapshots)
