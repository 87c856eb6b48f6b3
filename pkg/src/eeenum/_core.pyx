# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the Gaussian-kernel entropy estimator and the
AIC/MDL eigenvalue scans.

Every function here has a numpy twin in :mod:`eeenum._fallback` with the
same signature and semantics; :mod:`eeenum._backend` picks one at import.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sqrt, NAN

cnp.import_array()

cdef double INV_SQRT_2PI = 0.3989422804014327


cdef double _entropy(const double[::1] x, Py_ssize_t start, Py_ssize_t stop,
                     double h) noexcept nogil:
    cdef Py_ssize_t n = stop - start
    cdef Py_ssize_t k, l
    cdef double inv2h2 = 0.5 / (h * h)
    cdef double norm = INV_SQRT_2PI / h
    cdef double acc, d, total = 0.0
    for k in range(start, stop):
        acc = 0.0
        for l in range(start, stop):
            d = x[k] - x[l]
            acc += exp(-d * d * inv2h2)
        total += log(acc * norm / n)
    return -total / n


def entropy(const double[::1] x, double h):
    """Kernel entropy of all samples in ``x`` at bandwidth ``h``."""
    if x.shape[0] == 0:
        raise ValueError("entropy of an empty window is undefined")
    return _entropy(x, 0, x.shape[0], h)


def tail_profile(const double[::1] lam, const double[::1] hs):
    """F[i] = entropy(lam[i:], hs[i])."""
    cdef Py_ssize_t p = lam.shape[0]
    cdef Py_ssize_t i
    out = np.empty(p, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(p):
            o[i] = _entropy(lam, i, p, hs[i])
    return out


def head_profile(const double[::1] lam, const double[::1] hs):
    """G[i] = entropy(lam[:i + 1], hs[i])."""
    cdef Py_ssize_t p = lam.shape[0]
    cdef Py_ssize_t i
    out = np.empty(p, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(p):
            o[i] = _entropy(lam, 0, i + 1, hs[i])
    return out


def suffix_std(const double[::1] lam):
    """Sample standard deviation (ddof=1) of every suffix ``lam[i:]``.

    The single-sample suffix has no spread and is reported as NaN.
    """
    cdef Py_ssize_t p = lam.shape[0]
    cdef Py_ssize_t i, n
    cdef double mean = 0.0, m2 = 0.0, delta
    out = np.empty(p, dtype=np.float64)
    cdef double[::1] o = out
    # Welford, walking from the last element towards the first
    for i in range(p - 1, -1, -1):
        n = p - i
        delta = lam[i] - mean
        mean += delta / n
        m2 += delta * (lam[i] - mean)
        if n < 2:
            o[i] = NAN
        else:
            o[i] = sqrt(m2 / (n - 1)) if m2 > 0.0 else 0.0
    return out


def prefix_std(const double[::1] lam):
    """Sample standard deviation (ddof=1) of every prefix ``lam[:i + 1]``."""
    cdef Py_ssize_t p = lam.shape[0]
    cdef Py_ssize_t i, n
    cdef double mean = 0.0, m2 = 0.0, delta
    out = np.empty(p, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(p):
        n = i + 1
        delta = lam[i] - mean
        mean += delta / n
        m2 += delta * (lam[i] - mean)
        if n < 2:
            o[i] = NAN
        else:
            o[i] = sqrt(m2 / (n - 1)) if m2 > 0.0 else 0.0
    return out


def ic_scan(const double[::1] lam, double n_snapshots, bint use_mdl):
    """AIC or MDL objective for k = 0 .. P-1 on a descending spectrum.

    ``lam`` must already be floored to strictly positive values.
    """
    cdef Py_ssize_t p = lam.shape[0]
    cdef Py_ssize_t k, m
    cdef double s = 0.0, slog = 0.0, data, penalty, log_n = log(n_snapshots)
    out = np.empty(p, dtype=np.float64)
    cdef double[::1] o = out
    # k sources leave the m = P - k smallest eigenvalues lam[k:]
    for k in range(p - 1, -1, -1):
        m = p - k
        s += lam[k]
        slog += log(lam[k])
        # log(g/a) = mean(log lam) - log(mean lam)
        data = -n_snapshots * m * (slog / m - log(s / m))
        if use_mdl:
            penalty = 0.5 * k * (2 * p - k) * log_n
            o[k] = data + penalty
        else:
            o[k] = 2.0 * data + 2.0 * k * (2 * p - k)
    return out
