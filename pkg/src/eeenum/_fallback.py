"""Pure numpy implementations of the kernels in ``_core.pyx``."""
import numpy as np

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def entropy(x, h):
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if n == 0:
        raise ValueError("entropy of an empty window is undefined")
    d = (x[:, None] - x[None, :]) / h
    dens = np.exp(-0.5 * d * d).sum(axis=1) * (_INV_SQRT_2PI / h) / n
    return float(-np.log(dens).mean())


def tail_profile(lam, hs):
    lam = np.asarray(lam, dtype=np.float64)
    return np.array([entropy(lam[i:], hs[i]) for i in range(lam.shape[0])])


def head_profile(lam, hs):
    lam = np.asarray(lam, dtype=np.float64)
    return np.array([entropy(lam[:i + 1], hs[i]) for i in range(lam.shape[0])])


def suffix_std(lam):
    lam = np.asarray(lam, dtype=np.float64)
    p = lam.shape[0]
    out = np.full(p, np.nan)
    for i in range(p - 1):
        out[i] = np.std(lam[i:], ddof=1)
    return out


def prefix_std(lam):
    return suffix_std(np.asarray(lam, dtype=np.float64)[::-1])[::-1].copy()


def ic_scan(lam, n_snapshots, use_mdl):
    lam = np.asarray(lam, dtype=np.float64)
    p = lam.shape[0]
    k = np.arange(p)
    m = p - k
    tail_sum = np.cumsum(lam[::-1])[::-1]
    tail_logsum = np.cumsum(np.log(lam[::-1]))[::-1]
    data = -n_snapshots * m * (tail_logsum / m - np.log(tail_sum / m))
    if use_mdl:
        return data + 0.5 * k * (2 * p - k) * np.log(n_snapshots)
    return 2.0 * data + 2.0 * k * (2 * p - k)
