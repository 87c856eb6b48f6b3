"""Deliberately naive reference implementations used as test oracles.

Nothing here imports from ``eeenum``; loops and the ``math`` module only.
"""
import cmath
import math
import statistics


def kernel(x):
    return math.exp(-x * x / 2.0) / math.sqrt(2.0 * math.pi)


def entropy(samples, h):
    n = len(samples)
    total = 0.0
    for k in range(n):
        inner = 0.0
        for l in range(n):
            inner += kernel((samples[k] - samples[l]) / h) / h
        total += math.log(inner / n)
    return -total / n


def entropy_expanded(samples, h):
    """log(n) + log(h) - (1/n) sum_j log(K(0) + sum_{k != j} K((x_j - x_k)/h))."""
    n = len(samples)
    acc = 0.0
    for j in range(n):
        s = kernel(0.0)
        for k in range(n):
            if k != j:
                s += kernel((samples[j] - samples[k]) / h)
        acc += math.log(s)
    return math.log(n) + math.log(h) - acc / n


def floor(values):
    return 1e-9 * max(1.0, sum(values) / len(values))


def silverman(values, lo):
    h = 1.06 * statistics.stdev(values) * len(values) ** (-0.2)
    return max(h, lo)


def tail_bandwidths(values, scope):
    p = len(values)
    lo = floor(values)
    if scope == "global":
        return [silverman(values, lo)] * p
    hs = [silverman(values[i:], lo) if p - i >= 2 else None for i in range(p)]
    hs[-1] = hs[-2]
    return hs


def head_bandwidths(values, scope):
    p = len(values)
    lo = floor(values)
    if scope == "global":
        return [silverman(values, lo)] * p
    hs = [silverman(values[:i + 1], lo) if i >= 1 else None for i in range(p)]
    hs[0] = hs[1]
    return hs


def tail_profile(values, scope="window"):
    hs = tail_bandwidths(values, scope)
    return [entropy(values[i:], hs[i]) for i in range(len(values))]


def head_profile(values, scope="window"):
    hs = head_bandwidths(values, scope)
    return [entropy(values[:i + 1], hs[i]) for i in range(len(values))]


def first_argmin(xs):
    best = 0
    for i, x in enumerate(xs):
        if x < xs[best]:
            best = i
    return best


def first_argmax(xs):
    return first_argmin([-x for x in xs])


def eee_tail(values, scope="window"):
    f = tail_profile(values, scope)
    return first_argmin([f[i + 1] - f[i] for i in range(len(f) - 1)]) + 1


def eee_head(values, scope="window"):
    g = head_profile(values, scope)
    return first_argmax([g[i + 1] - g[i] for i in range(len(g) - 1)]) + 1


def _ratio(values, k):
    rest = [max(v, 1e-30) for v in values[k:]]
    m = len(rest)
    geo = math.exp(sum(math.log(v) for v in rest) / m)
    return geo / (sum(rest) / m)


def aic_scores(values, n):
    p = len(values)
    return [-2.0 * n * (p - k) * math.log(_ratio(values, k)) + 2.0 * k * (2 * p - k)
            for k in range(p)]


def mdl_scores(values, n):
    p = len(values)
    return [-1.0 * n * (p - k) * math.log(_ratio(values, k)) + 0.5 * k * (2 * p - k) * math.log(n)
            for k in range(p)]


def steering(num_sensors, doas, spacing):
    return [[cmath.exp(2j * math.pi * spacing * p * math.sin(d)) for d in doas]
            for p in range(num_sensors)]
