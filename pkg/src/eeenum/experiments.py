"""Deterministic Monte Carlo harness for source-enumeration benchmarks.

Seeds
-----
Trial ``i`` of a batch with master seed ``m`` draws from
``numpy.random.default_rng(mix_seed(m, i))`` where::

    splitmix64(x) = finalizer of (x + 0x9E3779B97F4A7C15) mod 2**64
    mix_seed(m, i) = splitmix64((m + splitmix64(i)) mod 2**64)

and the finalizer is the standard SplitMix64 one (xor-shift 30, multiply
0xBF58476D1CE4E5B9, xor-shift 27, multiply 0x94D049BB133111EB, xor-shift
31). Sweep point ``j`` uses ``mix_seed(master_seed, j)`` as its batch
master seed. Outputs therefore depend only on the inputs, never on the
number of workers or the order trials finish in.
"""
from __future__ import annotations

import dataclasses
import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .array_model import ConfigError, MixtureNoise, ScenarioConfig, generate_snapshots
from .enumerators import EnumMethod, estimate
from .kernel_entropy import DEFAULT_KERNEL, KernelConfig
from .spectrum import snapshot_spectrum

MASK64 = (1 << 64) - 1


def splitmix64(x):
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(master_seed, index):
    return splitmix64((master_seed + splitmix64(index & MASK64)) & MASK64)


class Classification(enum.Enum):
    CORRECT = "correct"
    FALSE_ALARM = "false_alarm"
    MISSED = "missed"

    @classmethod
    def of(cls, k_true, k_hat):
        if k_hat == k_true:
            return cls.CORRECT
        return cls.FALSE_ALARM if k_hat > k_true else cls.MISSED


@dataclass(frozen=True)
class TrialOutcome:
    method: EnumMethod
    k_true: int
    k_hat: int

    @property
    def classification(self):
        return Classification.of(self.k_true, self.k_hat)


@dataclass(frozen=True)
class TrialBatchStats:
    method: EnumMethod
    trials: int
    n_correct: int
    n_fa: int
    n_missed: int

    def __post_init__(self):
        if self.n_correct + self.n_fa + self.n_missed != self.trials:
            raise ValueError("outcome counts do not sum to the number of trials")

    @property
    def p_detect(self):
        return self.n_correct / self.trials

    @property
    def p_fa(self):
        return self.n_fa / self.trials

    @property
    def p_missed(self):
        return self.n_missed / self.trials


class Axis(enum.Enum):
    SNAPSHOTS = "snapshots"
    SNR_DB = "snr_db"
    NUM_SOURCES = "num_sources"
    EPSILON = "epsilon"
    ETA = "eta"

    def apply(self, base: ScenarioConfig, value) -> ScenarioConfig:
        """Copy of ``base`` with this axis set to ``value``."""
        if self is Axis.SNAPSHOTS:
            return dataclasses.replace(base, num_snapshots=int(value))
        if self is Axis.SNR_DB:
            if base.source_powers is not None:
                raise ConfigError("source_powers", "explicit powers cannot be combined with an snr_db sweep")
            return dataclasses.replace(base, snr_db=float(value))
        if self is Axis.NUM_SOURCES:
            # geometry and powers follow the defaults for each K
            return dataclasses.replace(base, num_sources=int(value), doas=None, source_powers=None)
        noise = base.noise
        eps = float(value) if self is Axis.EPSILON else noise.epsilon
        eta = float(value) if self is Axis.ETA else noise.eta
        return dataclasses.replace(base, noise=MixtureNoise(noise.sigma2, eps, eta))

    @property
    def integral(self):
        return self in (Axis.SNAPSHOTS, Axis.NUM_SOURCES)


@dataclass(frozen=True)
class SweepSpec:
    base: ScenarioConfig
    axis: Axis
    values: tuple
    methods: tuple = tuple(EnumMethod)
    trials_per_point: int = 1000
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "methods", tuple(EnumMethod(m) for m in self.methods))
        if not self.values:
            raise ConfigError("values", "sweep needs at least one axis value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError("values", "axis values must be strictly increasing")
        if not self.methods:
            raise ConfigError("methods", "at least one method is required")
        if int(self.trials_per_point) != self.trials_per_point or self.trials_per_point < 1:
            raise ConfigError("trials", f"must be a positive integer, got {self.trials_per_point}")
        if not 0 <= self.master_seed <= MASK64:
            raise ConfigError("seed", "must be a 64-bit unsigned integer")
        for v in self.values:
            self.point_config(v)

    def point_config(self, value):
        try:
            return self.axis.apply(self.base, value)
        except ConfigError as exc:
            raise ConfigError(exc.field, f"sweep point {self.axis.value}={value}: {exc}") from None


@dataclass(frozen=True)
class SweepRow:
    axis_value: object
    seed: int
    stats: List[TrialBatchStats]


def run_trial(config: ScenarioConfig, methods: Sequence, kernel: KernelConfig = DEFAULT_KERNEL,
              trial_seed=0) -> List[TrialOutcome]:
    """Generate one snapshot block and apply every method to its spectrum."""
    methods = [EnumMethod(m) for m in methods]
    if not methods:
        return []
    rng = np.random.default_rng(trial_seed)
    spec = snapshot_spectrum(generate_snapshots(config, rng))
    return [TrialOutcome(m, config.num_sources,
                         estimate(m, spec, config.num_snapshots, kernel).k_hat)
            for m in methods]


_COLUMN = {Classification.CORRECT: 0, Classification.FALSE_ALARM: 1, Classification.MISSED: 2}


def _count_range(config, methods, kernel, master_seed, start, stop):
    counts = np.zeros((len(methods), 3), dtype=np.int64)
    for i in range(start, stop):
        for row, outcome in enumerate(run_trial(config, methods, kernel, mix_seed(master_seed, i))):
            counts[row, _COLUMN[outcome.classification]] += 1
    return counts


def _chunks(trials, workers):
    n = max(1, min(trials, 4 * workers))
    edges = np.linspace(0, trials, n + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def run_batch(config: ScenarioConfig, methods: Sequence, kernel: KernelConfig = DEFAULT_KERNEL,
              trials=1000, master_seed=0, workers=1, executor=None) -> List[TrialBatchStats]:
    """Aggregate ``trials`` independent trials into one stats record per method."""
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials}")
    methods = [EnumMethod(m) for m in methods]
    if executor is None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return run_batch(config, methods, kernel, trials, master_seed, workers, pool)
    if executor is None:
        counts = _count_range(config, methods, kernel, master_seed, 0, trials)
    else:
        futures = [executor.submit(_count_range, config, methods, kernel, master_seed, a, b)
                   for a, b in _chunks(trials, workers)]
        counts = sum(f.result() for f in futures)
    return [TrialBatchStats(m, int(trials), *(int(c) for c in counts[row]))
            for row, m in enumerate(methods)]


def run_sweep(spec: SweepSpec, kernel: KernelConfig = DEFAULT_KERNEL, workers=1) -> List[SweepRow]:
    """One :func:`run_batch` per axis value, each with its own derived seed."""
    rows = []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for j, value in enumerate(spec.values):
            seed = mix_seed(spec.master_seed, j)
            stats = run_batch(spec.point_config(value), spec.methods, kernel,
                              spec.trials_per_point, seed, workers, pool)
            rows.append(SweepRow(value, seed, stats))
    finally:
        if pool is not None:
            pool.shutdown()
    return rows
