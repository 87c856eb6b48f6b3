"""Uniform linear array signal model and synthetic snapshot generation.

Observations follow ``X = A S + W`` with ``A`` the P x K steering matrix,
``S`` independent circularly symmetric complex Gaussian source samples and
``W`` white noise that is either Gaussian or a two-component Gaussian
mixture (impulsive).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np


class ConfigError(ValueError):
    """Invalid scenario or experiment parameter; ``field`` names the culprit."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class GaussianNoise:
    sigma2: float = 1.0

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ConfigError("sigma2", f"must be > 0, got {self.sigma2}")

    @property
    def epsilon(self):
        return 0.0

    @property
    def eta(self):
        return 1.0


@dataclass(frozen=True)
class MixtureNoise:
    """``(1 - epsilon) CN(0, sigma2) + epsilon CN(0, eta * sigma2)``."""

    sigma2: float = 1.0
    epsilon: float = 0.01
    eta: float = 100.0

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ConfigError("sigma2", f"must be > 0, got {self.sigma2}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError("epsilon", f"must lie in [0, 1], got {self.epsilon}")
        if not self.eta >= 1.0:
            raise ConfigError("eta", f"must be >= 1, got {self.eta}")

    @property
    def variance(self):
        return (1.0 - self.epsilon) * self.sigma2 + self.epsilon * self.eta * self.sigma2


NoiseModel = Union[GaussianNoise, MixtureNoise]


def default_doas(num_sources):
    """Directions (radians) evenly spaced strictly inside (-60, 60) degrees."""
    return tuple(np.deg2rad(np.linspace(-60.0, 60.0, num_sources + 2)[1:-1]).tolist())


@dataclass(frozen=True)
class ScenarioConfig:
    """One synthetic experiment point.

    ``doas`` and ``source_powers`` may be left as ``None``; they then follow
    the even-spacing rule and ``sigma2 * 10 ** (snr_db / 10)`` respectively.
    """

    num_sensors: int
    num_sources: int
    num_snapshots: int
    snr_db: float = 0.0
    doas: Optional[tuple] = None
    element_spacing: float = 0.5
    noise: NoiseModel = field(default_factory=GaussianNoise)
    source_powers: Optional[tuple] = None

    def __post_init__(self):
        if int(self.num_sensors) != self.num_sensors or self.num_sensors < 1:
            raise ConfigError("num_sensors", f"must be a positive integer, got {self.num_sensors}")
        if int(self.num_sources) != self.num_sources or self.num_sources < 0:
            raise ConfigError("num_sources", f"must be a non-negative integer, got {self.num_sources}")
        if self.num_sources >= self.num_sensors:
            raise ConfigError(
                "num_sources",
                f"must be smaller than num_sensors ({self.num_sources} >= {self.num_sensors})")
        if int(self.num_snapshots) != self.num_snapshots or self.num_snapshots < 1:
            raise ConfigError("num_snapshots", f"must be a positive integer, got {self.num_snapshots}")
        if not np.isfinite(self.snr_db):
            raise ConfigError("snr_db", "must be finite")
        if not self.element_spacing > 0:
            raise ConfigError("element_spacing", f"must be > 0, got {self.element_spacing}")
        if self.doas is not None:
            object.__setattr__(self, "doas", tuple(float(d) for d in self.doas))
            if len(self.doas) != self.num_sources:
                raise ConfigError(
                    "doas", f"expected {self.num_sources} directions, got {len(self.doas)}")
            _check_doas(self.doas)
        if self.source_powers is not None:
            object.__setattr__(self, "source_powers", tuple(float(p) for p in self.source_powers))
            if len(self.source_powers) != self.num_sources:
                raise ConfigError(
                    "source_powers",
                    f"expected {self.num_sources} powers, got {len(self.source_powers)}")
            if any(not p > 0 for p in self.source_powers):
                raise ConfigError("source_powers", "all powers must be > 0")

    @property
    def directions(self):
        return self.doas if self.doas is not None else default_doas(self.num_sources)

    @property
    def powers(self):
        if self.source_powers is not None:
            return self.source_powers
        power = self.noise.sigma2 * 10.0 ** (self.snr_db / 10.0)
        return (power,) * self.num_sources


def _check_doas(doas):
    for d in doas:
        if not -np.pi / 2 < d < np.pi / 2:
            raise ConfigError("doas", f"direction {d} rad outside (-pi/2, pi/2)")


def build_steering_matrix(num_sensors, doas, spacing=0.5):
    """P x K matrix with entries ``exp(j 2 pi spacing p sin(doa_k))``."""
    if num_sensors < 1:
        raise ConfigError("num_sensors", f"must be >= 1, got {num_sensors}")
    if not spacing > 0:
        raise ConfigError("element_spacing", f"must be > 0, got {spacing}")
    doas = np.asarray(doas, dtype=np.float64).reshape(-1)
    _check_doas(doas)
    p = np.arange(num_sensors)[:, None]
    return np.exp(2j * np.pi * spacing * p * np.sin(doas)[None, :])


def population_covariance(config: ScenarioConfig) -> np.ndarray:
    """``A diag(powers) A^H + sigma2 I``."""
    a = build_steering_matrix(config.num_sensors, config.directions, config.element_spacing)
    r_s = np.diag(np.asarray(config.powers, dtype=np.float64))
    cov = a @ r_s @ a.conj().T + config.noise.sigma2 * np.eye(config.num_sensors)
    return 0.5 * (cov + cov.conj().T)


def sample_noise(model: NoiseModel, num_sensors, num_snapshots, rng: np.random.Generator):
    """Draw a P x N block of circular complex noise from ``model``.

    Each entry is independently impulsive with probability ``epsilon`` (variance
    ``eta * sigma2``), otherwise of variance ``sigma2``.
    """
    g = rng.standard_normal((2, num_sensors, num_snapshots))
    var = np.full((num_sensors, num_snapshots), model.sigma2)
    if model.epsilon > 0:
        impulsive = rng.random((num_sensors, num_snapshots)) < model.epsilon
        var[impulsive] *= model.eta
    return np.sqrt(0.5 * var) * (g[0] + 1j * g[1])


def generate_snapshots(config: ScenarioConfig, rng: np.random.Generator) -> np.ndarray:
    """One P x N snapshot block for ``config``; column i is x(t_i)."""
    k, n = config.num_sources, config.num_snapshots
    g = rng.standard_normal((2, k, n))
    amp = np.sqrt(0.5 * np.asarray(config.powers, dtype=np.float64))[:, None]
    s = amp * (g[0] + 1j * g[1])
    a = build_steering_matrix(config.num_sensors, config.directions, config.element_spacing)
    return a @ s + sample_noise(config.noise, config.num_sensors, n, rng)
