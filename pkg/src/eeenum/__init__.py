"""Source enumeration by entropy estimation of covariance eigenvalues.

The compiled kernels in ``_core`` are used when built; otherwise the numpy
versions in ``_fallback`` are loaded. ``eeenum.BACKEND`` names the active one.
"""
__version__ = "0.1.0"

from ._backend import NAME as BACKEND
from .array_model import (ConfigError, GaussianNoise, MixtureNoise, ScenarioConfig,
                          build_steering_matrix, default_doas, generate_snapshots,
                          population_covariance, sample_noise)
from .enumerators import EnumMethod, EstimateResult, aic, eee_head, eee_tail, estimate, mdl
from .experiments import (Axis, Classification, SweepSpec, TrialBatchStats, TrialOutcome,
                          mix_seed, run_batch, run_sweep, run_trial)
from .kernel_entropy import (EntropyWindow, KernelConfig, delta_F, entropy_estimate,
                             gaussian_kernel, head_entropy_profile, scaled_kernel,
                             silverman_bandwidth, tail_entropy_profile)
from .spectrum import (EigenDecomposition, EigenSpectrum, eigendecompose, eigenvalues_descending,
                       sample_covariance, snapshot_spectrum)
