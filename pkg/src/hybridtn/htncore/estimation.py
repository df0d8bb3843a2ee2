"""Estimation settings, estimator outputs, and the shared sampling helpers.

Every random draw comes from a generator derived from ``(seed, *stream)``
via :class:`numpy.random.SeedSequence`, so each measurement setting owns an
independent substream and results do not depend on evaluation order.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import ContractViolation
from ..statesim import (
    ALPHA_IMAG,
    ALPHA_REAL,
    HadamardTestSpec,
    Statevector,
    hadamard_test_distribution,
    marginal_probabilities,
    sample,
)

MODES = ("exact", "shots")
SPLITS = ("stratified", "randomized")
ENGINES = ("spectral", "svd", "montecarlo")


@dataclass(frozen=True)
class EstimationConfig:
    mode: str = "exact"
    shots: int = 0
    seed: int = 0
    split: str = "stratified"
    engine: str = "svd"
    construction_shots: Optional[int] = None
    contraction_shots: Optional[int] = None
    stream: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ContractViolation(f"mode must be one of {MODES}")
        if self.split not in SPLITS:
            raise ContractViolation(f"split must be one of {SPLITS}")
        if self.engine not in ENGINES:
            raise ContractViolation(f"engine must be one of {ENGINES}")
        if self.mode == "shots" and self.shots < 1:
            raise ContractViolation("shot mode needs shots >= 1")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=self.stream))

    def child(self, *key: int, shots: Optional[int] = None) -> "EstimationConfig":
        """Config for a sub-task: extended stream key and (optionally) its own budget."""
        budget = self.shots if shots is None else max(1, int(shots))
        return dataclasses.replace(self, stream=self.stream + tuple(key), shots=budget)


@dataclass(frozen=True)
class ShotEstimate:
    value: complex
    stderr: float
    shots: int
    seed: Optional[int]

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "stderr", float(self.stderr))

    def scaled(self, factor: float) -> "ShotEstimate":
        return ShotEstimate(self.value * factor, self.stderr * abs(factor), self.shots, self.seed)


def exact_estimate(value) -> ShotEstimate:
    return ShotEstimate(value, 0.0, 0, None)


def mean_and_stderr(samples: np.ndarray) -> tuple[complex, float]:
    """Sample mean and its standard error (complex samples use E|x - mean|^2)."""
    s = np.asarray(samples)
    m = s.mean()
    if s.size < 2:
        return m, 0.0
    var = np.sum(np.abs(s - m) ** 2) / (s.size - 1)
    return m, float(np.sqrt(var / s.size))


def direct_measurement(state: Statevector, values: np.ndarray, measured, cfg: EstimationConfig):
    """Estimate sum_j p(j) values[j] from computational-basis measurement.

    Returns ``(mean, stderr)``.
    """
    probs = marginal_probabilities(state.probabilities(), state.qubits, measured)
    if cfg.exact:
        return float(np.dot(probs, values)), 0.0
    rng = cfg.rng()
    draws = rng.choice(probs.size, size=cfg.shots, p=probs / probs.sum())
    m, se = mean_and_stderr(np.asarray(values)[draws])
    return float(m.real), se


def hadamard_part(branch0: Statevector, branch1: Statevector, alpha: float, weights, measured,
                  cfg: EstimationConfig):
    """Estimate Re(e^{-i alpha} <branch0|F|branch1>) with F = diag(weights) on ``measured``."""
    dist = hadamard_test_distribution(HadamardTestSpec(branch0, branch1, alpha, tuple(measured)))
    if cfg.exact:
        return dist.weighted_mean(weights), 0.0
    b, j = sample(dist, cfg.shots, cfg.rng())
    vals = b if weights is None else b * np.asarray(weights)[j]
    m, se = mean_and_stderr(vals)
    return float(m.real), se


def hadamard_complex(branch0: Statevector, branch1: Statevector, weights, measured,
                     cfg_re: EstimationConfig, cfg_im: EstimationConfig):
    """<branch0|F|branch1> from one real-part and one imaginary-part setting."""
    re, se_re = hadamard_part(branch0, branch1, ALPHA_REAL, weights, measured, cfg_re)
    im, se_im = hadamard_part(branch0, branch1, ALPHA_IMAG, weights, measured, cfg_im)
    return complex(re, im), float(np.hypot(se_re, se_im))
