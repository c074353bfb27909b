"""
Finite-shot emulation of a click-counting homodyne experiment.

Random streams come from a counter-based Philox generator keyed by
``(seed, task)``, so every histogram and bootstrap replicate is a pure
function of its inputs regardless of how tasks are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detector import JointClickDistribution
from .errors import ArgumentError
from .moments import MomentSet, default_max_order, x_moments_from_counts
from .witness import minor_determinant, moment_matrix

__all__ = [
    "ClickHistogram",
    "EstimateWithError",
    "WitnessEstimate",
    "estimate_moments",
    "estimate_witness",
    "rng_for",
    "sample_clicks",
]

DEFAULT_RESAMPLES = 200
WITNESS_SIGMAS = 3.0

# stream indices reserved per purpose
_SAMPLING_STREAM = 0
_BOOTSTRAP_STREAM = 1


def rng_for(seed: int, task: int = 0) -> np.random.Generator:
    """Independent Philox stream for ``(seed, task)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, task])))


@dataclass(frozen=True, eq=False)
class ClickHistogram:
    """Observed counts ``n[k1, k2]`` from ``shots`` trials at LO phase ``phase``."""

    counts: np.ndarray
    shots: int
    seed: int | None = None
    phase: float = 0.0

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ArgumentError("histogram must be a square matrix")
        if np.any(counts < 0) or counts.sum() != self.shots:
            raise ArgumentError("counts must be non-negative and sum to shots")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def N(self) -> int:
        return self.counts.shape[0] - 1

    def frequencies(self) -> JointClickDistribution:
        return JointClickDistribution(self.counts / self.shots, self.phase)


@dataclass(frozen=True)
class EstimateWithError:
    value: float
    standard_error: float
    method: str = "bootstrap"


@dataclass(frozen=True)
class WitnessEstimate(EstimateWithError):
    index_set: tuple[int, ...] = (0, 1)
    sigmas: float = WITNESS_SIGMAS

    @property
    def nonclassical(self) -> bool:
        return self.value < -self.sigmas * self.standard_error

    @property
    def verdict(self) -> str:
        return "nonclassical-witnessed" if self.nonclassical else "inconclusive"


def sample_clicks(joint: JointClickDistribution, shots: int, seed: int, task: int = 0) -> ClickHistogram:
    """Draw ``shots`` i.i.d. joint click events from ``joint``."""
    if shots < 1:
        raise ArgumentError(f"shots must be >= 1, got {shots}")
    p = joint.c.ravel()
    p = p / p.sum()
    rng = rng_for(seed, 2 * task + _SAMPLING_STREAM)
    counts = rng.multinomial(shots, p).reshape(joint.c.shape)
    return ClickHistogram(counts, shots, seed, joint.phase)


def _bootstrap_frequencies(hist: ClickHistogram, resamples: int, task: int) -> np.ndarray:
    seed = 0 if hist.seed is None else hist.seed
    rng = rng_for(seed, 2 * task + _BOOTSTRAP_STREAM)
    p = (hist.counts / hist.shots).ravel()
    draws = rng.multinomial(hist.shots, p, size=resamples)
    return draws.reshape(resamples, *hist.counts.shape) / hist.shots


def _moments_of(freqs: np.ndarray, phase: float, max_order: int) -> np.ndarray:
    return x_moments_from_counts(JointClickDistribution(freqs, phase), max_order).moments


def estimate_moments(hist: ClickHistogram, max_order: int | None = None,
                     resamples: int = DEFAULT_RESAMPLES, task: int = 0) -> list[EstimateWithError]:
    """Plug-in moment estimates with nonparametric bootstrap standard errors."""
    max_order = default_max_order(hist.N) if max_order is None else max_order
    point = _moments_of(hist.counts / hist.shots, hist.phase, max_order)
    boot = np.array([_moments_of(f, hist.phase, max_order)
                     for f in _bootstrap_frequencies(hist, resamples, task)])
    se = boot.std(axis=0, ddof=1)
    return [EstimateWithError(float(v), float(s)) for v, s in zip(point, se)]


def estimate_witness(hist: ClickHistogram, index_set=(0, 1), resamples: int = DEFAULT_RESAMPLES,
                     sigmas: float = WITNESS_SIGMAS, task: int = 0) -> WitnessEstimate:
    """Determinant of the plug-in matrix of moments with a bootstrap error.

    The verdict requires the value to lie more than ``sigmas`` standard errors
    below zero.  This threshold is a heuristic, not a calibrated test.
    """
    idx = tuple(sorted(set(index_set)))
    size = idx[-1] + 1
    order = 2 * (size - 1)
    if order > hist.N:
        raise ArgumentError(f"index set {idx} needs moments up to {order} > N = {hist.N}")

    def det_of(freqs):
        moments = MomentSet(_moments_of(freqs, hist.phase, order), hist.phase, hist.N)
        return minor_determinant(moment_matrix(moments, size), idx).determinant

    point = det_of(hist.counts / hist.shots)
    boot = np.array([det_of(f) for f in _bootstrap_frequencies(hist, resamples, task)])
    return WitnessEstimate(float(point), float(boot.std(ddof=1)), "bootstrap", idx, sigmas)
