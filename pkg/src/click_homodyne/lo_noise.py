r"""
Averaging over classical local-oscillator fluctuations.

The LO amplitude is written in the frame rotated by the mean phase,
:math:`\beta = (x + ip)e^{i\varphi}`, with independent Gaussian
fluctuations of ``x`` around ``r`` (amplitude noise, ``sigma_x``) and of
``p`` around 0 (phase noise, ``sigma_p = r*sigma_phi``).  Moments are
averaged first; variances and determinants are formed afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .detector import DetectorConfig
from .errors import ArgumentError, QuadratureError
from .interferometer import LocalOscillator
from .moments import MomentSet, default_max_order, x_moments_analytic
from .witness import normally_ordered_variance

__all__ = [
    "LONoiseModel",
    "QuadratureRule",
    "gauss_hermite_rule",
    "noisy_moments",
    "noisy_variance_sweep",
]

DEFAULT_NODES = 21
STABILITY_TOL = 1e-8
MAX_DOUBLINGS = 3


@dataclass(frozen=True)
class LONoiseModel:
    """Gaussian LO fluctuations around the mean amplitude ``r e^{i phi}``."""

    r: float
    phi: float = 0.0
    sigma_x: float = 0.0
    sigma_p: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ArgumentError(f"mean LO amplitude must be >= 0, got {self.r}")
        if self.sigma_x < 0 or self.sigma_p < 0:
            raise ArgumentError("noise standard deviations must be >= 0")

    @classmethod
    def from_phase_noise(cls, r: float, phi: float, sigma_phi: float, sigma_r: float = 0.0):
        """Build from a phase spread in radians, ``sigma_p = r * sigma_phi``."""
        return cls(r, phi, sigma_r, r * sigma_phi)

    def with_phase(self, phi: float) -> "LONoiseModel":
        return replace(self, phi=phi)

    @property
    def noiseless(self) -> bool:
        return self.sigma_x == 0 and self.sigma_p == 0


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Tensor Gauss-Hermite rule over the LO amplitude plane."""

    betas: np.ndarray
    weights: np.ndarray
    n_x: int
    n_p: int

    @property
    def degree(self) -> tuple[int, int]:
        """Polynomial degree integrated exactly along x and p."""
        return 2 * self.n_x - 1, 2 * self.n_p - 1

    def integrate(self, values: np.ndarray) -> np.ndarray:
        # fixed summation order keeps results bit-reproducible
        return np.tensordot(self.weights, values, axes=(0, 0))


def _axis(mean: float, sigma: float, n: int):
    if sigma == 0:
        return np.array([mean]), np.array([1.0])
    t, w = np.polynomial.hermite.hermgauss(n)
    return mean + np.sqrt(2) * sigma * t, w / np.sqrt(np.pi)


def gauss_hermite_rule(noise: LONoiseModel, n_x: int = DEFAULT_NODES,
                       n_p: int = DEFAULT_NODES) -> QuadratureRule:
    """Nodes ``beta = (x + i p) e^{i phi}`` and weights of the Gaussian LO density."""
    xs, wx = _axis(noise.r, noise.sigma_x, n_x)
    ps, wp = _axis(0.0, noise.sigma_p, n_p)
    x, p = np.meshgrid(xs, ps, indexing="ij")
    betas = ((x + 1j * p) * np.exp(1j * noise.phi)).ravel()
    weights = np.outer(wx, wp).ravel()
    return QuadratureRule(betas, weights, len(xs), len(ps))


def _average(signal, rule: QuadratureRule, cfg: DetectorConfig, max_order: int) -> np.ndarray:
    values = np.array([
        x_moments_analytic(signal, LocalOscillator.from_amplitude(b), cfg, max_order).moments
        for b in rule.betas
    ])
    return rule.integrate(values)


def noisy_moments(signal, noise: LONoiseModel, cfg: DetectorConfig,
                  max_order: int | None = None, nodes: int = DEFAULT_NODES,
                  tol: float = STABILITY_TOL, max_doublings: int = MAX_DOUBLINGS) -> MomentSet:
    r"""Moments averaged over the LO fluctuation density.

    The node count starts at ``nodes`` per noisy axis and is doubled until a
    doubling changes no moment by more than ``tol``; otherwise
    :class:`QuadratureError` is raised.
    """
    max_order = default_max_order(cfg.N) if max_order is None else max_order
    if noise.noiseless:
        return x_moments_analytic(signal, LocalOscillator(noise.r, noise.phi), cfg, max_order)
    n = nodes
    current = _average(signal, gauss_hermite_rule(noise, n, n), cfg, max_order)
    for _ in range(max_doublings):
        n *= 2
        refined = _average(signal, gauss_hermite_rule(noise, n, n), cfg, max_order)
        change = np.max(np.abs(refined - current))
        current = refined
        if change < tol:
            return MomentSet(current, noise.phi % (2 * np.pi), cfg.N)
    raise QuadratureError(
        f"LO-noise average not stable to {tol:g} after {max_doublings} doublings "
        f"({n} nodes per axis, last change {change:.2e})"
    )


def noisy_variance_sweep(signal, noise: LONoiseModel, cfg: DetectorConfig, phases,
                         **kwargs) -> np.ndarray:
    r""":math:`\langle{:}(\Delta\hat X(\varphi))^2{:}\rangle` over ``phases`` under LO noise."""
    return np.array([
        normally_ordered_variance(noisy_moments(signal, noise.with_phase(phi), cfg, 2, **kwargs))
        for phi in phases
    ])
