r"""
Click statistics of arrays of on-off detectors (APDs).

A single arm with ``N`` equally illuminated APDs, efficiency ``eta`` and dark
count exponent ``nu`` has the photon-number diagonal POVM

.. math::

    \Pi_k(n) = \binom{N}{k}\sum_{j=0}^{k}(-1)^j\binom{k}{j}
        e^{-(N-k+j)\nu}\Bigl(1-\frac{\eta(N-k+j)}{N}\Bigr)^n .

The alternating sum is only accurate for small ``N``; larger arrays use an
equivalent occupancy recursion whose terms are all non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy

from .errors import ArgumentError, NumericalError
from .fock import PhotonDistribution
from .gaussian import GaussianState
from .interferometer import (
    JointPhotonDistribution,
    LocalOscillator,
    joint_photon_distribution,
    mix_on_beamsplitter,
    output_generating_matrix,
)

__all__ = [
    "ALTERNATING_SUM_MAX_N",
    "ClickDistribution",
    "DetectorConfig",
    "DifferenceDistribution",
    "JointClickDistribution",
    "click_povm",
    "click_statistics",
    "difference_distribution",
    "joint_click_distribution",
    "single_click_distribution",
]

# beyond this the binomial coefficients in the alternating sum amplify roundoff past 1e-12
ALTERNATING_SUM_MAX_N = 8

NEGATIVE_FLOOR = -1e-12


@dataclass(frozen=True)
class DetectorConfig:
    """Identical detector arrays in both arms."""

    N: int
    eta: float = 1.0
    nu: float = 0.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ArgumentError(f"N must be a positive integer, got {self.N}")
        if not 0 <= self.eta <= 1:
            raise ArgumentError(f"eta must lie in [0, 1], got {self.eta}")
        if not self.nu >= 0:
            raise ArgumentError(f"nu must be >= 0, got {self.nu}")
        object.__setattr__(self, "N", int(self.N))

    def no_click_lambdas(self, count: int | None = None) -> np.ndarray:
        """Exponents ``eta*i/N`` of the normally ordered no-click operators, i = 0..count."""
        count = self.N if count is None else count
        return self.eta * np.arange(count + 1) / self.N


def _clean(c: np.ndarray) -> np.ndarray:
    """Clamp roundoff negatives, keeping the total mass; refuse real negatives."""
    worst = c.min()
    if worst < NEGATIVE_FLOOR:
        raise NumericalError(f"click probability {worst:.3e} is negative beyond roundoff")
    if worst >= 0:
        return c
    total = c.sum()
    c = np.where(c < 0, 0.0, c)
    return c * (total / c.sum())


@dataclass(frozen=True, eq=False)
class ClickDistribution:
    """Single-arm click probabilities ``c[k]``, k = 0..N."""

    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if abs(c.sum() - 1) > 1e-10:
            raise NumericalError(f"click distribution sums to {c.sum()!r}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def N(self) -> int:
        return self.c.size - 1


@dataclass(frozen=True, eq=False)
class JointClickDistribution:
    """Joint click probabilities ``c[k1, k2]`` recorded at LO phase ``phase``."""

    c: np.ndarray
    phase: float = 0.0

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ArgumentError("joint click distribution must be square")
        if c.min() < NEGATIVE_FLOOR:
            raise NumericalError("joint click distribution has negative entries")
        if abs(c.sum() - 1) > 1e-10:
            raise NumericalError(f"joint click distribution sums to {c.sum()!r}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def N(self) -> int:
        return self.c.shape[0] - 1

    def marginal(self, arm: int) -> ClickDistribution:
        return ClickDistribution(self.c.sum(axis=2 - arm))


@dataclass(frozen=True, eq=False)
class DifferenceDistribution:
    """Probabilities of ``dk = k1 - k2`` for dk = -N..N."""

    c: np.ndarray
    phase: float = 0.0

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if c.size % 2 != 1:
            raise ArgumentError("difference distribution needs 2N+1 entries")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def N(self) -> int:
        return (self.c.size - 1) // 2

    @property
    def delta_k(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def mean(self) -> float:
        return float(self.delta_k @ self.c)


def _povm_alternating(cfg: DetectorConfig, cutoff: int) -> np.ndarray:
    N, eta, nu = cfg.N, cfg.eta, cfg.nu
    n = np.arange(cutoff + 1)
    out = np.empty((N + 1, cutoff + 1))
    for k in range(N + 1):
        terms = []
        for j in range(k + 1):
            i = N - k + j
            terms.append((-1) ** j * math.comb(k, j) * math.exp(-i * nu) * (1 - eta * i / N) ** n)
        terms = np.array(terms)
        out[k] = math.comb(N, k) * np.array([math.fsum(col) for col in terms.T])
    return out


def _povm_occupancy(cfg: DetectorConfig, cutoff: int) -> np.ndarray:
    """Fire the array with dark counts first, then add detected photons one at a time."""
    N, eta = cfg.N, cfg.eta
    fired = np.arange(N + 1)
    dark = -math.expm1(-cfg.nu)
    # binomial pmf in the log domain; xlogy keeps 0 * log 0 = 0
    state = np.exp(gammaln(N + 1) - gammaln(fired + 1) - gammaln(N - fired + 1)
                   + xlogy(fired, dark) - cfg.nu * (N - fired))
    stay = 1 - eta * (N - fired) / N
    advance = eta * (N - fired[:-1]) / N
    out = np.empty((N + 1, cutoff + 1))
    out[:, 0] = state
    for n in range(1, cutoff + 1):
        new = state * stay
        new[1:] += state[:-1] * advance
        state = new
        out[:, n] = state
    return out


def click_povm(cfg: DetectorConfig, cutoff: int) -> np.ndarray:
    """Matrix ``P[k, n]`` of the probability of ``k`` clicks given ``n`` photons."""
    if cfg.N <= ALTERNATING_SUM_MAX_N:
        return _povm_alternating(cfg, cutoff)
    return _povm_occupancy(cfg, cutoff)


def single_click_distribution(dist: PhotonDistribution, cfg: DetectorConfig) -> ClickDistribution:
    c = click_povm(cfg, dist.cutoff) @ dist.probabilities
    return ClickDistribution(_clean(c))


def joint_click_distribution(joint: JointPhotonDistribution, cfg: DetectorConfig,
                             phase: float | None = None) -> JointClickDistribution:
    r"""Product-POVM statistics :math:`c_{k_1k_2}=\sum p(n_1,n_2)\Pi_{k_1}(n_1)\Pi_{k_2}(n_2)`."""
    p = joint.probabilities
    povm1 = click_povm(cfg, p.shape[0] - 1)
    povm2 = povm1 if p.shape[1] == p.shape[0] else click_povm(cfg, p.shape[1] - 1)
    c = povm1 @ p @ povm2.T
    return JointClickDistribution(_clean(c), joint.phase if phase is None else phase)


def _alternating_matrix(cfg: DetectorConfig) -> np.ndarray:
    """``A[k, i]`` with ``c = A E G E A^T``, E the dark-count factors ``exp(-i nu)``."""
    N = cfg.N
    a = np.zeros((N + 1, N + 1))
    for k in range(N + 1):
        for j in range(k + 1):
            a[k, N - k + j] = (-1) ** j * math.comb(N, k) * math.comb(k, j)
    return a * np.exp(-cfg.nu * np.arange(N + 1))


def click_statistics(signal, lo: LocalOscillator, cfg: DetectorConfig) -> JointClickDistribution:
    """Joint click statistics of ``signal`` mixed with ``lo``.

    Fock signals are propagated through the two-mode photon distribution.
    Gaussian signals use their closed-form generating function, which only
    supports small arrays; larger ones fall back to a Fock expansion.
    """
    if isinstance(signal, GaussianState):
        if cfg.N > ALTERNATING_SUM_MAX_N:
            signal = signal.to_fock()
        else:
            g = output_generating_matrix(signal, lo, cfg.no_click_lambdas())
            a = _alternating_matrix(cfg)
            return JointClickDistribution(_clean(a @ g @ a.T), lo.phi)
    joint = joint_photon_distribution(mix_on_beamsplitter(signal, lo))
    return joint_click_distribution(joint, cfg)


def difference_distribution(joint: JointClickDistribution) -> DifferenceDistribution:
    N = joint.N
    out = np.zeros(2 * N + 1)
    for offset in range(-N, N + 1):
        # k1 - k2 = offset lies on the diagonal -offset of c[k1, k2]
        out[offset + N] = np.trace(joint.c, offset=-offset)
    return DifferenceDistribution(out, joint.phase)
