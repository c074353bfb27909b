r"""
Normally ordered moments of the nonlinear click quadrature
:math:`\hat X(\varphi) = N(\hat\pi_1 - \hat\pi_2)`.

Two independent routes are provided:

* from click counts, with the sampling formula that turns a measured joint
  distribution :math:`c_{k_1k_2}` into :math:`\langle{:}\hat\pi_1^{j_1}\hat\pi_2^{j_2}{:}\rangle`;
* analytically, from the normally ordered generating function of the two
  output photon numbers.

Both agree to roundoff; the agreement is an algebraic identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detector import DetectorConfig, JointClickDistribution
from .errors import ArgumentError
from .interferometer import LocalOscillator, output_generating_matrix

__all__ = [
    "MomentSet",
    "closed_form_coherent_X",
    "default_max_order",
    "linear_limit_X",
    "pi_moment_from_counts",
    "x_moment_from_counts",
    "x_moments_analytic",
    "x_moments_from_counts",
]


def default_max_order(N: int) -> int:
    """Highest order entering the matrix of moments, ``2*floor(N/2)``."""
    return 2 * (N // 2)


@dataclass(frozen=True, eq=False)
class MomentSet:
    r"""Moments :math:`\langle{:}\hat X^m(\varphi){:}\rangle` for ``m = 0..max_order``."""

    moments: np.ndarray
    phase: float
    N: int

    def __post_init__(self):
        m = np.array(self.moments, dtype=float)
        if m.ndim != 1 or m.size == 0:
            raise ArgumentError("moments must be a non-empty vector")
        if m.size - 1 > self.N:
            raise ArgumentError(f"order {m.size - 1} exceeds N = {self.N}")
        if abs(m[0] - 1) > 1e-9:
            raise ArgumentError(f"zeroth moment must be 1, got {m[0]!r}")
        m[0] = 1.0
        bound = float(self.N) ** np.arange(m.size)
        if np.any(np.abs(m) > bound * (1 + 1e-9) + 1e-12):
            raise ArgumentError("moment exceeds the bound |<:X^m:>| <= N^m")
        m.setflags(write=False)
        object.__setattr__(self, "moments", m)

    @property
    def max_order(self) -> int:
        return self.moments.size - 1

    def __getitem__(self, m: int) -> float:
        return float(self.moments[m])


def _arm_weights(N: int, j: int) -> np.ndarray:
    """``C(k, j) / C(N, j)`` for k = 0..N, as a product of ratios."""
    k = np.arange(N + 1, dtype=float)
    w = np.ones(N + 1)
    for i in range(j):
        w *= (k - i) / (N - i)
    w[: j] = 0.0
    return w


def pi_moment_from_counts(joint: JointClickDistribution, j1: int, j2: int) -> float:
    r"""Sample :math:`\langle{:}\hat\pi_1^{j_1}\hat\pi_2^{j_2}{:}\rangle` from click counts."""
    N = joint.N
    if not (0 <= j1 <= N and 0 <= j2 <= N):
        raise ArgumentError(f"orders ({j1}, {j2}) must lie in 0..{N}")
    return float(_arm_weights(N, j1) @ joint.c @ _arm_weights(N, j2))


def x_moment_from_counts(joint: JointClickDistribution, m: int) -> float:
    r"""Sample :math:`\langle{:}\hat X^m(\varphi){:}\rangle` from click counts, ``m <= N``."""
    N = joint.N
    if not 0 <= m <= N:
        raise ArgumentError(f"order {m} must lie in 0..{N}: the sampling formula needs j <= N per arm")
    total = 0.0
    for j in range(m + 1):
        total += math.comb(m, j) * (-1) ** (m - j) * pi_moment_from_counts(joint, j, m - j)
    return float(N) ** m * total


def x_moments_from_counts(joint: JointClickDistribution, max_order: int | None = None) -> MomentSet:
    max_order = default_max_order(joint.N) if max_order is None else max_order
    moments = [x_moment_from_counts(joint, m) for m in range(max_order + 1)]
    return MomentSet(np.array(moments), joint.phase, joint.N)


def _x_moments_from_generating(g: np.ndarray, cfg: DetectorConfig, max_order: int) -> np.ndarray:
    """Combine ``G[i1, i2]`` (no-click exponents ``eta*i/N``) into X moments."""
    damp = np.exp(-cfg.nu * np.arange(max_order + 1))
    g = damp[:, None] * g * damp[None, :]
    pi = np.zeros((max_order + 1, max_order + 1))
    for j1 in range(max_order + 1):
        for j2 in range(max_order + 1 - j1):
            c1 = np.array([(-1) ** i * math.comb(j1, i) for i in range(j1 + 1)])
            c2 = np.array([(-1) ** i * math.comb(j2, i) for i in range(j2 + 1)])
            pi[j1, j2] = c1 @ g[: j1 + 1, : j2 + 1] @ c2
    out = np.empty(max_order + 1)
    for m in range(max_order + 1):
        out[m] = float(cfg.N) ** m * sum(
            math.comb(m, j) * (-1) ** (m - j) * pi[j, m - j] for j in range(m + 1))
    return out


def x_moments_analytic(signal, lo: LocalOscillator, cfg: DetectorConfig,
                       max_order: int | None = None) -> MomentSet:
    r"""Moments :math:`\langle{:}\hat X^m(\varphi){:}\rangle` without sampling.

    Parameters
    ----------
    signal : FockVector or GaussianState
        Signal state entering the beam splitter.
    lo : LocalOscillator
        Local oscillator; its phase is the measured quadrature angle.
    cfg : DetectorConfig
    max_order : int, optional
        Defaults to ``2*floor(N/2)``, the orders needed by the matrix of
        moments.  Must not exceed ``N``.
    """
    max_order = default_max_order(cfg.N) if max_order is None else max_order
    if not 0 <= max_order <= cfg.N:
        raise ArgumentError(f"max_order must lie in 0..{cfg.N}, got {max_order}")
    g = output_generating_matrix(signal, lo, cfg.no_click_lambdas(max_order))
    return MomentSet(_x_moments_from_generating(g, cfg, max_order), lo.phi, cfg.N)


def closed_form_coherent_X(alpha: complex, lo: LocalOscillator, cfg: DetectorConfig) -> float:
    r""":math:`\langle\hat X(\varphi)\rangle` for a coherent signal :math:`|\alpha\rangle`.

    .. math::

        2N e^{-\eta r^2/(2N)-\nu} e^{-\eta|\alpha|^2/(2N)}
        \sinh\bigl[\eta r\,x(\varphi)/(2N)\bigr],\quad
        x(\varphi) = \alpha e^{-i\varphi}+\alpha^* e^{i\varphi}.
    """
    N, eta = cfg.N, cfg.eta
    x = 2 * (complex(alpha) * np.exp(-1j * lo.phi)).real
    return float(2 * N * np.exp(-eta * lo.r**2 / (2 * N) - cfg.nu - eta * abs(alpha) ** 2 / (2 * N))
                 * np.sinh(eta * lo.r * x / (2 * N)))


def linear_limit_X(signal, lo: LocalOscillator, cfg: DetectorConfig) -> float:
    r"""Large-array limit :math:`e^{-\nu}\eta r\langle\hat x(\varphi)\rangle`."""
    x = 2 * (np.exp(-1j * lo.phi) * signal.mean_field()).real
    return float(np.exp(-cfg.nu) * cfg.eta * lo.r * x)
