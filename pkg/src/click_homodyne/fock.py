r"""
Truncated single-mode Fock states.

All constructors work in the log domain, so that amplitudes such as
:math:`\alpha^n/\sqrt{n!}` stay finite for cutoffs of several hundred photons.
A constructor never renormalizes: if the retained norm is smaller than
``1 - truncation`` a :class:`TruncationError` is raised and the caller has to
raise the cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import ArgumentError, TruncationError

__all__ = [
    "DEFAULT_TRUNCATION",
    "FockVector",
    "PhotonDistribution",
    "coherent_state",
    "fock_state",
    "geometric_expectation",
    "photon_distribution",
    "squeezed_vacuum",
    "superposition_0n",
    "vacuum",
]

DEFAULT_TRUNCATION = 1e-10

# largest cutoff tried when a constructor picks its own cutoff
_MAX_AUTO_CUTOFF = 20000


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FockVector:
    r"""Pure single-mode state :math:`\sum_{n\le D} c_n|n\rangle`.

    Parameters
    ----------
    amplitudes : array_like
        Complex amplitudes :math:`c_0,\dots,c_D`.
    truncation : float
        Norm budget; the retained norm must lie in ``[1 - truncation, 1]``.
    """

    amplitudes: np.ndarray
    truncation: float = DEFAULT_TRUNCATION

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ArgumentError("amplitudes must be a non-empty 1-d array")
        if not 0 <= self.truncation < 1:
            raise ArgumentError(f"truncation budget must lie in [0, 1), got {self.truncation}")
        object.__setattr__(self, "amplitudes", _frozen(amps))
        norm = self.norm
        if norm > 1 + 1e-12:
            raise ArgumentError(f"state norm {norm!r} exceeds 1")
        if norm < 1 - self.truncation:
            raise TruncationError(
                f"retained norm {norm:.3e} below 1 - {self.truncation:g}; "
                f"cutoff {self.cutoff} is too small"
            )

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size - 1

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def mean_photon_number(self) -> float:
        return float(np.arange(self.cutoff + 1) @ self.probabilities)

    def mean_field(self) -> complex:
        r""":math:`\langle\hat a\rangle = \sum_n \sqrt{n+1}\,c_n^* c_{n+1}`."""
        c = self.amplitudes
        return complex(np.sum(np.conj(c[:-1]) * c[1:] * np.sqrt(np.arange(1, c.size))))

    def rotated(self, theta: float) -> "FockVector":
        r"""Apply the phase rotation :math:`e^{-i\theta\hat n}`."""
        n = np.arange(self.cutoff + 1)
        return FockVector(self.amplitudes * np.exp(-1j * theta * n), self.truncation)


@dataclass(frozen=True, eq=False)
class PhotonDistribution:
    """Photon-number probabilities ``p[n]`` for ``n = 0..D``."""

    probabilities: np.ndarray
    truncation: float = DEFAULT_TRUNCATION

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 1:
            raise ArgumentError("probabilities must be a 1-d array")
        if np.any(p < 0):
            raise ArgumentError("photon probabilities must be non-negative")
        total = p.sum()
        if total > 1 + 1e-12 or total < 1 - self.truncation:
            raise TruncationError(f"photon distribution sums to {total!r}")
        object.__setattr__(self, "probabilities", _frozen(p))

    @property
    def cutoff(self) -> int:
        return self.probabilities.size - 1

    def mean(self) -> float:
        return float(np.arange(self.cutoff + 1) @ self.probabilities)

    def geometric(self, t):
        r"""Return :math:`\sum_n t^n p_n` for scalar or array ``t``."""
        t = np.asarray(t, dtype=float)
        powers = t[..., None] ** np.arange(self.cutoff + 1)
        return powers @ self.probabilities


def _auto_cutoff(log_prob, truncation: float) -> int:
    """Smallest D whose retained probability meets the budget."""
    n = np.arange(_MAX_AUTO_CUTOFF + 1)
    p = np.exp(log_prob(n))
    missing = 1.0 - np.cumsum(p)
    # stop a little past the budget so that roundoff in the final norm cannot fail it
    ok = np.nonzero(missing < 0.5 * truncation)[0]
    if ok.size == 0:
        raise TruncationError(f"no cutoff up to {_MAX_AUTO_CUTOFF} meets the budget")
    return int(ok[0])


def vacuum(cutoff: int = 0) -> FockVector:
    if cutoff < 0:
        raise ArgumentError("cutoff must be >= 0")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[0] = 1
    return FockVector(amps)


def fock_state(n: int, cutoff: int | None = None) -> FockVector:
    cutoff = n if cutoff is None else cutoff
    if n < 0 or cutoff < n:
        raise ArgumentError(f"need 0 <= n <= cutoff, got n={n}, cutoff={cutoff}")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[n] = 1
    return FockVector(amps)


def coherent_state(alpha: complex, cutoff: int | None = None,
                   truncation: float = DEFAULT_TRUNCATION) -> FockVector:
    r"""Coherent state :math:`e^{-|\alpha|^2/2}\sum_n \alpha^n/\sqrt{n!}\,|n\rangle`.

    With ``cutoff=None`` the smallest cutoff meeting ``truncation`` is used.
    """
    alpha = complex(alpha)
    mod2 = abs(alpha) ** 2
    if mod2 == 0:
        return FockVector(vacuum(0 if cutoff is None else cutoff).amplitudes, truncation)

    def log_prob(n):
        return -mod2 + n * np.log(mod2) - gammaln(n + 1)

    if cutoff is None:
        cutoff = _auto_cutoff(log_prob, truncation)
    if cutoff < 0:
        raise ArgumentError("cutoff must be >= 0")
    n = np.arange(cutoff + 1)
    amps = np.exp(0.5 * log_prob(n) + 1j * np.angle(alpha) * n)
    return FockVector(amps, truncation)


def squeezed_vacuum(xi: float, cutoff: int | None = None,
                    truncation: float = DEFAULT_TRUNCATION) -> FockVector:
    r"""Squeezed vacuum :math:`(\cosh\xi)^{-1/2}\exp(-\tfrac12\tanh\xi\,\hat a^{\dagger2})|0\rangle`.

    The state is squeezed along the quadrature :math:`\hat x(0)`; only even
    photon numbers are populated.  The cutoff needed grows quickly with
    ``xi`` (mean photon number :math:`\sinh^2\xi`).
    """
    if xi < 0:
        raise ArgumentError(f"squeezing parameter must be >= 0, got {xi}")
    if xi == 0:
        return FockVector(vacuum(0 if cutoff is None else cutoff).amplitudes, truncation)
    log_tanh = np.log(np.tanh(xi))
    log_cosh = np.log(np.cosh(xi))

    def log_amp_even(m):
        # |amplitude_{2m}| in the log domain
        return (-0.5 * log_cosh + m * log_tanh + 0.5 * gammaln(2 * m + 1)
                - m * np.log(2.0) - gammaln(m + 1))

    def log_prob(n):
        out = np.full(np.shape(n), -np.inf)
        even = n % 2 == 0
        out[even] = 2 * log_amp_even(n[even] // 2)
        return out

    if cutoff is None:
        cutoff = _auto_cutoff(log_prob, truncation)
    if cutoff < 0:
        raise ArgumentError("cutoff must be >= 0")
    m = np.arange(cutoff // 2 + 1)
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[0::2] = np.exp(log_amp_even(m)) * np.where(m % 2 == 0, 1.0, -1.0)
    return FockVector(amps, truncation)


def superposition_0n(n: int, cutoff: int | None = None) -> FockVector:
    r"""The state :math:`(|0\rangle + |n\rangle)/\sqrt2`."""
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")
    cutoff = n if cutoff is None else cutoff
    if cutoff < n:
        raise ArgumentError(f"cutoff {cutoff} cannot hold photon number {n}")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[0] = amps[n] = 2 ** -0.5
    return FockVector(amps)


def geometric_expectation(state: FockVector, t: float) -> float:
    r"""Return :math:`\langle t^{\hat n}\rangle = \sum_n t^n |c_n|^2`.

    This is the value of the normally ordered exponential
    :math:`\langle{:}e^{-\lambda\hat n}{:}\rangle` with :math:`t = 1-\lambda`.
    """
    if not 0 <= t <= 1:
        raise ArgumentError(f"t must lie in [0, 1], got {t}")
    p = state.probabilities
    return float(np.sum(t ** np.arange(p.size) * p))


def photon_distribution(state: FockVector) -> PhotonDistribution:
    return PhotonDistribution(state.probabilities, state.truncation)
