r"""
Balanced mixing of the signal with a coherent local oscillator.

Output arm 1 carries :math:`\hat a_1 = (\hat a_{\rm SI} + \hat a_{\rm LO})/\sqrt2`,
arm 2 carries :math:`\hat a_2 = (\hat a_{\rm SI} - \hat a_{\rm LO})/\sqrt2`.
Two-mode states are stored on a square grid ``(n1, n2)`` of which only the
triangle ``n1 + n2 <= S`` is populated; the beam splitter conserves the total
photon number, so this triangle is closed under the transformation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from .errors import ArgumentError, NumericalError, TruncationError
from .fock import DEFAULT_TRUNCATION, FockVector, PhotonDistribution
from .gaussian import GaussianState, gaussian_generating_function

__all__ = [
    "JointPhotonDistribution",
    "LocalOscillator",
    "TwoModeState",
    "choose_total_cutoff",
    "joint_photon_distribution",
    "mix_on_beamsplitter",
    "output_generating_matrix",
]

# discarded two-mode mass tolerated by the automatic cutoff
MIXING_BUDGET = 1e-14


@dataclass(frozen=True)
class LocalOscillator:
    r"""Coherent local oscillator :math:`\beta = r e^{i\varphi}`."""

    r: float
    phi: float = 0.0

    def __post_init__(self):
        if not self.r >= 0:
            raise ArgumentError(f"LO amplitude must be >= 0, got {self.r}")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "phi", float(self.phi) % (2 * np.pi))

    @classmethod
    def from_amplitude(cls, beta: complex) -> "LocalOscillator":
        return cls(abs(beta), float(np.angle(beta)))

    @property
    def beta(self) -> complex:
        return self.r * np.exp(1j * self.phi)

    def with_phase(self, phi: float) -> "LocalOscillator":
        return LocalOscillator(self.r, phi)


def _triangle_mask(size: int) -> np.ndarray:
    n = np.arange(size)
    return (n[:, None] + n[None, :]) < size


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Amplitudes ``psi[n1, n2]`` of the two output arms, zero for ``n1 + n2 > S``."""

    amplitudes: np.ndarray
    phase: float = 0.0
    truncation: float = DEFAULT_TRUNCATION

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ArgumentError("two-mode amplitudes must be a square matrix")
        a[~_triangle_mask(a.shape[0])] = 0
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        if self.norm < 1 - self.truncation:
            raise TruncationError(
                f"two-mode norm {self.norm:.3e} below budget; raise the total cutoff"
            )

    @property
    def total_cutoff(self) -> int:
        return self.amplitudes.shape[0] - 1

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True, eq=False)
class JointPhotonDistribution:
    """Joint photon-number probabilities ``p[n1, n2]`` of the output arms at LO phase ``phase``."""

    probabilities: np.ndarray
    phase: float = 0.0
    truncation: float = DEFAULT_TRUNCATION

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        if p.ndim != 2:
            raise ArgumentError("joint probabilities must be a matrix")
        if np.any(p < 0):
            raise ArgumentError("joint probabilities must be non-negative")
        total = p.sum()
        # roundoff of large mixed states is charged to the same budget as truncation
        if abs(total - 1) > self.truncation:
            raise TruncationError(f"joint photon distribution sums to {total!r}")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    def marginal(self, arm: int) -> PhotonDistribution:
        if arm not in (1, 2):
            raise ArgumentError("arm must be 1 or 2")
        return PhotonDistribution(self.probabilities.sum(axis=2 - arm), self.truncation)

    def total_photon_distribution(self) -> np.ndarray:
        """Probability of ``n1 + n2 = s`` for ``s = 0..S``."""
        p = self.probabilities
        size = p.shape[0] + p.shape[1] - 1
        out = np.zeros(size)
        n1, n2 = np.indices(p.shape)
        np.add.at(out, (n1 + n2).ravel(), p.ravel())
        return out

    def generating_matrix(self, lam1, lam2) -> np.ndarray:
        r"""``G[i, j] = sum p(n1, n2) (1 - lam1[i])^n1 (1 - lam2[j])^n2``."""
        t1 = 1 - np.asarray(lam1, dtype=float)
        t2 = 1 - np.asarray(lam2, dtype=float)
        v1 = t1[:, None] ** np.arange(self.probabilities.shape[0])
        v2 = t2[:, None] ** np.arange(self.probabilities.shape[1])
        return v1 @ self.probabilities @ v2.T


def choose_total_cutoff(signal: FockVector, lo: LocalOscillator,
                        budget: float = MIXING_BUDGET) -> int:
    """Smallest S with P(n_SI + n_LO > S) below ``budget``.

    The total photon number after the beam splitter is distributed as the
    convolution of the signal distribution with Poisson(r^2).
    """
    mean = lo.r ** 2
    # 12 standard deviations plus margin leaves a Poisson tail far below any budget
    lo_max = int(mean + 12 * np.sqrt(mean) + 40) if mean > 0 else 0
    lo_pmf = poisson.pmf(np.arange(lo_max + 1), mean) if mean > 0 else np.ones(1)
    total = np.convolve(signal.probabilities, lo_pmf)
    tail = signal.norm - np.cumsum(total)
    ok = np.nonzero(tail < budget)[0]
    return int(ok[0]) if ok.size else total.size - 1


def _coherent_column(gamma: complex, size: int) -> np.ndarray:
    n = np.arange(size)
    if gamma == 0:
        out = np.zeros(size, dtype=complex)
        out[0] = 1
        return out
    return np.exp(-0.5 * abs(gamma) ** 2 + n * np.log(abs(gamma)) - 0.5 * gammaln(n + 1)
                  + 1j * np.angle(gamma) * n)


def _apply_signal_creation(psi: np.ndarray, sqrt_n: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Apply ``(a1^dag + a2^dag)/sqrt 2`` on the truncated triangle."""
    out = np.zeros_like(psi)
    out[1:, :] += sqrt_n[1:, None] * psi[:-1, :]
    out[:, 1:] += sqrt_n[None, 1:] * psi[:, :-1]
    out *= 2 ** -0.5
    out[~mask] = 0
    return out


def _mix_horner(signal: FockVector, lo: LocalOscillator, size: int) -> np.ndarray:
    mask = _triangle_mask(size)
    gamma = lo.beta / np.sqrt(2)
    lo_part = np.outer(_coherent_column(gamma, size), _coherent_column(-gamma, size))
    lo_part[~mask] = 0
    sqrt_n = np.sqrt(np.arange(size))

    c = signal.amplitudes
    psi = c[-1] * lo_part
    for m in range(signal.cutoff - 1, -1, -1):
        psi = c[m] * lo_part + _apply_signal_creation(psi, sqrt_n, mask) / np.sqrt(m + 1)
    return psi


def _displacement_lower(gamma: complex, size: int) -> np.ndarray:
    r"""Elements :math:`\langle m+k|D(\gamma)|m\rangle` for ``k >= 0``; zero above the diagonal.

    Uses :math:`\sqrt{m!/(m+k)!}\,\gamma^k e^{-|\gamma|^2/2} L_m^{(k)}(|\gamma|^2)`
    with the Laguerre three-term recurrence in the degree ``m`` run for all
    offsets ``k`` at once, scaled so that no factorials are formed.
    """
    if gamma == 0:
        return np.eye(size, dtype=complex)
    x = abs(gamma) ** 2
    k = np.arange(size)
    g_prev = np.zeros(size)
    g = np.exp(-0.5 * x + k * np.log(abs(gamma)) - 0.5 * gammaln(k + 1))
    d = np.zeros((size, size))
    for m in range(size):
        d[m + k[:size - m], m] = g[:size - m]
        g_prev, g = g, ((2 * m + 1 + k - x) * g - np.sqrt(m * (m + k)) * g_prev) / np.sqrt((m + 1) * (m + 1 + k))
    return d * np.exp(1j * np.angle(gamma) * (k[:, None] - k[None, :]))


def _displacement_matrix(gamma: complex, rows: int, cols: int) -> np.ndarray:
    r"""Elements :math:`\langle n|D(\gamma)|m\rangle`, ``n < rows``, ``m < cols``.

    The upper triangle follows from :math:`D(\gamma)^\dagger = D(-\gamma)`.
    """
    size = max(rows, cols)
    lower = _displacement_lower(gamma, size)
    upper = _displacement_lower(-gamma, size).conj().T
    d = lower + np.triu(upper, 1)
    return d[:rows, :cols]


def _mix_displacement(signal: FockVector, lo: LocalOscillator, size: int) -> np.ndarray:
    dim = signal.cutoff + 1
    split = np.zeros((dim, dim), dtype=complex)
    for m, cm in enumerate(signal.amplitudes):
        if cm == 0:
            continue
        k = np.arange(m + 1)
        log_binom = gammaln(m + 1) - gammaln(k + 1) - gammaln(m - k + 1)
        split[k, m - k] = cm * np.exp(0.5 * log_binom - 0.5 * m * np.log(2))
    gamma = lo.beta / np.sqrt(2)
    d1 = _displacement_matrix(gamma, size, dim)
    d2 = _displacement_matrix(-gamma, size, dim)
    return d1 @ split @ d2.T


MIXING_METHODS = {"displacement": _mix_displacement, "horner": _mix_horner}


def mix_on_beamsplitter(signal: FockVector, lo: LocalOscillator,
                        total_cutoff: int | None = None, method: str = "displacement") -> TwoModeState:
    r"""Mix a Fock-basis signal with a coherent LO on the balanced beam splitter.

    Two constructions are available and agree to roundoff:

    ``"displacement"`` (default)
        Split the signal on vacuum, then displace the arms by
        :math:`\pm\beta/\sqrt2`.  Matrix elements stay bounded, so this is
        stable for cutoffs of several hundred photons.
    ``"horner"``
        Act with the signal creation operator
        :math:`(\hat a_1^\dagger+\hat a_2^\dagger)/\sqrt2` on the LO product
        :math:`|\beta/\sqrt2\rangle|-\beta/\sqrt2\rangle` by Horner's rule.
        Intermediate terms grow factorially, so it loses precision beyond
        a few dozen signal photons.  Kept as a cross-check.

    Parameters
    ----------
    signal : FockVector
    lo : LocalOscillator
    total_cutoff : int, optional
        Largest retained ``n1 + n2``; chosen with :func:`choose_total_cutoff`
        when omitted.
    method : {"displacement", "horner"}

    Raises
    ------
    NumericalError
        If roundoff pushes the output norm above one by more than the
        truncation budget.
    """
    if method not in MIXING_METHODS:
        raise ArgumentError(f"method must be one of {sorted(MIXING_METHODS)}, got {method!r}")
    if total_cutoff is None:
        total_cutoff = choose_total_cutoff(signal, lo, min(MIXING_BUDGET, 0.1 * signal.truncation))
    psi = MIXING_METHODS[method](signal, lo, total_cutoff + 1)
    psi[~_triangle_mask(total_cutoff + 1)] = 0
    norm = float(np.sum(np.abs(psi) ** 2))
    if not np.isfinite(norm) or norm > 1 + signal.truncation:
        raise NumericalError(f"{method} mixing lost precision (output norm {norm:.6g})")
    return TwoModeState(psi, lo.phi, signal.truncation)


def joint_photon_distribution(state: TwoModeState) -> JointPhotonDistribution:
    return JointPhotonDistribution(np.abs(state.amplitudes) ** 2, state.phase, state.truncation)


def output_generating_matrix(signal, lo: LocalOscillator, lambdas) -> np.ndarray:
    r"""Matrix ``G[i, j]`` of :math:`\langle{:}e^{-\lambda_i\hat n_1-\lambda_j\hat n_2}{:}\rangle`.

    Fock signals go through the explicit two-mode state; Gaussian signals
    use the closed form of :func:`gaussian_generating_function`.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    if isinstance(signal, GaussianState):
        return gaussian_generating_function(signal, lo.beta, lambdas[:, None], lambdas[None, :])
    if isinstance(signal, FockVector):
        joint = joint_photon_distribution(mix_on_beamsplitter(signal, lo))
        return joint.generating_matrix(lambdas, lambdas)
    raise ArgumentError(f"unsupported signal type {type(signal).__name__}")
