r"""
Closed-form treatment of Gaussian signal states.

A squeezed vacuum with large squeezing needs thousands of Fock levels, but
every click observable only depends on the normally ordered generating
function

.. math::

    G(\lambda_1, \lambda_2) = \langle{:}e^{-\lambda_1\hat n_1 - \lambda_2\hat n_2}{:}\rangle

of the two output arms.  For a Gaussian signal this is a Gaussian integral
over the (possibly singular) P function and can be evaluated exactly from the
normally ordered covariances :math:`\langle{:}(\Delta\hat x)^2{:}\rangle =
e^{-2\xi}-1` and :math:`\langle{:}(\Delta\hat p)^2{:}\rangle = e^{2\xi}-1`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .fock import DEFAULT_TRUNCATION, FockVector, coherent_state, squeezed_vacuum

__all__ = ["GaussianState", "gaussian_generating_function"]


@dataclass(frozen=True)
class GaussianState:
    r"""Displaced squeezed vacuum :math:`D(\alpha)S(\xi)|0\rangle`, squeezed along :math:`\hat x(0)`.

    ``GaussianState(xi=0.5)`` is the squeezed vacuum used throughout,
    ``GaussianState(alpha=2)`` a coherent state.
    """

    xi: float = 0.0
    alpha: complex = 0j

    def __post_init__(self):
        if self.xi < 0:
            raise ArgumentError(f"squeezing parameter must be >= 0, got {self.xi}")
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def normal_variances(self) -> tuple[float, float]:
        """Normally ordered variances of x and p (vacuum variance is 1)."""
        return np.expm1(-2 * self.xi), np.expm1(2 * self.xi)

    def mean_photon_number(self) -> float:
        return abs(self.alpha) ** 2 + np.sinh(self.xi) ** 2

    def mean_field(self) -> complex:
        return self.alpha

    def to_fock(self, cutoff: int | None = None,
                truncation: float = DEFAULT_TRUNCATION) -> FockVector:
        if self.xi == 0:
            return coherent_state(self.alpha, cutoff, truncation)
        if self.alpha == 0:
            return squeezed_vacuum(self.xi, cutoff, truncation)
        raise ArgumentError("Fock expansion is only provided for coherent or squeezed vacuum states")


def gaussian_generating_function(state: GaussianState, beta: complex, lam1, lam2):
    r"""Normally ordered generating function of the two beam-splitter outputs.

    Parameters
    ----------
    state : GaussianState
        Signal state.
    beta : complex
        Coherent amplitude of the local oscillator.
    lam1, lam2 : array_like
        Exponents :math:`\lambda_1, \lambda_2 \in [0, 1]` of the two arms;
        broadcast against each other.

    Returns
    -------
    ndarray
        :math:`\langle{:}e^{-\lambda_1\hat n_1-\lambda_2\hat n_2}{:}\rangle`.
    """
    beta = complex(beta)
    lam1 = np.asarray(lam1, dtype=float)
    lam2 = np.asarray(lam2, dtype=float)
    mu = 0.5 * (lam1 + lam2)
    kappa = 0.5 * (lam1 - lam2)
    # rewritten on the input modes: -mu (n_s + |beta|^2) - kappa (s^dag beta + beta^* s),
    # then averaged over the P function with s -> (x + i p)/2
    out = np.exp(-mu * abs(beta) ** 2)
    a = 0.25 * mu
    vx, vp = state.normal_variances
    x0, p0 = 2 * state.alpha.real, 2 * state.alpha.imag
    for var, mean, lin in ((vx, x0, kappa * beta.real), (vp, p0, kappa * beta.imag)):
        d = 1 + 2 * a * var
        out = out * d ** -0.5 * np.exp(-(a * mean**2 + lin * mean - 0.5 * lin**2 * var) / d)
    return out
