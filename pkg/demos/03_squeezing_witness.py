"""
Nonlinear squeezing
===================

For a classical state the normally ordered variance of X(phi) cannot be
negative.  A squeezed vacuum measured along its squeezed direction gives a
negative value, and it stays negative even with a 1% efficient detector.
"""

import numpy as np

from click_homodyne import DetectorConfig, GaussianState, LocalOscillator
from click_homodyne import normally_ordered_variance, x_moments_analytic


def variance(xi, phi, cfg):
    return normally_ordered_variance(x_moments_analytic(GaussianState(xi=xi), LocalOscillator(2.0, phi), cfg, 2))


cfg = DetectorConfig(N=4, eta=0.5, nu=0.25)
print("  xi    squeezed (phi=0)   anti-squeezed (phi=pi/2)")
for xi in (0.1, 0.5, 1.0, 1.5, 2.0, 3.0):
    print(f"{xi:4.1f}   {variance(xi, 0.0, cfg): .5f}           {variance(xi, np.pi / 2, cfg): .5f}")

# Very strong squeezing saturates the detectors and the negativity fades again.

weak = DetectorConfig(N=4, eta=0.01, nu=0.25)
xis = np.linspace(0.01, 3.0, 300)
curve = np.array([variance(x, 0.0, weak) for x in xis])
i = int(np.argmin(curve))
print(f"\neta = 1%: variance negative for all xi: {bool(np.all(curve < 0))}; "
      f"minimum {curve[i]:.3e} at xi = {xis[i]:.2f}")
