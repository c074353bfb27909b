"""
The nonlinear quadrature and its moments
========================================

Click counters do not measure the field quadrature x(phi) directly.  The
difference of normally ordered no-click probabilities defines a nonlinear
quadrature X(phi) whose mean for a coherent signal follows a sinh law.  We
compute it two ways (from the click counts, as an experiment would, and
analytically), then watch it approach the linear quadrature for large
arrays.
"""

import numpy as np

from click_homodyne import DetectorConfig, GaussianState, LocalOscillator
from click_homodyne import click_statistics, closed_form_coherent_X, linear_limit_X
from click_homodyne import x_moments_analytic, x_moments_from_counts

cfg = DetectorConfig(N=4, eta=0.5, nu=0.25)

# The two routes agree for any state; here a coherent state at several phases.
signal = GaussianState(alpha=1.0 + 0.5j)
for phi in (0.0, np.pi / 3, np.pi / 2):
    lo = LocalOscillator(2.0, phi)
    counts = x_moments_from_counts(click_statistics(signal.to_fock(), lo, cfg))
    exact = x_moments_analytic(signal, lo, cfg)
    print(f"phi = {phi:.3f}   <:X:> from counts {counts[1]: .6f}, analytic {exact[1]: .6f}, "
          f"sinh law {closed_form_coherent_X(signal.alpha, lo, cfg): .6f}")

# For r = alpha = 2, 4, 8 the curve over phi is a sinh of a cosine: strongly nonlinear for bright light.
for amp in (2.0, 4.0, 8.0):
    xs = [closed_form_coherent_X(amp, LocalOscillator(amp, phi), cfg) for phi in (0, np.pi / 4, np.pi / 2)]
    print(f"r = alpha = {amp:.0f}: X at phi = 0, pi/4, pi/2 -> " + ", ".join(f"{x:10.3f}" for x in xs))

# With many diodes per arm the mean approaches exp(-nu) * eta * r * <x(phi)>.
lo = LocalOscillator(2.0, 0.0)
signal = GaussianState(alpha=2.0)
for N in (4, 100, 1000, 10_000):
    big = DetectorConfig(N, 0.5, 0.25)
    x = x_moments_analytic(signal, lo, big, 1)[1]
    print(f"N = {N:6d}: <:X:> = {x:.6f}   linear limit {linear_limit_X(signal, lo, big):.6f}")
