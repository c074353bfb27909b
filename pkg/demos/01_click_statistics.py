"""
Click statistics of a coherent signal
=====================================

A coherent signal with amplitude 2 is mixed with a local oscillator of the
same strength.  Each output arm feeds four on-off diodes.  As the LO phase
turns, the light moves from one arm to the other and the distribution of
the click difference dk = k1 - k2 follows it.
"""

import numpy as np

from click_homodyne import DetectorConfig, GaussianState, LocalOscillator
from click_homodyne import click_statistics, difference_distribution

cfg = DetectorConfig(N=4, eta=1.0, nu=0.0)
signal = GaussianState(alpha=2.0)

print("phi/pi   " + "  ".join(f"dk={k:+d}" for k in range(-4, 5)))
for phi in np.linspace(0, np.pi, 5):
    d = difference_distribution(click_statistics(signal, LocalOscillator(2.0, phi), cfg))
    print(f"{phi / np.pi:5.2f}    " + "  ".join(f"{p:5.3f}" for p in d.c))

# At phi = 0 arm 2 receives nothing: only dk >= 0 occurs.
# At phi = pi/2 both arms are equally bright and the distribution is symmetric.

# A realistic array: half the photons lost, and dark counts with rate 1/4.
noisy = DetectorConfig(N=4, eta=0.5, nu=0.25)
joint = click_statistics(signal, LocalOscillator(2.0, 0.0), noisy)
print("\nwith losses and dark counts, P(k1, k2) at phi = 0:")
print(np.array2string(joint.c, precision=3, suppress_small=True))
