"""
A noisy local oscillator
========================

The LO amplitude fluctuates: x around r (amplitude noise, sigma_x) and p
around 0 (phase noise, sigma_p = r * sigma_phi).  Moments are averaged over
a Gauss-Hermite rule and the variance is formed afterwards.  Amplitude
noise only makes the negativity shallower; phase noise also narrows the
range of phases where squeezing is certified.
"""

import numpy as np

from click_homodyne import DetectorConfig, GaussianState, LONoiseModel, noisy_variance_sweep

cfg = DetectorConfig(N=4, eta=0.5, nu=0.25)
signal = GaussianState(xi=0.5)
phases = np.linspace(0, np.pi / 2, 11)

curves = {
    "noiseless": (0.0, 0.0),
    "phase noise": (0.0, 1.2),
    "amplitude noise": (2.0, 0.0),
    "combined": (2.0, 1.2),
}
results = {name: noisy_variance_sweep(signal, LONoiseModel(2.0, 0.0, sx, sp), cfg, phases)
           for name, (sx, sp) in curves.items()}

print("phi/pi " + "".join(f"{name:>17}" for name in curves))
for i, phi in enumerate(phases):
    print(f"{phi / np.pi:6.2f} " + "".join(f"{results[name][i]:17.4f}" for name in curves))

for name, values in results.items():
    negative = phases[values < 0]
    print(f"{name:>16}: negative up to phi = {negative.max() / np.pi:.2f} pi")
