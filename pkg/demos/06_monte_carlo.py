"""
How many shots does it take?
============================

We sample click events from the exact joint distribution and estimate the
variance witness with bootstrap error bars.  The witness is reported only
when it lies more than three standard errors below zero.
"""

import numpy as np

from click_homodyne import DetectorConfig, GaussianState, LocalOscillator
from click_homodyne import click_statistics, estimate_witness, normally_ordered_variance
from click_homodyne import sample_clicks, x_moments_analytic

cfg = DetectorConfig(N=4, eta=0.5, nu=0.25)
signal, lo = GaussianState(xi=0.5), LocalOscillator(2.0, 0.0)
joint = click_statistics(signal, lo, cfg)
exact = normally_ordered_variance(x_moments_analytic(signal, lo, cfg, 2))
print(f"exact variance {exact:.4f}")

for shots in (100, 1_000, 10_000, 100_000, 1_000_000):
    w = estimate_witness(sample_clicks(joint, shots, seed=2024), (0, 1))
    print(f"{shots:>9} shots: {w.value: .4f} +/- {w.standard_error:.4f}  -> {w.verdict}")

# A coherent signal never crosses the threshold, however many shots are taken.
coherent = click_statistics(GaussianState(alpha=1.0), lo, cfg)
w = estimate_witness(sample_clicks(coherent, 1_000_000, seed=2024), (0, 1))
print(f"\ncoherent, 10^6 shots: {w.value: .5f} +/- {w.standard_error:.5f} -> {w.verdict}")
