import numpy as np
import pytest

from click_homodyne import (
    ArgumentError,
    ClickHistogram,
    DetectorConfig,
    GaussianState,
    JointClickDistribution,
    LocalOscillator,
    click_statistics,
    estimate_moments,
    estimate_witness,
    normally_ordered_variance,
    sample_clicks,
    x_moments_analytic,
    x_moments_from_counts,
)
from click_homodyne.montecarlo import rng_for

CFG = DetectorConfig(4, 0.5, 0.25)
LO = LocalOscillator(2.0, 0.0)


@pytest.fixture(scope="module")
def squeezed_joint():
    return click_statistics(GaussianState(xi=0.5), LO, CFG)


@pytest.fixture(scope="module")
def coherent_joint():
    return click_statistics(GaussianState(alpha=1.0), LO, CFG)


def test_degenerate_distribution():
    c = np.zeros((5, 5))
    c[0, 0] = 1
    hist = sample_clicks(JointClickDistribution(c), 1000, seed=1)
    assert hist.counts[0, 0] == 1000 and hist.counts.sum() == 1000


def test_determinism(squeezed_joint):
    a = sample_clicks(squeezed_joint, 10_000, seed=5, task=3)
    b = sample_clicks(squeezed_joint, 10_000, seed=5, task=3)
    c = sample_clicks(squeezed_joint, 10_000, seed=5, task=4)
    np.testing.assert_array_equal(a.counts, b.counts)
    assert not np.array_equal(a.counts, c.counts)
    ea, eb = estimate_moments(a, 2, task=3), estimate_moments(b, 2, task=3)
    assert ea == eb


def test_streams_are_independent_of_order():
    first = rng_for(9, 1).random(3)
    rng_for(9, 0).random(100)
    np.testing.assert_array_equal(first, rng_for(9, 1).random(3))


def test_frequencies_within_five_sigma(coherent_joint):
    shots = 1_000_000
    hist = sample_clicks(coherent_joint, shots, seed=11)
    p = coherent_joint.c
    sigma = np.sqrt(p * (1 - p) / shots)
    freq = hist.counts / shots
    assert np.all(np.abs(freq - p) <= 5 * sigma + 1e-12)


def test_plug_in_on_exact_probabilities(squeezed_joint):
    est = x_moments_from_counts(squeezed_joint).moments
    ref = x_moments_analytic(GaussianState(xi=0.5), LO, CFG).moments
    np.testing.assert_allclose(est, ref, atol=1e-12)


def test_mean_within_five_se(squeezed_joint):
    hist = sample_clicks(squeezed_joint, 1_000_000, seed=2)
    est = estimate_moments(hist, 2)
    exact = x_moments_analytic(GaussianState(xi=0.5), LO, CFG, 2)
    for m in (1, 2):
        assert abs(est[m].value - exact[m]) < 5 * est[m].standard_error
    assert all(e.standard_error >= 0 for e in est)


def test_standard_error_scaling(squeezed_joint):
    small = estimate_moments(sample_clicks(squeezed_joint, 10_000, seed=3), 1)[1].standard_error
    large = estimate_moments(sample_clicks(squeezed_joint, 1_000_000, seed=3), 1)[1].standard_error
    assert 7 < small / large < 13


def test_witness_verdicts(squeezed_joint, coherent_joint):
    sq = estimate_witness(sample_clicks(squeezed_joint, 1_000_000, seed=4), (0, 1))
    assert sq.verdict == "nonclassical-witnessed"
    truth = normally_ordered_variance(x_moments_analytic(GaussianState(xi=0.5), LO, CFG, 2))
    assert abs(sq.value - truth) < 5 * sq.standard_error
    coh = estimate_witness(sample_clicks(coherent_joint, 1_000_000, seed=4), (0, 1))
    assert coh.verdict == "inconclusive"
    tiny = estimate_witness(sample_clicks(coherent_joint, 100, seed=4), (0, 1))
    assert tiny.verdict == "inconclusive"


def test_coverage(squeezed_joint):
    truth = x_moments_analytic(GaussianState(xi=0.5), LO, CFG, 1)[1]
    hits = 0
    for task in range(100):
        hist = sample_clicks(squeezed_joint, 100_000, seed=77, task=task)
        est = estimate_moments(hist, 1, resamples=200, task=task)[1]
        hits += abs(est.value - truth) <= 3 * est.standard_error
    assert hits >= 95


def test_argument_errors(squeezed_joint):
    with pytest.raises(ArgumentError):
        sample_clicks(squeezed_joint, 0, seed=1)
    with pytest.raises(ArgumentError):
        estimate_witness(sample_clicks(squeezed_joint, 10, seed=1), (0, 1, 3))
    with pytest.raises(ArgumentError):
        ClickHistogram(np.array([[1, 0], [0, 0]]), shots=2)
