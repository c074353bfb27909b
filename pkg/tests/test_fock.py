import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from click_homodyne import (
    ArgumentError,
    FockVector,
    GaussianState,
    TruncationError,
    coherent_state,
    fock_state,
    geometric_expectation,
    photon_distribution,
    squeezed_vacuum,
    superposition_0n,
    vacuum,
)
from conftest import creation


def test_vacuum_and_number_states():
    assert vacuum().amplitudes.tolist() == [1]
    s = fock_state(3, cutoff=5)
    assert s.cutoff == 5
    assert s.probabilities[3] == 1
    assert s.mean_photon_number() == pytest.approx(3)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0, 1 - 2j, 6.0])
def test_coherent_poissonian(alpha):
    s = coherent_state(alpha)
    n = np.arange(s.cutoff + 1)
    mean = abs(alpha) ** 2
    pois = np.exp(-mean + n * np.log(mean) - np.array([math.lgamma(k + 1) for k in n])) if mean else n == 0
    np.testing.assert_allclose(s.probabilities, pois, atol=1e-14)
    assert s.norm >= 1 - 1e-10
    assert s.mean_field() == pytest.approx(alpha, abs=1e-8)


@pytest.mark.parametrize("xi", [0.1, 0.3, 0.5])
def test_squeezed_vacuum_matches_operator_exponential(xi):
    dim = 120
    a = creation(dim).T
    s_op = expm(0.5 * xi * (a @ a - a.T @ a.T))
    ref = s_op[:, 0]
    s = squeezed_vacuum(xi, cutoff=30)
    np.testing.assert_allclose(s.amplitudes, ref[:31], atol=1e-10)


@pytest.mark.parametrize("xi", [0.2, 0.8, 1.5])
def test_squeezed_statistics(xi):
    s = squeezed_vacuum(xi)
    assert s.mean_photon_number() == pytest.approx(np.sinh(xi) ** 2, rel=1e-7)
    assert np.all(s.probabilities[1::2] == 0)


def test_superposition():
    s = superposition_0n(2)
    np.testing.assert_allclose(s.probabilities, [0.5, 0, 0.5])
    assert s.mean_field() == 0
    assert superposition_0n(1).mean_field() == pytest.approx(0.5)


def test_truncation_error_is_raised():
    with pytest.raises(TruncationError):
        coherent_state(3.0, cutoff=4)
    with pytest.raises(TruncationError):
        squeezed_vacuum(2.0, cutoff=10)


def test_bad_arguments():
    with pytest.raises(ArgumentError):
        FockVector(np.array([1.0, 1.0]))
    with pytest.raises(ArgumentError):
        geometric_expectation(vacuum(), 1.5)
    with pytest.raises(ArgumentError):
        fock_state(-1)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 3), st.floats(0, 1))
def test_geometric_expectation_of_coherent(amp, t):
    # <t^n> = exp(-(1-t)|alpha|^2)
    assert geometric_expectation(coherent_state(amp), t) == pytest.approx(np.exp(-(1 - t) * amp**2), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1))
def test_geometric_expectation_monotone(t1, t2):
    s = superposition_0n(3)
    lo, hi = sorted((t1, t2))
    assert geometric_expectation(s, lo) <= geometric_expectation(s, hi) + 1e-15
    assert geometric_expectation(s, 1.0) == pytest.approx(s.norm)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.01, 1.2))
def test_gaussian_and_fock_squeezed_agree(xi):
    g = GaussianState(xi=xi)
    f = g.to_fock()
    # the dropped tail carries at most ~1e-10 of probability, weighted by large n
    assert g.mean_photon_number() == pytest.approx(f.mean_photon_number(), rel=1e-7)
    np.testing.assert_allclose(f.amplitudes, squeezed_vacuum(xi, f.cutoff).amplitudes)


def test_photon_distribution_geometric():
    dist = photon_distribution(coherent_state(1.5))
    assert dist.mean() == pytest.approx(2.25, rel=1e-9)
    assert dist.geometric(0.3) == pytest.approx(np.exp(-0.7 * 2.25), rel=1e-9)


def test_rotation_changes_phase_only():
    s = coherent_state(1.0).rotated(np.pi / 2)
    assert s.mean_field() == pytest.approx(-1j, abs=1e-9)
    np.testing.assert_allclose(s.probabilities, coherent_state(1.0).probabilities)
