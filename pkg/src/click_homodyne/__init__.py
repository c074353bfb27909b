"""Balanced homodyne detection with arrays of on-off click detectors."""

from .detector import (
    ClickDistribution,
    DetectorConfig,
    DifferenceDistribution,
    JointClickDistribution,
    click_povm,
    click_statistics,
    difference_distribution,
    joint_click_distribution,
    single_click_distribution,
)
from .errors import ArgumentError, ClickHomodyneError, NumericalError, QuadratureError, TruncationError
from .fock import (
    FockVector,
    PhotonDistribution,
    coherent_state,
    fock_state,
    geometric_expectation,
    photon_distribution,
    squeezed_vacuum,
    superposition_0n,
    vacuum,
)
from .gaussian import GaussianState
from .interferometer import (
    JointPhotonDistribution,
    LocalOscillator,
    TwoModeState,
    joint_photon_distribution,
    mix_on_beamsplitter,
)
from .lo_noise import LONoiseModel, QuadratureRule, gauss_hermite_rule, noisy_moments, noisy_variance_sweep
from .moments import (
    MomentSet,
    closed_form_coherent_X,
    linear_limit_X,
    pi_moment_from_counts,
    x_moment_from_counts,
    x_moments_analytic,
    x_moments_from_counts,
)
from .montecarlo import ClickHistogram, EstimateWithError, estimate_moments, estimate_witness, sample_clicks
from .witness import (
    MomentMatrix,
    WitnessReport,
    minor_determinant,
    moment_matrix,
    normally_ordered_variance,
    scan_witnesses,
)

__version__ = "0.1.0"
