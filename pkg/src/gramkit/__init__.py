"""Controllability Gramians, minimum-energy control, and entropy metrics
for small LTI systems, specialized to the damped harmonic oscillator."""

from .energy import (
    ControlProfile,
    EnergyVerificationReport,
    min_control_energy,
    synthesize_min_energy_control,
    verify_control,
)
from .entropy import (
    BOLTZMANN_SI,
    InfoEntropyReport,
    bits_to_nats,
    boltzmann_entropy,
    fisher_dual_determinant,
    gaussian_entropy_from_covariance,
    gaussian_entropy_from_fim,
    info_entropy_report,
    nats_to_bits,
    oscillator_entropy_index,
    shannon_entropy,
    thermodynamic_entropy,
)
from .errors import NonHurwitzError, QuadratureConvergenceError, SingularGramianError
from .gramian import (
    GramianResult,
    GramianSpectrum,
    Horizon,
    finite_horizon_gramian,
    gramian_determinant,
    gramian_spectrum,
    infinite_horizon_gramian_lyapunov,
    oscillator_gramian_closed_form,
)
from .lti import (
    DampingRegime,
    ExpmResult,
    OscillatorParams,
    StateSpaceModel,
    Trajectory,
    classify_regime,
    controllability_rank,
    expm_scaling_squaring,
    make_oscillator,
    matrix_exponential,
    oscillator_expm,
    simulate,
)

__all__ = [
    "BOLTZMANN_SI",
    "ControlProfile",
    "DampingRegime",
    "EnergyVerificationReport",
    "ExpmResult",
    "GramianResult",
    "GramianSpectrum",
    "Horizon",
    "InfoEntropyReport",
    "NonHurwitzError",
    "OscillatorParams",
    "QuadratureConvergenceError",
    "SingularGramianError",
    "StateSpaceModel",
    "Trajectory",
    "bits_to_nats",
    "boltzmann_entropy",
    "classify_regime",
    "controllability_rank",
    "expm_scaling_squaring",
    "finite_horizon_gramian",
    "fisher_dual_determinant",
    "gaussian_entropy_from_covariance",
    "gaussian_entropy_from_fim",
    "gramian_determinant",
    "gramian_spectrum",
    "infinite_horizon_gramian_lyapunov",
    "info_entropy_report",
    "make_oscillator",
    "matrix_exponential",
    "min_control_energy",
    "nats_to_bits",
    "oscillator_entropy_index",
    "oscillator_expm",
    "oscillator_gramian_closed_form",
    "shannon_entropy",
    "simulate",
    "synthesize_min_energy_control",
    "thermodynamic_entropy",
    "verify_control",
]

__version__ = "0.1.0"
