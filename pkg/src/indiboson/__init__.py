"""Exact vibronic dynamics for a two-level emitter coupled to one
harmonic mode whose frequency and equilibrium position both depend on the
electronic state.

Closed forms live in :mod:`indiboson.analytic`, parameter handling in
:mod:`indiboson.model`, and an independent truncated-basis reference in
:mod:`indiboson.oracle`.
"""

__version__ = "0.1.0"

from .analytic import (
    CorrelationSample,
    OverlapValue,
    SpectralLine,
    broadened_lines,
    correlation_linear,
    correlation_quadratic,
    excited_mean_energy,
    excited_phonon_number,
    generating_function,
    overlap_linear,
    overlap_quadratic,
    overlap_quadratic_series,
    phonon_number_linear,
    phonon_number_quadratic,
    polaron_state_check,
    spectrum_finite_T,
    spectrum_zero_T,
    vacuum_expansion_linear,
    vacuum_ground_phonon_number,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DivergenceWarning,
    InsufficientDecayWarning,
    PoleError,
    TruncationError,
)
from .model import (
    Couplings,
    ModelParams,
    ThermalParams,
    TimeCoeffs,
    derive_couplings,
    time_coeffs,
)

__all__ = [
    "__version__",
    "CorrelationSample",
    "OverlapValue",
    "SpectralLine",
    "Couplings",
    "ModelParams",
    "ThermalParams",
    "TimeCoeffs",
    "ConfigError",
    "ConvergenceError",
    "DivergenceWarning",
    "InsufficientDecayWarning",
    "PoleError",
    "TruncationError",
    "broadened_lines",
    "correlation_linear",
    "correlation_quadratic",
    "derive_couplings",
    "excited_mean_energy",
    "excited_phonon_number",
    "generating_function",
    "overlap_linear",
    "overlap_quadratic",
    "overlap_quadratic_series",
    "phonon_number_linear",
    "phonon_number_quadratic",
    "polaron_state_check",
    "spectrum_finite_T",
    "spectrum_zero_T",
    "time_coeffs",
    "vacuum_expansion_linear",
    "vacuum_ground_phonon_number",
]
