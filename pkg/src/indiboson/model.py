"""Parameters and derived couplings for a two-level emitter whose single
vibrational mode changes both equilibrium position and frequency between
the electronic surfaces.

Units: hbar = 1 and unit mass, so frequencies carry energy units and the
mode displacements are the dimensionless lambda_g = shift_l*sqrt(omega_g/2)
and lambda_e = shift_l*sqrt(omega_e/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GAMMA_LINEAR_THRESHOLD",
    "ModelParams",
    "Couplings",
    "ThermalParams",
    "TimeCoeffs",
    "derive_couplings",
    "time_coeffs",
]

# Below this |gamma_minus| the surfaces are treated as sharing one frequency
# and spectrum/evolution dispatch uses the displaced-mode limit.
GAMMA_LINEAR_THRESHOLD = 1e-9


def _checked_finite(name: str, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Bare model parameters.

    Attributes
    ----------
    epsilon_g, epsilon_e : float
        Electronic energies of the two levels.
    omega_g, omega_e : float
        Mode frequencies on the ground and excited surfaces, both > 0.
    shift_l : float
        Displacement of the excited-surface minimum along the mode
        coordinate (may be negative or zero).
    """

    epsilon_g: float
    epsilon_e: float
    omega_g: float
    omega_e: float
    shift_l: float

    def __post_init__(self):
        for name in ("epsilon_g", "epsilon_e", "omega_g", "omega_e", "shift_l"):
            object.__setattr__(self, name, _checked_finite(name, getattr(self, name)))
        for name in ("omega_g", "omega_e"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    @classmethod
    def from_lambda_g(cls, epsilon_g, epsilon_e, omega_g, omega_e, lambda_g):
        """Construct from the dimensionless ground-mode displacement
        instead of the raw coordinate shift."""
        omega_g = _checked_finite("omega_g", omega_g)
        if omega_g <= 0.0:
            raise ValueError(f"omega_g must be > 0, got {omega_g}")
        lambda_g = _checked_finite("lambda_g", lambda_g)
        shift_l = lambda_g * math.sqrt(2.0 / omega_g)
        return cls(epsilon_g, epsilon_e, omega_g, omega_e, shift_l)


@dataclass(frozen=True)
class Couplings:
    """Constants derived from :class:`ModelParams`.

    gamma_plus and gamma_minus mix the annihilation operators of the two
    surface modes (gamma_plus**2 - gamma_minus**2 = 1); lambda1 and lambda2
    are the linear and quadratic coordinate couplings of the excited-surface
    Hamiltonian written in the ground-mode basis, and epsilon_e_prime is the
    excited electronic energy including the lambda_e**2 reorganization term.
    """

    omega_g: float
    omega_e: float
    epsilon_g: float
    epsilon_e: float
    gamma_plus: float
    gamma_minus: float
    lambda_g: float
    lambda_e: float
    lambda1: float
    lambda2: float
    omega_eg: float
    epsilon_e_prime: float

    @property
    def huang_rhys(self) -> float:
        return self.lambda_g**2

    @property
    def equal_frequencies(self) -> bool:
        return abs(self.gamma_minus) < GAMMA_LINEAR_THRESHOLD


def derive_couplings(params: ModelParams) -> Couplings:
    """Derive all coupling constants from the bare parameters."""
    ratio = math.sqrt(params.omega_e / params.omega_g)
    gamma_plus = 0.5 * (ratio + 1.0 / ratio)
    gamma_minus = 0.5 * (ratio - 1.0 / ratio)
    lambda_g = params.shift_l * math.sqrt(params.omega_g / 2.0)
    lambda_e = params.shift_l * math.sqrt(params.omega_e / 2.0)
    lambda1 = lambda_e * ratio
    lambda2 = (params.omega_g**2 - params.omega_e**2) / (4.0 * params.omega_e * params.omega_g)
    return Couplings(
        omega_g=params.omega_g,
        omega_e=params.omega_e,
        epsilon_g=params.epsilon_g,
        epsilon_e=params.epsilon_e,
        gamma_plus=gamma_plus,
        gamma_minus=gamma_minus,
        lambda_g=lambda_g,
        lambda_e=lambda_e,
        lambda1=lambda1,
        lambda2=lambda2,
        omega_eg=params.epsilon_e - params.epsilon_g,
        epsilon_e_prime=params.epsilon_e + params.omega_e * lambda_e**2,
    )


@dataclass(frozen=True)
class ThermalParams:
    """Inverse temperature; ``math.inf`` selects zero temperature."""

    beta: float

    def __post_init__(self):
        beta = self.beta
        try:
            beta = float(beta)
        except (TypeError, ValueError):
            raise ValueError(f"beta must be a number, got {beta!r}") from None
        if math.isnan(beta) or beta <= 0.0:
            raise ValueError(f"beta must be > 0 (inf allowed), got {beta!r}")
        object.__setattr__(self, "beta", beta)

    @property
    def is_zero_temperature(self) -> bool:
        return math.isinf(self.beta)

    def boltzmann(self, omega: float) -> float:
        """exp(-beta*omega); exactly 0.0 at zero temperature."""
        if omega <= 0.0:
            raise ValueError(f"omega must be > 0, got {omega}")
        return math.exp(-self.beta * omega)

    def mean_occupation(self, omega: float) -> float:
        """Bose occupation 1/(exp(beta*omega) - 1)."""
        if omega <= 0.0:
            raise ValueError(f"omega must be > 0, got {omega}")
        x = self.beta * omega
        if x > 700.0:  # expm1 would overflow; occupation underflows to 0
            return 0.0
        return 1.0 / math.expm1(x)

    def ground_partition(self, omega: float) -> float:
        """Partition function of the ground-surface mode."""
        return 1.0 / (1.0 - self.boltzmann(omega))


@dataclass(frozen=True)
class TimeCoeffs:
    """Time-dependent coefficients of the evolved mode operator.

    ``d_tilde_prime``/``q_tilde_prime``/``lam_tilde_prime`` describe the
    Heisenberg-evolved ground-mode annihilation operator as
    d'*b + q'*b^dag + lam'; the unprimed tilde variants carry an extra
    e^{-i omega_e t} phase and are what the overlap closed forms consume.
    |d'|**2 - |q'|**2 = 1 at all times.
    """

    t: float
    lam_t: complex
    d_tilde_prime: complex
    q_tilde_prime: complex
    lam_tilde_prime: complex
    d_tilde: complex
    q_tilde: complex
    lam_tilde: complex


def _raw_time_coeffs(c: Couplings, omega_e: float, t):
    """Vector-friendly core of :func:`time_coeffs`.

    Returns (lam_t, d_prime, q_prime, lam_prime) for scalar or ndarray t.
    Written in terms of (1 - e^{i n theta}) so every coefficient lands on
    its t = 0 value exactly in floating point; relies on the identities
    gamma_plus**2 - gamma_minus**2 = 1 and
    lambda_e*(gamma_plus - gamma_minus) = lambda_g, which hold to all
    orders algebraically but not termwise in floats.
    """
    theta = omega_e * np.asarray(t)
    e1 = np.exp(1j * theta)
    one_m_e1 = 1.0 - e1
    one_m_e2 = 1.0 - e1 * e1
    lam_t = c.lambda_g * one_m_e1
    d_prime = 1.0 + c.gamma_minus**2 * one_m_e2
    q_prime = c.gamma_plus * c.gamma_minus * one_m_e2
    lam_prime = c.lambda_e * c.gamma_minus * one_m_e2 + c.lambda_g * one_m_e1
    return lam_t, d_prime, q_prime, lam_prime


def time_coeffs(c: Couplings, omega_e: float, t: float) -> TimeCoeffs:
    """Evaluate the evolved-operator coefficients at a single time."""
    lam_t, d_prime, q_prime, lam_prime = _raw_time_coeffs(c, omega_e, float(t))
    phase = np.exp(-1j * omega_e * float(t))
    return TimeCoeffs(
        t=float(t),
        lam_t=complex(lam_t),
        d_tilde_prime=complex(d_prime),
        q_tilde_prime=complex(q_prime),
        lam_tilde_prime=complex(lam_prime),
        d_tilde=complex(phase * d_prime),
        q_tilde=complex(phase * q_prime),
        lam_tilde=complex(phase * lam_prime),
    )
