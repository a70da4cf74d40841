"""Brute-force reference calculations in a truncated number basis.

Everything here is deliberately direct: assemble the excited-surface
Hamiltonian as a dense matrix over ground-mode number states, diagonalize
it once, and propagate exactly in the eigenbasis. The closed forms in
:mod:`indiboson.analytic` are validated against these routines, so none
of its formulas may be reused here (sharing its plain result containers
is fine).

The top eighth of the basis is treated as a buffer zone; population
reaching it means the physics has hit the artificial wall and results are
rejected via :class:`TruncationError` rather than silently degraded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, TruncationError
from .model import Couplings, ThermalParams

__all__ = [
    "BUFFER_TOL",
    "TruncatedBasis",
    "OracleState",
    "Propagator",
    "destroy",
    "build_excited_hamiltonian",
    "evolve",
    "observable",
    "excited_vacuum",
    "thermal_correlation",
    "franck_condon_weights",
    "thermal_line_list",
    "convergence_sweep",
]

BUFFER_TOL = 1e-8
_THERMAL_WEIGHT_FLOOR = 1e-12


@dataclass(frozen=True)
class TruncatedBasis:
    """Number basis |0>..|dim-1> with the top eighth reserved as buffer."""

    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dim must be an integer >= 2, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))

    @property
    def buffer_start(self) -> int:
        return self.dim - self.dim // 8 if self.dim >= 8 else self.dim - 1


def destroy(basis: TruncatedBasis) -> np.ndarray:
    """Annihilation operator; <p-1|b|p> = sqrt(p)."""
    return np.diag(np.sqrt(np.arange(1.0, basis.dim)), 1)


def build_excited_hamiltonian(c: Couplings, basis: TruncatedBasis) -> np.ndarray:
    """Excited-surface Hamiltonian in the ground number basis:
    eps_e' + omega_g*(n + 1/2) - omega_e*(lambda1*(b+b^dag)
    + lambda2*(b+b^dag)**2)."""
    n = basis.dim
    b = destroy(basis)
    q = b + b.T
    h = (
        (c.epsilon_e_prime + 0.5 * c.omega_g) * np.eye(n)
        + c.omega_g * np.diag(np.arange(n, dtype=float))
        - c.omega_e * (c.lambda1 * q + c.lambda2 * (q @ q))
    )
    scale = max(1.0, float(np.max(np.abs(h))))
    if float(np.max(np.abs(h - h.T))) > 1e-13 * scale:
        raise RuntimeError("assembled Hamiltonian is not Hermitian")
    return h


@dataclass(frozen=True)
class OracleState:
    """Normalized state vector over a truncated basis."""

    amplitudes: np.ndarray
    basis: TruncatedBasis

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.dim,):
            raise ValueError(
                f"amplitudes shape {amps.shape} does not match dim {self.basis.dim}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state norm {norm!r} is not 1 within 1e-10")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def number_state(cls, basis: TruncatedBasis, p: int) -> "OracleState":
        if not 0 <= p < basis.dim:
            raise ValueError(f"p must lie in [0, {basis.dim}), got {p}")
        amps = np.zeros(basis.dim, dtype=complex)
        amps[p] = 1.0
        return cls(amps, basis)

    @property
    def buffer_population(self) -> float:
        return float(np.sum(np.abs(self.amplitudes[self.basis.buffer_start :]) ** 2))


class Propagator:
    """Eigendecomposition-backed propagator for a fixed Hamiltonian."""

    def __init__(self, hamiltonian: np.ndarray, basis: TruncatedBasis | None = None):
        hamiltonian = np.asarray(hamiltonian, dtype=float)
        self.basis = basis if basis is not None else TruncatedBasis(len(hamiltonian))
        self.energies, self.modes = np.linalg.eigh(hamiltonian)

    def evolve(self, state: OracleState, t: float, check_buffer: bool = True) -> OracleState:
        phases = np.exp(-1j * self.energies * t)
        amps = self.modes @ (phases * (self.modes.T @ state.amplitudes))
        out = OracleState(amps, self.basis)
        if check_buffer and out.buffer_population > BUFFER_TOL:
            raise TruncationError(
                f"evolved state puts {out.buffer_population:.3e} of its weight in "
                f"the truncation buffer (dim={self.basis.dim}); increase the basis"
            )
        return out

    def return_amplitude(self, p: int, ts, energy_offset: float = 0.0) -> np.ndarray:
        """<p| e^{-i (H - energy_offset) t} |p> sampled on ts."""
        ts = np.asarray(ts, dtype=float)
        weights = self.modes[p, :] ** 2
        return weights @ np.exp(-1j * np.outer(self.energies - energy_offset, ts))


def evolve(hamiltonian: np.ndarray, state: OracleState, t: float,
           check_buffer: bool = True) -> OracleState:
    """One-shot evolution; build a :class:`Propagator` for repeated times."""
    return Propagator(hamiltonian, state.basis).evolve(state, t, check_buffer)


def observable(state: OracleState, op: np.ndarray) -> float:
    """<state|op|state> for Hermitian op; rejects nonreal results."""
    op = np.asarray(op)
    scale = max(1.0, float(np.max(np.abs(op))))
    if float(np.max(np.abs(op - op.conj().T))) > 1e-13 * scale:
        raise ValueError("operator is not Hermitian")
    value = complex(np.vdot(state.amplitudes, op @ state.amplitudes))
    if abs(value.imag) > 1e-10 * max(1.0, abs(value.real)):
        raise RuntimeError(f"expectation value has imaginary residue {value.imag!r}")
    return value.real


def excited_vacuum(c: Couplings, basis: TruncatedBasis) -> OracleState:
    """Vacuum of the excited-surface mode expanded over ground number states.

    Found as the null vector of the excited annihilation operator
    gamma_plus*b + gamma_minus*b^dag - lambda_e. The last matrix row
    couples to the truncated level, so the null space is taken over the
    top (dim-1) x dim block; contamination shows up as buffer weight.
    """
    n = basis.dim
    b = destroy(basis)
    mat = c.gamma_plus * b + c.gamma_minus * b.T - c.lambda_e * np.eye(n)
    _, sing, vh = np.linalg.svd(mat[: n - 1, :])
    # the block is (n-1) x n, so the null direction pairs with the implicit
    # zero singular value; a tiny sing[-1] would mean a second near-null
    # vector and an ambiguous extraction
    if sing[-1] < 1e-10 * sing[0]:
        raise TruncationError(
            "null space of the annihilation operator is not unique "
            f"(sigma gap {sing[-1] / sing[0]:.3e}); increase the basis"
        )
    vec = vh[-1]
    residual = float(np.linalg.norm(mat[: n - 1, :] @ vec))
    if residual > 1e-10:
        raise TruncationError(
            f"annihilation-operator null vector has residual {residual:.3e}; "
            "increase the basis"
        )
    if vec[0] != 0.0:
        vec = vec * np.sign(vec[0])  # ground-state coefficient is positive
    state = OracleState(vec.astype(complex), basis)
    if state.buffer_population > BUFFER_TOL:
        raise TruncationError(
            f"excited vacuum leaks {state.buffer_population:.3e} into the "
            f"truncation buffer (dim={n}); increase the basis"
        )
    return state


def _thermal_weights(th: ThermalParams, c: Couplings, basis: TruncatedBasis) -> np.ndarray:
    """Boltzmann weights (1-boltz)*boltz**p down to the 1e-12 floor."""
    boltz = th.boltzmann(c.omega_g)
    weights = []
    w = 1.0 - boltz
    while w >= _THERMAL_WEIGHT_FLOOR:
        weights.append(w)
        if len(weights) > basis.dim:
            raise TruncationError(
                f"thermal occupation at beta={th.beta!r} needs more than "
                f"dim={basis.dim} levels above the weight floor"
            )
        w *= boltz
    return np.array(weights)


def _check_thermal_buffer(prop: Propagator, weights: np.ndarray, ts: np.ndarray):
    """Weighted buffer occupancy on a coarse time subset; high-p states may
    trespass individually but only their Boltzmann-weighted sum matters."""
    basis = prop.basis
    v_buf = prop.modes[basis.buffer_start :, :]
    v_init = prop.modes[: weights.size, :]
    sample = ts[:: max(1, ts.size // 8)]
    worst = 0.0
    for t in sample:
        u = (v_buf * np.exp(-1j * prop.energies * t)) @ v_init.T
        per_state = np.sum(np.abs(u) ** 2, axis=0)
        worst = max(worst, float(weights @ per_state))
    if worst > BUFFER_TOL:
        raise TruncationError(
            f"thermal evolution puts weighted buffer population {worst:.3e} "
            f"past the basis edge (dim={basis.dim}); increase the basis"
        )


def thermal_correlation(th: ThermalParams, c: Couplings, basis: TruncatedBasis,
                        ts) -> np.ndarray:
    """Thermal dipole correlation from the truncated basis:
    sum_p w_p e^{-i omega_eg t} e^{i omega_g t (p+1/2)}
    <p| e^{-i (H_e - eps_e) t} |p>."""
    ts = np.asarray(ts, dtype=float)
    weights = _thermal_weights(th, c, basis)
    prop = Propagator(build_excited_hamiltonian(c, basis), basis)
    evib = prop.energies - c.epsilon_e
    ps = np.arange(weights.size)
    ret = (prop.modes[: weights.size, :] ** 2) @ np.exp(-1j * np.outer(evib, ts))
    phases = np.exp(1j * c.omega_g * np.outer(ps + 0.5, ts))
    _check_thermal_buffer(prop, weights, ts)
    g = (weights[:, None] * phases * ret).sum(axis=0)
    return g * np.exp(-1j * c.omega_eg * ts)


def franck_condon_weights(c: Couplings, basis: TruncatedBasis, count: int) -> np.ndarray:
    """2*pi |<eigenstate n | ground vacuum>|**2 for n = 0..count-1."""
    if count > basis.dim:
        raise ValueError(f"count={count} exceeds dim={basis.dim}")
    prop = Propagator(build_excited_hamiltonian(c, basis), basis)
    return 2.0 * np.pi * prop.modes[0, :count] ** 2


def thermal_line_list(th: ThermalParams, c: Couplings, basis: TruncatedBasis,
                      floor: float = 1e-12):
    """Absorption lines (offset from the gap, weight) from eigenbasis
    transition amplitudes, pruned below ``floor`` in units of 2*pi."""
    from .analytic import SpectralLine

    weights = _thermal_weights(th, c, basis)
    prop = Propagator(build_excited_hamiltonian(c, basis), basis)
    evib = prop.energies - c.epsilon_e
    lines = []
    for p, w_p in enumerate(weights):
        amps = prop.modes[p, :] ** 2
        for n in range(basis.dim):
            weight = w_p * amps[n]
            if weight >= floor:
                lines.append(
                    SpectralLine(
                        offset=float(evib[n] - c.omega_g * (p + 0.5)),
                        weight=float(2.0 * np.pi * weight),
                    )
                )
    return lines


def convergence_sweep(evaluate, dims):
    """Evaluate a scalar at increasing basis sizes.

    Returns rows (dim, value, delta) with delta = |value - previous|.
    Once consecutive deltas are both above float noise they must not grow;
    growth means the quantity is not converging in basis size and raises
    :class:`ConvergenceError`.
    """
    dims = [int(d) for d in dims]
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError("dims must be strictly increasing")
    rows = []
    prev_value = None
    prev_delta = None
    for dim in dims:
        value = evaluate(dim)
        delta = None if prev_value is None else abs(value - prev_value)
        rows.append((dim, value, delta))
        if (
            prev_delta is not None
            and delta is not None
            and min(delta, prev_delta) > 1e-13
            and delta > prev_delta * (1.0 + 1e-9)
        ):
            raise ConvergenceError(
                f"non-monotone convergence at dim={dim}: "
                f"delta grew {prev_delta:.3e} -> {delta:.3e}"
            )
        if delta is not None:
            prev_delta = delta
        prev_value = value
    return rows
