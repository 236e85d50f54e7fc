"""Closed-form Jaynes-Cummings machinery.

Rabi frequencies, dressed eigenstates/energies of the excitation-conserving
Hamiltonian (general detuning and resonant forms), and the closed-form
matrix elements of the counter-rotating perturbation V in the dressed basis
(resonant case only; that is all the experiments need).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, state_index

RESONANCE_TOL = 1e-12


@dataclass(frozen=True)
class DressedIndex:
    """Label (j, sigma) of a dressed state; j=None marks the ground |00>."""

    j: int | None
    sigma: int = +1

    def __post_init__(self):
        if self.j is not None:
            if self.j < 0:
                raise ValueError(f"dressed index j={self.j} must be nonnegative")
            if self.sigma not in (+1, -1):
                raise ValueError(f"sigma must be +1 or -1, got {self.sigma}")

    @property
    def is_ground(self) -> bool:
        return self.j is None


GROUND = DressedIndex(j=None)


@dataclass(frozen=True)
class DressedState:
    index: DressedIndex
    vector: np.ndarray  # amplitudes over the |m, n> basis
    energy: float


def rabi_frequency(j: int, detuning: float, params: ModelParams) -> float:
    """Omega_j(detuning) = sqrt(Omega_j(0)^2 + detuning^2), hbar = 1.

    Omega_j(0) = sqrt(j+1) * 2 g |x01| is the resonant Rabi frequency with
    j phonons present.
    """
    if j < 0:
        raise ValueError(f"j={j} must be nonnegative")
    omega_res = np.sqrt(j + 1.0) * 2.0 * params.g * abs(params.coupling.x01)
    return float(np.hypot(omega_res, detuning))


def dressed_energy(index: DressedIndex, detuning: float, params: ModelParams) -> float:
    """Dressed energy W_j^sigma; the ground label |00> has energy 0."""
    if index.is_ground:
        return 0.0 + params.epsilon0
    j, sigma = index.j, index.sigma
    return float(
        params.epsilon0
        + (j + 1) * params.omega0
        - detuning / 2.0
        + sigma * rabi_frequency(j, detuning, params) / 2.0
    )


def dressed_state(index: DressedIndex, detuning: float, params: ModelParams) -> DressedState:
    """Dressed eigenstate as a vector over the truncated |m, n> basis.

    |psi_j^sigma> = ([Omega_j(wd) + sigma*wd]|0,j+1> - i*sigma*Omega_j(0)|1,j>)
                    / sqrt(2 Omega_j(wd) [Omega_j(wd) + sigma*wd]),
    reducing on resonance to (|0,j+1> - i*sigma|1,j>)/sqrt(2).
    """
    nmax = params.n_max
    vec = np.zeros(params.dim, dtype=complex)
    if index.is_ground:
        vec[state_index(0, 0, nmax)] = 1.0
        return DressedState(index=index, vector=vec, energy=dressed_energy(index, detuning, params))
    j, sigma = index.j, index.sigma
    if j > nmax - 1:
        raise ValueError(f"dressed state j={j} needs phonon level {j + 1} > n_max={nmax}")
    omega_d = rabi_frequency(j, detuning, params)
    omega_res = np.sqrt(j + 1.0) * 2.0 * params.g * abs(params.coupling.x01)
    if omega_d == 0.0:
        # Decoupled, degenerate pair; fall back to the resonant convention.
        c0, c1 = 1.0 / np.sqrt(2.0), -1j * sigma / np.sqrt(2.0)
    else:
        norm = np.sqrt(2.0 * omega_d * (omega_d + sigma * detuning))
        c0 = (omega_d + sigma * detuning) / norm
        c1 = -1j * sigma * omega_res / norm
    vec[state_index(0, j + 1, nmax)] = c0
    vec[state_index(1, j, nmax)] = c1
    return DressedState(index=index, vector=vec, energy=dressed_energy(index, detuning, params))


def _require_resonance(params: ModelParams) -> None:
    if abs(params.detuning) > RESONANCE_TOL * params.omega0:
        raise ValueError(
            f"dressed-basis V matrix elements are only available on resonance "
            f"(detuning = {params.detuning:.3e})"
        )


def v_element(row: DressedIndex, col: DressedIndex, params: ModelParams) -> complex:
    """<psi_j^s | V | psi_j'^s'> in closed form (resonant convention).

    Nonzero only for |j - j'| in {1, 2}; elements diagonal in j vanish.
    """
    if row.is_ground or col.is_ground:
        raise ValueError("v_element takes excited indices; use v_ground_element for |00>")
    _require_resonance(params)
    j, s = row.j, row.sigma
    jp, sp = col.j, col.sigma
    c = params.coupling
    g = params.g
    val = 0.0 + 0.0j
    if jp == j + 1:
        val += np.sqrt(j + 2.0) * c.x00 + s * sp * np.sqrt(j + 1.0) * c.x11
    if j == jp + 1:
        val -= np.sqrt(j + 1.0) * c.x00 + s * sp * np.sqrt(float(j)) * c.x11
    if j == jp + 2:
        val += -1j * s * np.sqrt(float(j)) * c.x01
    if jp == j + 2:
        val += -1j * sp * np.sqrt(j + 2.0) * c.x01
    return complex(-0.5j * g * val)


def v_ground_element(row: DressedIndex, params: ModelParams) -> complex:
    """<psi_j^sigma | V | 00> in closed form (resonant convention).

    Nonzero only for j = 0 (value i g x00 / sqrt(2)) and j = 1
    (value -sigma * Omega_0(0) / (2 sqrt(2)), hbar = 1).
    """
    if row.is_ground:
        raise ValueError("row must be an excited dressed index")
    _require_resonance(params)
    c = params.coupling
    if row.j == 0:
        return complex(1j * params.g * c.x00 / np.sqrt(2.0))
    if row.j == 1:
        return complex(-row.sigma * params.vacuum_rabi / (2.0 * np.sqrt(2.0)))
    return 0.0 + 0.0j


def dressed_basis(params: ModelParams, detuning: float = 0.0) -> list[DressedState]:
    """All dressed states materializable in the truncation: ground plus
    (j, sigma) for j <= n_max - 1. Together they span everything except
    |1, n_max>."""
    states = [dressed_state(GROUND, detuning, params)]
    for j in range(params.n_max):
        for sigma in (+1, -1):
            states.append(dressed_state(DressedIndex(j=j, sigma=sigma), detuning, params))
    return states
