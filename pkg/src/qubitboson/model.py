"""Physical parameters and truncated Hamiltonians.

The system is a two-level qubit (junction levels m = 0, 1) linearly coupled
to a single boson mode, on the product basis |m, n> with n <= n_max phonons.

Internal units: hbar = 1, omega0 = 1, epsilon0 = 0. All energies are in
units of hbar*omega0 and times in units of 1/omega0. Conversion to physical
units happens only at the I/O boundary (see experiments.py).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# CODATA values, eV s.
PLANCK_EV_S = 4.135667696e-15
HBAR_EV_S = PLANCK_EV_S / (2.0 * np.pi)


@dataclass(frozen=True)
class JunctionSpec:
    """Current-biased Josephson junction device constants, in eV.

    The bias point is implicit: it is chosen so that the junction level
    splitting equals ``target_level_splitting_ev`` (resonant with the
    boson mode).
    """

    josephson_energy_ev: float
    charging_energy_ev: float
    target_level_splitting_ev: float

    def __post_init__(self):
        if self.josephson_energy_ev <= 0:
            raise ValueError("josephson_energy_ev must be positive")
        if self.charging_energy_ev <= 0:
            raise ValueError("charging_energy_ev must be positive")
        if self.target_level_splitting_ev <= 0:
            raise ValueError("target_level_splitting_ev must be positive")
        if self.cos_delta_min > 1.0:
            raise ValueError(
                "no resonant bias point: splitting^2/(8 Ec EJ) = "
                f"{self.cos_delta_min:.6g} > 1"
            )

    @property
    def cos_delta_min(self) -> float:
        """cos of the potential-minimum phase at the resonant bias."""
        return self.target_level_splitting_ev**2 / (
            8.0 * self.charging_energy_ev * self.josephson_energy_ev
        )


@dataclass(frozen=True)
class CouplingElements:
    """Dimensionless junction dipole matrix elements x_mm' = <m|delta|m'>.

    ``delta_min`` / ``cos_delta_min`` are only meaningful when the elements
    were derived from a JunctionSpec; for hand-set elements they default to
    the zero-bias values.
    """

    x00: float
    x01: float
    x11: float
    delta_min: float = 0.0
    cos_delta_min: float = 1.0

    def __post_init__(self):
        if self.x01 == 0.0:
            raise ValueError("x01 must be nonzero (no qubit-resonator exchange)")
        if not 0.0 < self.cos_delta_min <= 1.0:
            raise ValueError("cos_delta_min must lie in (0, 1]")


def derive_junction(spec: JunctionSpec) -> CouplingElements:
    """Harmonic-well matrix elements of the junction phase at the bias point.

    The washboard potential is expanded to second order about its minimum
    delta_min, giving an oscillator with spring constant EJ*cos(delta_min)
    and effective mass hbar^2/(8 Ec). The phase is measured from zero, so
    the diagonal elements x00 = x11 = delta_min while x01 is the oscillator
    zero-point amplitude.
    """
    cdm = spec.cos_delta_min
    delta_min = float(np.arccos(cdm))
    x01 = (2.0 * spec.charging_energy_ev / (spec.josephson_energy_ev * cdm)) ** 0.25
    return CouplingElements(
        x00=delta_min, x01=float(x01), x11=delta_min,
        delta_min=delta_min, cos_delta_min=cdm,
    )


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model parameters (hbar = 1 units).

    g may be negative only for internal parity checks of the perturbative
    closed forms; configuration ingestion enforces g >= 0.
    """

    g: float
    coupling: CouplingElements
    n_max: int = 5
    epsilon0: float = 0.0
    epsilon1: float = 1.0
    omega0: float = 1.0

    def __post_init__(self):
        if self.n_max < 2:
            raise ValueError("n_max must be >= 2 (perturbative formulas reach j+2)")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")

    @property
    def delta_eps(self) -> float:
        return self.epsilon1 - self.epsilon0

    @property
    def detuning(self) -> float:
        """Resonator-qubit detuning omega0 - delta_eps/hbar."""
        return self.omega0 - self.delta_eps

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)

    @property
    def vacuum_rabi(self) -> float:
        """Resonant vacuum Rabi frequency Omega_0(0) = 2 g |x01| / hbar."""
        return 2.0 * self.g * abs(self.coupling.x01)

    @classmethod
    def resonant(cls, g: float, coupling: CouplingElements, n_max: int = 5) -> "ModelParams":
        return cls(g=g, coupling=coupling, n_max=n_max)


@dataclass(frozen=True)
class HermitianOperator:
    """Dense complex Hermitian matrix over the |m, n> product basis."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", ent)
        if ent.shape != (self.dim, self.dim):
            raise ValueError(f"entries shape {ent.shape} != ({self.dim}, {self.dim})")

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def state_index(m: int, n: int, n_max: int) -> int:
    """Flat index of |m, n> in the 2*(n_max+1)-dimensional product basis."""
    if m not in (0, 1):
        raise ValueError(f"qubit level m={m} out of range {{0, 1}}")
    if not 0 <= n <= n_max:
        raise ValueError(f"phonon number n={n} out of range [0, {n_max}]")
    return m * (n_max + 1) + n


def _ladder(n_max: int) -> np.ndarray:
    """Annihilation operator a on the truncated Fock space, <n-1|a|n> = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1, n_max + 1)), 1).astype(complex)


def build_full_hamiltonian(params: ModelParams) -> HermitianOperator:
    """Full Hamiltonian H of the coupled two-level + boson system.

    H = sum_m eps_m |m><m| + omega0 a^dag a
        - i g sum_mm' x_mm' |m><m'| (a - a^dag),
    with m, m' in {0, 1} and the phonon ladder truncated at n_max.
    """
    c = params.coupling
    nmax = params.n_max
    a = _ladder(nmax)
    ident = np.eye(nmax + 1, dtype=complex)
    number = a.conj().T @ a
    xmat = np.array([[c.x00, c.x01], [c.x01, c.x11]], dtype=complex)
    eps = np.diag([params.epsilon0, params.epsilon1]).astype(complex)

    h = (
        np.kron(eps, ident)
        + params.omega0 * np.kron(np.eye(2, dtype=complex), number)
        - 1j * params.g * np.kron(xmat, a - a.conj().T)
    )
    return HermitianOperator(dim=params.dim, entries=h)


def build_jc_and_v(params: ModelParams) -> tuple[HermitianOperator, HermitianOperator]:
    """Split H into the excitation-conserving part and the perturbation.

    Returns (H_JC, V). H_JC keeps only the co-rotating x01 exchange terms
    and conserves m + n; V holds the counter-rotating x01 terms and the
    diagonal x00/x11 displacement terms. H_JC + V = H entrywise.
    """
    c = params.coupling
    nmax = params.n_max
    a = _ladder(nmax)
    adag = a.conj().T
    ident = np.eye(nmax + 1, dtype=complex)
    number = adag @ a
    eps = np.diag([params.epsilon0, params.epsilon1]).astype(complex)

    # Qubit operators c_m^dag c_m' as 2x2 blocks.
    p00 = np.array([[1, 0], [0, 0]], dtype=complex)
    p11 = np.array([[0, 0], [0, 1]], dtype=complex)
    s01 = np.array([[0, 1], [0, 0]], dtype=complex)  # c0^dag c1
    s10 = np.array([[0, 0], [1, 0]], dtype=complex)  # c1^dag c0

    h_jc = (
        np.kron(eps, ident)
        + params.omega0 * np.kron(np.eye(2, dtype=complex), number)
        - 1j * params.g * c.x01 * (np.kron(s10, a) - np.kron(s01, adag))
    )
    v = -1j * params.g * (
        c.x00 * np.kron(p00, a - adag)
        + c.x01 * np.kron(s01, a)
        - c.x01 * np.kron(s10, adag)
        + c.x11 * np.kron(p11, a - adag)
    )
    dim = params.dim
    return HermitianOperator(dim=dim, entries=h_jc), HermitianOperator(dim=dim, entries=v)
