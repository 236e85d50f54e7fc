"""Time-domain transition amplitudes for the initial state |10>.

Three methods, all evaluated pointwise (spectrally or in closed form), so
there is no integrator step-size error anywhere:

* exact         -- numerical diagonalization of the full truncated H,
* rwa           -- Jaynes-Cummings closed form (perturbation V dropped),
* perturbative  -- second-order dressed-state propagator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .model import ModelParams, build_full_hamiltonian, state_index
from .perturbation import corrected_spectrum, pert_amplitudes

METHODS = ("exact", "rwa", "perturbative")


@dataclass
class AmplitudeSeries:
    """Interaction-picture amplitudes c_mn(t) on a time grid.

    ``c10`` and ``c01`` are tracked for every method; ``all_states`` (one
    row per basis state |m, n>) is populated only for the exact method.
    """

    method: str
    times: np.ndarray
    c10: np.ndarray
    c01: np.ndarray
    all_states: np.ndarray | None = field(default=None, repr=False)

    @property
    def p10(self) -> np.ndarray:
        return np.abs(self.c10) ** 2

    @property
    def p01(self) -> np.ndarray:
        return np.abs(self.c01) ** 2

    @property
    def leakage(self) -> np.ndarray:
        """Probability outside the {|10>, |01>} manifold.

        Exact for the exact method; for the perturbative method this is the
        inferred leakage 1 - |c10|^2 - |c01|^2 (the RWA value is identically
        zero up to rounding).
        """
        return 1.0 - self.p10 - self.p01


def vacuum_rabi_period(params: ModelParams) -> float:
    """Full vacuum-Rabi period 2*pi / Omega_0(0), one complete transfer cycle."""
    if params.vacuum_rabi <= 0:
        raise ValueError("vacuum Rabi period undefined for g * x01 = 0")
    return 2.0 * np.pi / params.vacuum_rabi


def default_time_grid(params: ModelParams, periods: float = 2.0, points: int = 2001) -> np.ndarray:
    """Uniform grid over ``periods`` vacuum-Rabi periods (default: two)."""
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    return np.linspace(0.0, periods * vacuum_rabi_period(params), points)


def _check_times(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a nonempty 1-D array")
    if np.any(times < 0):
        raise ValueError("times must be nonnegative")
    return times


def exact_amplitudes(params: ModelParams, times) -> AmplitudeSeries:
    """c_mn(t) = e^{i E_mn t} <mn| e^{-iHt} |10> from the full spectrum."""
    times = _check_times(times)
    decomp = linalg.eigh(build_full_hamiltonian(params))
    psi0 = np.zeros(params.dim, dtype=complex)
    psi0[state_index(1, 0, params.n_max)] = 1.0
    raw = linalg.evolve_grid(decomp, times, psi0)

    e_mn = np.array(
        [
            (params.epsilon0 if m == 0 else params.epsilon1) + n * params.omega0
            for m in (0, 1)
            for n in range(params.n_max + 1)
        ]
    )
    amps = np.exp(1j * np.outer(e_mn, times)) * raw
    return AmplitudeSeries(
        method="exact",
        times=times,
        c10=amps[state_index(1, 0, params.n_max)].copy(),
        c01=amps[state_index(0, 1, params.n_max)].copy(),
        all_states=amps,
    )


def rwa_amplitudes(params: ModelParams, times) -> AmplitudeSeries:
    """Jaynes-Cummings amplitudes: G_00^{ss'} = delta_ss' e^{-i W_0^s t}.

    On resonance |c10|^2 = cos^2(Omega_0(0) t / 2) and
    |c01|^2 = sin^2(Omega_0(0) t / 2).
    """
    times = _check_times(times)
    half = 0.5 * params.vacuum_rabi
    w0 = {
        s: params.epsilon0 + params.omega0 + s * half for s in (+1, -1)
    }
    gp = np.exp(-1j * w0[+1] * times)
    gm = np.exp(-1j * w0[-1] * times)
    e10 = params.epsilon1
    e01 = params.epsilon0 + params.omega0
    c10 = 0.5 * np.exp(1j * e10 * times) * (gp + gm)
    c01 = 0.5j * np.exp(1j * e01 * times) * (gp - gm)
    return AmplitudeSeries(method="rwa", times=times, c10=c10, c01=c01)


def perturbative_amplitudes(params: ModelParams, times) -> AmplitudeSeries:
    """Second-order dressed-state amplitudes over a grid (spectrum reused)."""
    times = _check_times(times)
    spectrum = corrected_spectrum(params)
    c10, c01 = pert_amplitudes(times, params, spectrum)
    return AmplitudeSeries(method="perturbative", times=times, c10=c10, c01=c01)


_DISPATCH = {
    "exact": exact_amplitudes,
    "rwa": rwa_amplitudes,
    "perturbative": perturbative_amplitudes,
}


def amplitudes(method: str, params: ModelParams, times) -> AmplitudeSeries:
    try:
        fn = _DISPATCH[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None
    return fn(params, times)
