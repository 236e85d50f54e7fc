"""Second-order dressed-state perturbation theory (resonant case).

Corrected energies, normalization constants, the explicit dressed-basis
propagator G_00^{ss'}(t), and the perturbative transition amplitudes
c10(t), c01(t) for the initial state |10>.

All interior sums over intermediate dressed levels are the closed forms for
the untruncated phonon ladder; they do not depend on n_max.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dressed import DressedIndex, v_element, v_ground_element, _require_resonance
from .errors import DegenerateDenominatorError
from .model import ModelParams

SIGMAS = (+1, -1)
DEGENERACY_GUARD = 1e-9  # in units of hbar*omega0


@dataclass(frozen=True)
class CorrectedSpectrum:
    """Second-order energies and normalization constants, precomputed once
    per parameter set and shared across time points."""

    e_ground: float
    e_excited: dict  # (j, sigma) -> energy, j in {0, 1, 2}
    a_ground: float
    a_excited: dict  # (j, sigma) -> normalization, j in {0, 1, 2}


def _w(j: int, sigma: int, params: ModelParams) -> float:
    """Resonant dressed energy W_j^sigma (hbar = 1)."""
    return (
        params.epsilon0
        + (j + 1) * params.omega0
        + sigma * np.sqrt(j + 1.0) * params.g * abs(params.coupling.x01)
    )


def _guard(value: float, context: str, params: ModelParams) -> float:
    if abs(value) < DEGENERACY_GUARD * params.omega0:
        raise DegenerateDenominatorError(
            f"degenerate denominator {context} = {value:.3e}: "
            "perturbation theory invalid at this g"
        )
    return value


def corrected_ground_energy(params: ModelParams) -> float:
    """Second-order energy of the perturbed |00> state.

    E_00 = -(g^2/2) * sum_sigma (x00^2 / W_0^sigma + x01^2 / W_1^sigma).
    """
    _require_resonance(params)
    c = params.coupling
    total = 0.0
    for s in SIGMAS:
        total += c.x00**2 / _guard(_w(0, s, params), f"W_0^{s:+d}", params)
        total += c.x01**2 / _guard(_w(1, s, params), f"W_1^{s:+d}", params)
    return -0.5 * params.g**2 * total


def _coupled_indices(j: int):
    """Intermediate levels j' with a nonzero <psi_j|V|psi_j'>: |j-j'| in {1,2}."""
    return [jp for jp in (j - 2, j - 1, j + 1, j + 2) if jp >= 0]


def corrected_energy(j: int, sigma: int, params: ModelParams) -> float:
    """Second-order dressed energy E_{j sigma} for j in {0, 1, 2}.

    E = W_j^sigma + |<psi_j^sigma|V|00>|^2 / W_j^sigma
        + sum_{j' != j, sigma'} |<psi_j^sigma|V|psi_j'^sigma'>|^2
          / (W_j^sigma - W_j'^sigma').
    """
    if j not in (0, 1, 2):
        raise ValueError(f"corrected energies are provided for j in {{0,1,2}}, got {j}")
    _require_resonance(params)
    # The closed forms reach phonon levels above the truncation; evaluate the
    # matrix elements with a roomy virtual truncation so n_max never clips them.
    wj = _guard(_w(j, sigma, params), f"W_{j}^{sigma:+d}", params)
    row = DressedIndex(j=j, sigma=sigma)
    energy = wj + abs(v_ground_element(row, params)) ** 2 / wj
    for jp in _coupled_indices(j):
        for sp in SIGMAS:
            denom = _guard(
                wj - _w(jp, sp, params),
                f"W_{j}^{sigma:+d} - W_{jp}^{sp:+d}",
                params,
            )
            energy += abs(v_element(row, DressedIndex(j=jp, sigma=sp), params)) ** 2 / denom
    return float(energy)


def normalizations(params: ModelParams) -> tuple[float, dict]:
    """Normalization constants (A_00, {(j, sigma): A_{j sigma}}) of the
    second-order eigenfunctions, j in {0, 1, 2}."""
    _require_resonance(params)
    c = params.coupling
    g2 = params.g**2

    total = 0.0
    for s in SIGMAS:
        total += c.x00**2 / _guard(_w(0, s, params), f"W_0^{s:+d}", params) ** 2
        total += c.x01**2 / _guard(_w(1, s, params), f"W_1^{s:+d}", params) ** 2
    a_ground = (1.0 + 0.5 * g2 * total) ** -0.5

    a_excited = {}
    for s in SIGMAS:
        w0 = _guard(_w(0, s, params), f"W_0^{s:+d}", params)
        acc = 1.0 + 0.5 * g2 * c.x00**2 / w0**2
        for sp in SIGMAS:
            x_a = np.sqrt(2.0) * c.x00 + s * sp * c.x11
            acc += 0.25 * g2 * (
                x_a**2 / _guard(w0 - _w(1, sp, params), "W_0-W_1", params) ** 2
                + 2.0 * c.x01**2 / _guard(w0 - _w(2, sp, params), "W_0-W_2", params) ** 2
            )
        a_excited[(0, s)] = acc**-0.5

        w1 = _guard(_w(1, s, params), f"W_1^{s:+d}", params)
        acc = 1.0 + 0.5 * g2 * c.x01**2 / w1**2
        for sp in SIGMAS:
            x_a = np.sqrt(2.0) * c.x00 + s * sp * c.x11
            x_b = np.sqrt(3.0) * c.x00 + np.sqrt(2.0) * s * sp * c.x11
            acc += 0.25 * g2 * (
                x_a**2 / _guard(w1 - _w(0, sp, params), "W_1-W_0", params) ** 2
                + x_b**2 / _guard(w1 - _w(2, sp, params), "W_1-W_2", params) ** 2
                + 3.0 * c.x01**2 / _guard(w1 - _w(3, sp, params), "W_1-W_3", params) ** 2
            )
        a_excited[(1, s)] = acc**-0.5

        w2 = _guard(_w(2, s, params), f"W_2^{s:+d}", params)
        acc = 1.0
        for sp in SIGMAS:
            x_b = np.sqrt(3.0) * c.x00 + np.sqrt(2.0) * s * sp * c.x11
            x_c = 2.0 * c.x00 + np.sqrt(3.0) * s * sp * c.x11
            acc += 0.25 * g2 * (
                2.0 * c.x01**2 / _guard(w2 - _w(0, sp, params), "W_2-W_0", params) ** 2
                + x_b**2 / _guard(w2 - _w(1, sp, params), "W_2-W_1", params) ** 2
                + x_c**2 / _guard(w2 - _w(3, sp, params), "W_2-W_3", params) ** 2
                + 4.0 * c.x01**2 / _guard(w2 - _w(4, sp, params), "W_2-W_4", params) ** 2
            )
        a_excited[(2, s)] = acc**-0.5
    return float(a_ground), a_excited


def corrected_spectrum(params: ModelParams) -> CorrectedSpectrum:
    """All second-order energies and normalizations needed by the propagator."""
    a_ground, a_excited = normalizations(params)
    e_excited = {
        (j, s): corrected_energy(j, s, params) for j in (0, 1, 2) for s in SIGMAS
    }
    return CorrectedSpectrum(
        e_ground=corrected_ground_energy(params),
        e_excited=e_excited,
        a_ground=a_ground,
        a_excited=a_excited,
    )


def g00_propagator(
    sigma_row: int,
    sigma_col: int,
    t,
    params: ModelParams,
    spectrum: CorrectedSpectrum | None = None,
):
    """Second-order dressed propagator G_00^{ss'}(t) = <psi_0^s|e^{-iHt}|psi_0^s'>.

    Evaluates the explicit closed form: five groups of stationary phases
    e^{-i E t} (perturbed ground, both j=0 levels, and the j=1, 2 ladders)
    with real coefficients built from the normalization constants, the
    combinations X_{ss'} = sqrt(2) x00 + s s' x11, and resonant dressed
    energies. Accepts scalar or array t.
    """
    if sigma_row not in SIGMAS or sigma_col not in SIGMAS:
        raise ValueError("sigma_row and sigma_col must be +1 or -1")
    _require_resonance(params)
    s, sc = sigma_row, sigma_col
    t = np.asarray(t, dtype=float)
    if params.g == 0.0:
        # Decoupled limit: the W_0^+ - W_0^- splitting closes, but every
        # off-diagonal numerator is O(g^2), so the limit is the bare phase.
        out = (1.0 if s == sc else 0.0) * np.exp(
            -1j * (params.epsilon0 + params.omega0) * t
        )
        return out if out.shape else complex(out)
    sp_ = spectrum if spectrum is not None else corrected_spectrum(params)
    c = params.coupling
    g2 = params.g**2

    w0 = {sig: _w(0, sig, params) for sig in SIGMAS}
    w1 = {sig: _w(1, sig, params) for sig in SIGMAS}
    w2 = {sig: _w(2, sig, params) for sig in SIGMAS}
    a0 = {sig: sp_.a_excited[(0, sig)] for sig in SIGMAS}
    a1 = {sig: sp_.a_excited[(1, sig)] for sig in SIGMAS}
    a2 = {sig: sp_.a_excited[(2, sig)] for sig in SIGMAS}
    e0 = {sig: sp_.e_excited[(0, sig)] for sig in SIGMAS}
    e1 = {sig: sp_.e_excited[(1, sig)] for sig in SIGMAS}
    e2 = {sig: sp_.e_excited[(2, sig)] for sig in SIGMAS}

    def xx(sa: int, sb: int) -> float:
        return np.sqrt(2.0) * c.x00 + sa * sb * c.x11

    _guard(w0[s], f"W_0^{s:+d}", params)
    _guard(w0[sc], f"W_0^{sc:+d}", params)
    out = (
        sp_.a_ground**2
        * g2 * c.x00**2 / (2.0 * w0[s] * w0[sc])
        * np.exp(-1j * sp_.e_ground * t)
    )
    if s == sc:
        out = out + a0[s] ** 2 * np.exp(-1j * e0[s] * t)
    else:
        split = _guard(w0[s] - w0[sc], "W_0^+ - W_0^-", params)

        def bracket(w_ref: float) -> float:
            acc = g2 * c.x00**2 / (2.0 * _guard(w_ref, "W_0", params))
            for sb in SIGMAS:
                acc += g2 * xx(s, sb) * xx(sc, sb) / (
                    4.0 * _guard(w_ref - w1[sb], "W_0-W_1", params)
                )
                acc += g2 * c.x01**2 / (
                    2.0 * _guard(w_ref - w2[sb], "W_0-W_2", params)
                )
            return acc

        out = out + a0[s] ** 2 * (bracket(w0[s]) / split) * np.exp(-1j * e0[s] * t)
        out = out - a0[sc] ** 2 * (bracket(w0[sc]) / split) * np.exp(-1j * e0[sc] * t)

    for sb in SIGMAS:
        out = out + 0.25 * a1[sb] ** 2 * g2 * xx(s, sb) * xx(sc, sb) / (
            _guard(w1[sb] - w0[s], "W_1-W_0", params)
            * _guard(w1[sb] - w0[sc], "W_1-W_0", params)
        ) * np.exp(-1j * e1[sb] * t)
        out = out + 0.5 * a2[sb] ** 2 * g2 * c.x01**2 / (
            _guard(w2[sb] - w0[s], "W_2-W_0", params)
            * _guard(w2[sb] - w0[sc], "W_2-W_0", params)
        ) * np.exp(-1j * e2[sb] * t)
    return out if out.shape else complex(out)


def pert_amplitudes(
    t,
    params: ModelParams,
    spectrum: CorrectedSpectrum | None = None,
):
    """Perturbative interaction-picture amplitudes (c10(t), c01(t)) for the
    initial state |10>.

    c10 = (1/2) e^{i E10 t} [G++ - G+- - G-+ + G--]
    c01 = (i/2) e^{i E01 t} [G++ - G+- + G-+ - G--]
    with E10 = epsilon1 and E01 = epsilon0 + omega0 (equal on resonance).
    """
    sp_ = spectrum if spectrum is not None else corrected_spectrum(params)
    t = np.asarray(t, dtype=float)
    gpp = g00_propagator(+1, +1, t, params, sp_)
    gpm = g00_propagator(+1, -1, t, params, sp_)
    gmp = g00_propagator(-1, +1, t, params, sp_)
    gmm = g00_propagator(-1, -1, t, params, sp_)
    e10 = params.epsilon1
    e01 = params.epsilon0 + params.omega0
    c10 = 0.5 * np.exp(1j * e10 * t) * (gpp - gpm - gmp + gmm)
    c01 = 0.5j * np.exp(1j * e01 * t) * (gpp - gpm + gmp - gmm)
    return c10, c01
