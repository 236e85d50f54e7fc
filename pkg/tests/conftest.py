import numpy as np
import pytest

from qubitboson.experiments import DEFAULT_DIAGONAL_ELEMENT
from qubitboson.model import (
    PLANCK_EV_S,
    CouplingElements,
    JunctionSpec,
    ModelParams,
    derive_junction,
)

# The paper-style device: Martinis-type junction resonant with a 10 GHz mode.
OMEGA0_HZ = 1.0e10
SPLITTING_EV = PLANCK_EV_S * OMEGA0_HZ


@pytest.fixture(scope="session")
def junction():
    return JunctionSpec(
        josephson_energy_ev=43.1e-3,
        charging_energy_ev=53.4e-9,
        target_level_splitting_ev=SPLITTING_EV,
    )


@pytest.fixture(scope="session")
def derived_coupling(junction):
    return derive_junction(junction)


@pytest.fixture(scope="session")
def coupling(derived_coupling):
    """Experiment-default coupling: derived x01, default diagonal elements."""
    return CouplingElements(
        x00=DEFAULT_DIAGONAL_ELEMENT,
        x01=derived_coupling.x01,
        x11=DEFAULT_DIAGONAL_ELEMENT,
        delta_min=derived_coupling.delta_min,
        cos_delta_min=derived_coupling.cos_delta_min,
    )


@pytest.fixture(scope="session")
def make_params(coupling):
    def _make(g: float, n_max: int = 5, **kwargs) -> ModelParams:
        return ModelParams(g=g, coupling=coupling, n_max=n_max, **kwargs)

    return _make


@pytest.fixture()
def rng():
    return np.random.default_rng(20260823)


def random_hermitian(rng, n: int) -> np.ndarray:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return m + m.conj().T
