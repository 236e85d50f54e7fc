"""Two-level qubit coupled to a single boson mode: exact, RWA, and
second-order dressed-state perturbative dynamics, plus state-transfer
fidelity experiments."""

from .dressed import (
    GROUND,
    DressedIndex,
    DressedState,
    dressed_energy,
    dressed_state,
    rabi_frequency,
    v_element,
    v_ground_element,
)
from .dynamics import (
    AmplitudeSeries,
    amplitudes,
    default_time_grid,
    exact_amplitudes,
    perturbative_amplitudes,
    rwa_amplitudes,
    vacuum_rabi_period,
)
from .errors import ConfigError, ConvergenceError, DegenerateDenominatorError
from .experiments import (
    FidelityPoint,
    RunConfig,
    fidelity_sweep,
    find_t_min,
    run_evolution,
    spectrum_table,
    validate,
)
from .linalg import EigenDecomposition, eigh, evolve, evolve_grid
from .model import (
    CouplingElements,
    HermitianOperator,
    JunctionSpec,
    ModelParams,
    build_full_hamiltonian,
    build_jc_and_v,
    derive_junction,
    state_index,
)
from .perturbation import (
    CorrectedSpectrum,
    corrected_energy,
    corrected_ground_energy,
    corrected_spectrum,
    g00_propagator,
    normalizations,
    pert_amplitudes,
)

__version__ = "0.1.0"
