"""Squeezed-cavity single-atom detection simulator.

Builds the lab-frame and squeezed-frame atom-cavity models with a driven
chi^(2) parametric medium, solves the Lindblad dynamics to steady state, and
computes the discrimination signals (output photon flux, quantum
fluctuations, squeezed-Fock photon distributions, Wigner functions) for the
empty cavity versus the single-atom cavity.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    CutoffWarning,
    DegenerateSteadyStateError,
    DimensionMismatchError,
    PositivityWarning,
    RWAValidityWarning,
    SqCavityError,
    ThresholdError,
    TruncationError,
)
from .operators import (
    DensityMatrix,
    FockOperator,
    HilbertDims,
    atom_ops,
    basis_ket,
    destroy,
    displacement_operator,
    identity,
    number,
    squeeze_operator,
    unvectorize,
    vectorize,
)
from .model import (
    LAB,
    SQUEEZED,
    DissipatorSpec,
    ModelParams,
    build_dissipators,
    build_hamiltonian_lab,
    build_hamiltonian_squeezed,
    diagonalization_residual,
    enhanced_couplings,
    noise_params,
    pump_amplitude,
    squeezed_frequency,
    squeezing_param,
)
from .dynamics import Liouvillian, Trajectory, build_liouvillian, evolve, steady_state
from .observables import (
    MomentSet,
    PhotonDistribution,
    WignerGrid,
    lab_moments_from_squeezed,
    moments,
    output_flux,
    photon_distribution,
    squeezed_frame_distribution,
    squeezed_vacuum_ket,
    squeezed_vacuum_state,
    wigner,
)
from .oracle import (
    GaussianMoments,
    empty_cavity_steady_moments,
    master_equation_rhs,
    small_system_brute_force,
)
from .scenarios import (
    SCENARIOS,
    ObservableRecord,
    ScenarioConfig,
    load_config,
    resolve_config,
    run_scenario,
    steady_record,
    validate_config,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
