"""Desk-scale simulations of search by rank-one Hamiltonian evolution and
its digital counterpart, plus the driver-independent time lower bound and
random-overlap statistics that frame both."""

from .analog import (
    TwoLevelState,
    TwoLevelSystem,
    absorb_phase,
    assemble_search_hamiltonian,
    evolve_closed_form,
    measurement_time,
    reduced_basis,
    success_probability,
    two_level_eigenvalues,
    two_level_from_hamiltonians,
    two_level_hamiltonian,
)
from .bound import (
    BoundReport,
    DriverSchedule,
    TrajectorySet,
    discrimination_time,
    divergence_profile,
    evolve_trajectories,
    oracle_coupling_norms,
    per_oracle_rates,
    sum_oracle_hamiltonians,
)
from .errors import (
    BasisError,
    DegenerateOverlapError,
    DimensionError,
    NormalizationError,
    NoRotationError,
    QSearchError,
    ScheduleError,
    UnequalScaleError,
)
from .grover import (
    GroverInstance,
    GroverRun,
    apply_uf,
    apply_us,
    optimal_iterations,
    reduced_initial_state,
    reduced_probability,
    reduced_step_matrix,
    rotation_angle,
    run_grover,
    sample_index,
    us_matrix,
)
from .linalg import (
    HermitianOperator,
    RankOneHamiltonian,
    StateVector,
    eigendecompose,
    expm_apply,
    inner_product,
)
from .statistics import OverlapSample, overlap_statistics, random_state

__version__ = "0.1.0"

__all__ = [
    "BasisError",
    "BoundReport",
    "DegenerateOverlapError",
    "DimensionError",
    "DriverSchedule",
    "GroverInstance",
    "GroverRun",
    "HermitianOperator",
    "NoRotationError",
    "NormalizationError",
    "OverlapSample",
    "QSearchError",
    "RankOneHamiltonian",
    "ScheduleError",
    "StateVector",
    "TrajectorySet",
    "TwoLevelState",
    "TwoLevelSystem",
    "UnequalScaleError",
    "absorb_phase",
    "apply_uf",
    "apply_us",
    "assemble_search_hamiltonian",
    "discrimination_time",
    "divergence_profile",
    "eigendecompose",
    "evolve_closed_form",
    "evolve_trajectories",
    "expm_apply",
    "inner_product",
    "measurement_time",
    "optimal_iterations",
    "oracle_coupling_norms",
    "overlap_statistics",
    "per_oracle_rates",
    "random_state",
    "reduced_basis",
    "reduced_initial_state",
    "reduced_probability",
    "reduced_step_matrix",
    "rotation_angle",
    "run_grover",
    "sample_index",
    "success_probability",
    "sum_oracle_hamiltonians",
    "two_level_eigenvalues",
    "two_level_from_hamiltonians",
    "two_level_hamiltonian",
    "us_matrix",
]
