"""Overlap-free satellite observation scheduling via MWIS and simulated QAOA."""
from .constellation import (
    ConflictGraph,
    Footprint,
    OverlapPolicy,
    build_conflict_graph,
    overlap_area,
    random_constellation,
)
from .errors import ConfigurationError, ContractError, NumericalError, SizeLimitError
from .hamiltonian import (
    DiagonalHamiltonian,
    MixerHamiltonian,
    PenaltyRate,
    boolean_and_hamiltonian,
    boolean_identity_hamiltonian,
    build_constraint,
    build_objective,
    build_problem,
    energy,
    energy_table,
)
from .kernels import BACKEND
from .mwis import (
    MwisInstance,
    Selection,
    SolveReport,
    is_independent,
    solve_exact,
    solve_greedy,
    total_weight,
    violation_count_weighted,
)
from .qaoa import (
    OptimizerConfig,
    QaoaParams,
    SampleSet,
    StateVector,
    apply_mixer_layer,
    apply_phase_layer,
    evolve,
    expectation,
    extract_solution,
    init_uniform_state,
    optimize,
    sample,
    solve_qaoa,
)

__version__ = "0.1.0"
