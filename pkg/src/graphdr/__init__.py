"""Graph-based Douglas-Rachford splitting for linear-subspace feasibility problems."""

__version__ = "0.1.0"

from .angles import AngleReport, friedrichs, pierra_angle, pierra_product
from .engine import (
    RunConfig,
    RunResult,
    IterationState,
    classical_dr_step,
    demo_spiral,
    graph_dr_step,
    run,
)
from .errors import (
    DegenerateAlphaError,
    DegenerateAngleError,
    DisconnectedSubgraphError,
    InconsistentSystemError,
    InvalidInputError,
)
from .graphs import (
    NAMED_GRAPHS,
    AlgorithmGraph,
    SplittingOperator,
    build_named,
    build_operator,
    degree_balance,
    factor_Z,
    laplacian,
    solve_alpha,
)
from .harness import (
    DimMode,
    ExperimentConfig,
    aggregate_by_n,
    best_theta,
    compare,
    generate_problem,
    theta_sweep,
)
from .limits import LimitData, LimitOracle, build_E, dr_limit_two, explicit_limits
from .subspaces import (
    Problem,
    Subspace,
    complement,
    intersect_many,
    orthonormalize,
    principal_angles,
    project,
    random_subspace,
)
