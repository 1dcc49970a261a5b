"""Component sizes of the critical random graph G(n, 1/n).

Process-level exploration (counts only, O(1) state, n up to 10^9), the
coupled barrier walks that dominate it, closed-form tail bounds with
validity tracking, exact small-n oracles, and a reproducible Monte Carlo
harness that checks every bound one-sidedly.
"""

from ._version import __version__
from .bounds import (
    BoundReport,
    c1_tail_bound,
    cv_tail_bound,
    easy_bound_c1,
    thm1_bounds,
    thm2_bound,
    thm5_bounds,
)
from .explore import (
    ExplorationRun,
    GraphParams,
    StageParams,
    SweepResult,
    TwoStageOutcome,
    explore_component,
    run_two_stage,
    stage_params,
    sweep_components,
)
from .harness import (
    ExperimentSpec,
    TailEstimate,
    VerdictReport,
    dominance_verdict,
    martingale_identity_check,
    read_results,
    run_experiment,
    write_results,
)
from .oracle import (
    ExactDistribution,
    ExplicitGraph,
    components_of,
    enumerate_exact,
    explore_on_graph,
    sample_explicit,
)
from .rng import RngStream, sample_binomial, sample_geometric_gap, stream
from .walks import (
    CoupledOutcome,
    WalkOutcome,
    WalkParams,
    collect_overshoots,
    run_coupled,
    run_drift_walk,
    run_walk,
    run_walk_capped,
)

__all__ = [
    "__version__",
    "BoundReport",
    "CoupledOutcome",
    "ExactDistribution",
    "ExperimentSpec",
    "ExplicitGraph",
    "ExplorationRun",
    "GraphParams",
    "RngStream",
    "StageParams",
    "SweepResult",
    "TailEstimate",
    "TwoStageOutcome",
    "VerdictReport",
    "WalkOutcome",
    "WalkParams",
    "c1_tail_bound",
    "collect_overshoots",
    "components_of",
    "cv_tail_bound",
    "dominance_verdict",
    "easy_bound_c1",
    "enumerate_exact",
    "explore_component",
    "explore_on_graph",
    "martingale_identity_check",
    "read_results",
    "run_coupled",
    "run_drift_walk",
    "run_experiment",
    "run_two_stage",
    "run_walk",
    "run_walk_capped",
    "sample_binomial",
    "sample_explicit",
    "sample_geometric_gap",
    "stage_params",
    "stream",
    "sweep_components",
    "thm1_bounds",
    "thm2_bound",
    "thm5_bounds",
    "write_results",
]
