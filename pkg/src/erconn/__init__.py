"""Connectivity probability of Erdos-Renyi graphs G(n, p).

Four mutually cross-checking exact engines (a bridge/excursion walk DP,
brute-force enumeration, the component recursion, and direct summation of
the exploration-process probability), the asymptotic formulas by regime,
meander/domination/hitting results for the underlying inhomogeneous
Poisson walk, and Monte Carlo validators.
"""

from .asymptotics import (
    ClassifierThresholds,
    Regime,
    RegimeReport,
    asymptotic_connectivity,
    classify_regime,
    stepanov_reference,
)
from .errors import DomainError, ErconnError, RefusalError
from .graphs import (
    CancellationWarning,
    GraphEnumSpec,
    connectivity_brute_force,
    connectivity_pcon_sum,
    connectivity_recursive,
)
from .numerics import (
    ProbabilityValue,
    lambert_w0,
    log_poisson_pmf,
    log_stable_bn,
    poisson_pmf_window,
    stable_bn,
)
from .simulate import (
    McEstimate,
    TrajectoryRecord,
    bridge_excursion_mc,
    explore_connectivity_mc,
    sample_trajectories,
)
from .walk import (
    BridgeDpTable,
    DominationResult,
    IntensityProfile,
    ballot_conditional,
    conditional_threshold_prob,
    connectivity_via_walk,
    domination_compare,
    excursion_bridge_table,
    excursion_given_bridge_dp,
    finite_meander_dp,
    make_profile,
    meander_prob_subcritical_strict,
    meander_prob_supercritical,
    mid_hitting_bound,
    mid_hitting_exact,
)

__version__ = "0.1.0"

__all__ = [
    "BridgeDpTable",
    "CancellationWarning",
    "ClassifierThresholds",
    "DomainError",
    "DominationResult",
    "ErconnError",
    "GraphEnumSpec",
    "IntensityProfile",
    "McEstimate",
    "ProbabilityValue",
    "RefusalError",
    "Regime",
    "RegimeReport",
    "TrajectoryRecord",
    "asymptotic_connectivity",
    "ballot_conditional",
    "bridge_excursion_mc",
    "classify_regime",
    "conditional_threshold_prob",
    "connectivity_brute_force",
    "connectivity_pcon_sum",
    "connectivity_recursive",
    "connectivity_via_walk",
    "domination_compare",
    "excursion_bridge_table",
    "excursion_given_bridge_dp",
    "explore_connectivity_mc",
    "finite_meander_dp",
    "lambert_w0",
    "log_poisson_pmf",
    "log_stable_bn",
    "make_profile",
    "meander_prob_subcritical_strict",
    "meander_prob_supercritical",
    "mid_hitting_bound",
    "mid_hitting_exact",
    "poisson_pmf_window",
    "sample_trajectories",
    "stable_bn",
    "stepanov_reference",
]
