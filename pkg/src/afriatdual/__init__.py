"""Revealed preference and the housing market, through optimal assignment.

The same matrix ``R`` drives both sides: on demand data ``R[i, j] = p_i . x_j - p_i . x_i``;
in a housing market ``R[i, j] = c[i, j] - c[i, i]``. Cyclical consistency of ``R`` is
rationalizability on one side and Pareto efficiency of the status quo on the other.
"""

from .assignment import AssignmentResult, bottleneck_assignment, is_cyclically_monotone, min_cost_assignment
from .consistency import (
    ConsistencyVerdict,
    check_assumption_a,
    check_cyclical_consistency,
    coherent_closure,
    increasing_cycle_partition,
    is_coherent,
)
from .estimators import AfriatRationalizer, HousingAudit, RationalizabilityIndices
from .housing import (
    ParetoVerdict,
    budget_set,
    equilibrium_holds,
    is_pareto,
    no_trade_prices,
    top_trading_cycles,
    welfare_gap,
)
from .indices import (
    IndexReport,
    default_epsilon,
    epsilon_from_certificate,
    extreme_point_test,
    full_report,
    index_a,
    index_a_star,
    index_b,
    index_g,
    support_function,
)
from .lp import LinearProgram, LpOutcome, feasible, solve
from .model import (
    DEFAULT_TOL,
    ConvergenceError,
    DemandDataset,
    InputError,
    Sign,
    classify,
    r_from_costs,
    r_from_demand,
)
from .rationalize import (
    Certificate,
    EfficiencyIndexResult,
    NotRationalizableError,
    afriat_efficiency_index,
    afriat_utility,
    find_certificate,
    rationalizable,
    verify_certificate,
)

__version__ = "0.1.0"
