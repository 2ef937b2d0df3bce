"""Dynamic programming engine: Bellman operator, solvers and policy evaluation."""

from avgmdp.dp.chains import ClassDecomposition, can_reach, decompose, policy_matrix
from avgmdp.dp.evaluation import (
    RelativeValue,
    enumerate_policies,
    evaluate_policy,
    evaluate_policy_horizon,
    evaluate_relative,
)
from avgmdp.dp.operators import bellman_backup, check_discount, eta, eta_row
from avgmdp.dp.solver import (
    DiscountedSolution,
    FiniteHorizonResult,
    FixedIterations,
    InfiniteHorizonResult,
    SupNormTolerance,
    finite_horizon,
    infinite_horizon,
    solve_discounted,
    stationary_from_value,
)

__all__ = [
    "ClassDecomposition",
    "DiscountedSolution",
    "FiniteHorizonResult",
    "FixedIterations",
    "InfiniteHorizonResult",
    "RelativeValue",
    "SupNormTolerance",
    "bellman_backup",
    "can_reach",
    "check_discount",
    "decompose",
    "enumerate_policies",
    "eta",
    "eta_row",
    "evaluate_policy",
    "evaluate_policy_horizon",
    "evaluate_relative",
    "finite_horizon",
    "infinite_horizon",
    "policy_matrix",
    "solve_discounted",
    "stationary_from_value",
]
