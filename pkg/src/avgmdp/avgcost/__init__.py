"""Vanishing-discount average-cost analysis."""

from avgmdp.avgcost.average import (
    Exact,
    Horizon,
    average_cost_of_policy,
    best_average_policy,
    policy_gains,
    w_star_bruteforce,
)
from avgmdp.avgcost.inequalities import (
    AciCheck,
    AssumptionDiagnostics,
    AvgCostReport,
    aci_check,
    assumption_diagnostics,
    average_cost_report,
    discounted_inequality_check,
)
from avgmdp.avgcost.sweep import (
    DpSource,
    EnumerationSource,
    SweepPoint,
    SweepSource,
    SweepTable,
    U_beta,
    U_trend,
    build_sweep,
    check_grid,
    point_from_values,
    u_liminf,
    w_bounds,
)

__all__ = [
    "AciCheck",
    "AssumptionDiagnostics",
    "AvgCostReport",
    "DpSource",
    "EnumerationSource",
    "Exact",
    "Horizon",
    "SweepPoint",
    "SweepSource",
    "SweepTable",
    "U_beta",
    "U_trend",
    "aci_check",
    "assumption_diagnostics",
    "average_cost_of_policy",
    "average_cost_report",
    "best_average_policy",
    "build_sweep",
    "check_grid",
    "discounted_inequality_check",
    "point_from_values",
    "policy_gains",
    "u_liminf",
    "w_bounds",
    "w_star_bruteforce",
]
