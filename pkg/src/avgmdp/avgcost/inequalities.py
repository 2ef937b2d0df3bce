"""Checks of the average-cost optimality inequality and the boundedness assumptions."""

import logging
from dataclasses import dataclass, field

from avgmdp.avgcost.sweep import SweepTable, U_beta, U_trend, u_liminf, w_bounds
from avgmdp.dp.operators import eta_row
from avgmdp.errors import ParameterError
from avgmdp.model.extreal import INF
from avgmdp.model.models import (
    ActionId,
    ArgminSets,
    MdpModel,
    StateId,
    StationaryPolicy,
    ValueFn,
    expect_under,
)
from avgmdp.selection.selector import argmin_set, minimize_row

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
GRID_EVIDENCE = "grid evidence"


@dataclass(frozen=True)
class AciCheck:
    """Outcome of checking w̄ + u(x) ≥ min_a η_u^1(x, a) state by state.

    Attributes:
        slack: w̄ + u(x) − min_a η_u^1(x, a)
        a_upper: Actions with η_u^1(x, a) ≤ w̄ + u(x) + tol
        a_min: Actions within tol of the minimum of η_u^1(x, ·)
        policy: First action of ``a_min`` at every state
        slack_floor: −(1 − α_ref) max_a Σ_z q(z|x, a) u(z), the lowest slack
            possible when u = u_{α_ref} and w̄ ≥ (1 − α_ref) m_{α_ref};
            empty without a reference discount
        inclusion_failures: States with slack ≥ −tol where a_min ⊄ a_upper
    """

    w_upper: float
    tol: float
    slack: dict[StateId, float]
    a_upper: ArgminSets
    a_min: ArgminSets
    policy: StationaryPolicy
    slack_floor: dict[StateId, float] = field(default_factory=dict)
    inclusion_failures: tuple[StateId, ...] = ()

    @property
    def min_slack(self) -> float:
        """Smallest slack over all states."""
        return min(self.slack.values())

    @property
    def holds(self) -> bool:
        """True if no slack is below −tol."""
        return self.min_slack >= -self.tol

    @property
    def within_floor(self) -> bool:
        """True if every slack is at or above its certified floor (less tol)."""
        return all(
            self.slack[x] >= floor - self.tol for x, floor in self.slack_floor.items()
        )


@dataclass(frozen=True)
class AvgCostReport:
    """Average-cost pipeline summary for one model and grid."""

    w_lower: float
    w_upper: float
    w_star: float | None
    u: ValueFn
    check: AciCheck
    evidence: str = GRID_EVIDENCE

    @property
    def chain_holds(self) -> bool:
        """0 ≤ w̲ ≤ w̄ ≤ w* (the last link only when w* is known)."""
        ordered = 0.0 <= self.w_lower <= self.w_upper
        if self.w_star is None:
            return ordered
        return ordered and self.w_upper <= self.w_star + self.check.tol


def aci_check(
    model: MdpModel,
    u: ValueFn,
    w_upper: float,
    tol: float = DEFAULT_TOL,
    alpha_ref: float | None = None,
) -> AciCheck:
    """Evaluate the average-cost optimality inequality for a given u.

    Negative slack is reported, never raised: it points at a coarse grid or
    a poor approximation of u.

    Args:
        model: Finite model
        u: Relative value function, finite at every state
        w_upper: Upper average-cost bound w̄
        tol: Absolute tolerance for set membership
        alpha_ref: Discount at which ``u`` was taken, to report slack floors

    Returns:
        The per-state check

    Raises:
        ParameterError: If u is +∞ somewhere
    """
    infinite = [x for x in model.states if u.get(x, INF) == INF]
    if infinite:
        msg = f"u must be finite at every state; it is not at {infinite[0]!r}"
        raise ParameterError(msg)

    slack: dict[StateId, float] = {}
    a_upper: ArgminSets = {}
    a_min: ArgminSets = {}
    choice: dict[StateId, ActionId] = {}
    floors: dict[StateId, float] = {}
    failures: list[StateId] = []
    for x in model.states:
        actions = model.feasible(x)
        row = eta_row(model, u, 1.0, x)
        best, _ = minimize_row(actions, row)
        bound = w_upper + u[x]
        slack[x] = bound - best
        a_upper[x] = tuple(a for a in actions if row[a] <= bound + tol)
        a_min[x] = argmin_set(actions, row, best, tol)
        choice[x] = a_min[x][0]
        if alpha_ref is not None:
            drift = max(expect_under(model.q(x, a), u) for a in actions)
            floors[x] = -(1.0 - alpha_ref) * drift
        if slack[x] >= -tol and not set(a_min[x]) <= set(a_upper[x]):
            failures.append(x)

    check = AciCheck(
        w_upper=w_upper,
        tol=tol,
        slack=slack,
        a_upper=a_upper,
        a_min=a_min,
        policy=StationaryPolicy(choice),
        slack_floor=floors,
        inclusion_failures=tuple(failures),
    )
    if not check.holds:
        logger.warning(
            "Negative slack %.3e in the optimality inequality", check.min_slack
        )
    return check


def discounted_inequality_check(
    model: MdpModel,
    table: SweepTable,
    alpha: float,
    w_upper: float,
    eps_star: float = 0.01,
) -> dict[StateId, float]:
    """Margins of w̄ + ε* + u(x) ≥ min_a η_{U_α}^α(x, a) at one grid discount.

    Here U_α and u are the grid versions from ``table``. A nonnegative margin
    at every state is the discounted inequality that the optimality
    inequality is obtained from in the limit α ↑ 1.

    Args:
        model: Model whose states the table covers
        table: Sweep table
        alpha: Discount factor, at most the last grid point
        w_upper: Upper average-cost bound w̄
        eps_star: Slack ε* > 0

    Returns:
        Margin per state
    """
    if eps_star <= 0:
        msg = f"ε* must be positive, got {eps_star}"
        raise ParameterError(msg)
    big_u = {x: U_beta(table, alpha, x) for x in model.states}
    margins: dict[StateId, float] = {}
    for x in model.states:
        best, _ = minimize_row(model.feasible(x), eta_row(model, big_u, alpha, x))
        margins[x] = w_upper + eps_star + u_liminf(table, x) - best
    return margins


@dataclass(frozen=True)
class AssumptionDiagnostics:
    """Grid evidence on sup_α u_α(x) < ∞ and on the finiteness of liminf u_α(x)."""

    state: StateId
    b_holds_on_grid: bool
    bbar_estimate: float
    u_max: float
    u_min: float
    witness_max: float
    witness_min: float
    trend: list[tuple[float, float]]
    evidence: str = GRID_EVIDENCE


def assumption_diagnostics(
    table: SweepTable, x: StateId, threshold: float = 1e6
) -> AssumptionDiagnostics:
    """Summarize u_α(x) along the grid.

    Args:
        table: Sweep table
        x: State
        threshold: Values of max u_α(x) at or above it count as divergence

    Returns:
        Diagnostics; the flags describe the grid only
    """
    values = [(p.alpha, p.u[x]) for p in table.points]
    witness_max, u_max = max(values, key=lambda item: item[1])
    witness_min, u_min = min(values, key=lambda item: item[1])
    return AssumptionDiagnostics(
        state=x,
        b_holds_on_grid=u_max < threshold,
        bbar_estimate=u_liminf(table, x),
        u_max=u_max,
        u_min=u_min,
        witness_max=witness_max,
        witness_min=witness_min,
        trend=U_trend(table, x),
    )


def average_cost_report(
    model: MdpModel,
    table: SweepTable,
    tol: float = DEFAULT_TOL,
    w_star: float | None = None,
) -> AvgCostReport:
    """Run the vanishing-discount pipeline on a finished sweep.

    u is the grid limit of U_β and w̄ the tail maximum of (1 − α)m_α; the
    inequality check uses the last grid point as reference discount.

    Args:
        model: Model the sweep was built on
        table: Sweep table
        tol: Tolerance for the inequality check
        w_star: Optimal average cost, when known

    Returns:
        The report
    """
    w_lower, w_upper = w_bounds(table)
    u = {x: u_liminf(table, x) for x in model.states}
    check = aci_check(model, u, w_upper, tol, alpha_ref=table.grid[-1])
    return AvgCostReport(
        w_lower=w_lower, w_upper=w_upper, w_star=w_star, u=u, check=check
    )
