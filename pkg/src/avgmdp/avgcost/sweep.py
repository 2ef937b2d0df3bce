"""Discount sweeps: v_α, m_α and u_α along a grid α ↑ 1.

A sweep evaluates one value source at every grid point. Everything computed
from a table (U_β, the grid limit of U, the bounds on w̲ and w̄) is grid
evidence about limits as α ↑ 1, not a proof of them.
"""

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from typing import ClassVar

from avgmdp.dp.evaluation import enumerate_policies, evaluate_relative
from avgmdp.dp.solver import solve_discounted
from avgmdp.errors import CapExceededError, ModelError, ParameterError
from avgmdp.model.extreal import INF
from avgmdp.model.models import MdpModel, StateId, ValueFn
from avgmdp.parallel import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepPoint:
    """Quantities at one discount factor.

    Attributes:
        alpha: Discount factor
        v: Optimal discounted values v_α
        m: m_α = min of v_α over the model's infimum window
        u: u_α = v_α − m_α
        abel_m: (1 − α) m_α, computed without forming m_α where possible
    """

    alpha: float
    v: ValueFn
    m: float
    u: ValueFn
    abel_m: float


@dataclass(frozen=True)
class SweepTable:
    """Sweep points on a strictly increasing grid in [0, 1)."""

    grid: tuple[float, ...]
    points: tuple[SweepPoint, ...]
    source: str

    @property
    def v(self) -> list[ValueFn]:
        """v_α per grid point."""
        return [p.v for p in self.points]

    @property
    def m(self) -> list[float]:
        """m_α per grid point."""
        return [p.m for p in self.points]

    @property
    def u(self) -> list[ValueFn]:
        """u_α per grid point."""
        return [p.u for p in self.points]

    @property
    def abel_m(self) -> list[float]:
        """(1 − α) m_α per grid point."""
        return [p.abel_m for p in self.points]

    @property
    def states(self) -> tuple[StateId, ...]:
        """States covered by every point."""
        return tuple(self.points[0].u)

    def records(self) -> list[dict[str, object]]:
        """One record (α, state, v, m_α, u) per grid point and state."""
        return [
            {"alpha": p.alpha, "state": x, "v": p.v[x], "m": p.m, "u": p.u[x]}
            for p in self.points
            for x in p.v
        ]


def check_grid(grid: Sequence[float]) -> tuple[float, ...]:
    """Validate a discount grid.

    Raises:
        ParameterError: If the grid is empty, leaves [0, 1) or is not
            strictly increasing
    """
    if not grid:
        msg = "Discount grid is empty"
        raise ParameterError(msg)
    for alpha in grid:
        if not 0.0 <= alpha < 1.0:
            msg = f"Grid point {alpha} is outside [0, 1)"
            raise ParameterError(msg)
    for low, high in zip(grid, grid[1:], strict=False):
        if not low < high:
            msg = f"Grid is not strictly increasing at {low}, {high}"
            raise ParameterError(msg)
    return tuple(float(alpha) for alpha in grid)


def point_from_values(model: MdpModel, alpha: float, v: ValueFn) -> SweepPoint:
    """Derive m_α, u_α and (1 − α)m_α from v_α.

    Raises:
        ModelError: If v_α is +∞ on the whole infimum window
    """
    m = min(v[x] for x in model.infimum_window)
    if m == INF:
        msg = f"v_α is +∞ on the whole infimum window at α = {alpha}"
        raise ModelError(msg)
    u = {x: INF if vx == INF else max(vx - m, 0.0) for x, vx in v.items()}
    return SweepPoint(alpha=alpha, v=v, m=m, u=u, abel_m=(1.0 - alpha) * m)


class SweepSource(ABC):
    """Producer of v_α for one model at one discount factor."""

    name: ClassVar[str]

    @abstractmethod
    def point(self, model: MdpModel, alpha: float) -> SweepPoint:
        """Compute the sweep point at ``alpha``."""


class DpSource(SweepSource):
    """Value iteration followed by exact evaluation of the greedy policy."""

    name: ClassVar[str] = "dp"

    def __init__(self, tol: float = 1e-10, workers: int = 1) -> None:
        self.tol = tol
        self.workers = workers

    def point(self, model: MdpModel, alpha: float) -> SweepPoint:
        solution = solve_discounted(model, alpha, self.tol, workers=self.workers)
        return point_from_values(model, alpha, solution.values)


class EnumerationSource(SweepSource):
    """Exhaustive search over deterministic stationary policies.

    Each policy is evaluated in relative form, so u_α and (1 − α)m_α stay
    accurate for α extremely close to 1. Needs finite costs.
    """

    name: ClassVar[str] = "enumerate"
    DEFAULT_CAP: ClassVar[int] = 4096

    def __init__(self, cap: int = DEFAULT_CAP) -> None:
        self.cap = cap

    def point(self, model: MdpModel, alpha: float) -> SweepPoint:
        count = model.policy_count
        if count > self.cap:
            msg = f"Model has {count} stationary policies, cap is {self.cap}"
            raise CapExceededError(msg, count, self.cap)

        scale = 1.0 / (1.0 - alpha)
        policies = enumerate_policies(model)
        best = evaluate_relative(model, next(policies), alpha)
        for policy in policies:
            candidate = evaluate_relative(model, policy, alpha)
            # Σ_x (v_candidate − v_best)(x), split so the 1/(1−α) factor only
            # multiplies the gain difference
            total = len(model) * (candidate.rho - best.rho) * scale + math.fsum(
                candidate.d[x] - best.d[x] for x in model.states
            )
            if total < 0:
                best = candidate

        window = model.infimum_window
        u = best.relative_to_min(window)
        abel_m = best.scaled_min(window)
        v = best.values()
        return SweepPoint(
            alpha=alpha,
            v=v,
            m=abel_m * scale,
            u={x: max(ux, 0.0) for x, ux in u.items()},
            abel_m=abel_m,
        )


def build_sweep(
    model: MdpModel,
    grid: Sequence[float],
    source: SweepSource | None = None,
    workers: int = 1,
) -> SweepTable:
    """Evaluate ``source`` on every grid point.

    Args:
        model: Model
        grid: Strictly increasing discount factors in [0, 1)
        source: Value source; defaults to ``DpSource``
        workers: Threads across grid points

    Returns:
        The table
    """
    alphas = check_grid(grid)
    source = source if source is not None else DpSource()
    points = ordered_map(lambda alpha: source.point(model, alpha), alphas, workers)
    logger.info("Built %s sweep over %d grid points", source.name, len(alphas))
    return SweepTable(grid=alphas, points=tuple(points), source=source.name)


def U_beta(table: SweepTable, beta: float, x: StateId) -> float:
    """Grid version of U_β(x) = inf_{α ∈ [β, 1)} u_α(x).

    The minimum over grid points in [β, 1) is an upper bound on the true
    infimum.

    Raises:
        ParameterError: If no grid point lies at or above β
    """
    values = [p.u[x] for p in table.points if p.alpha >= beta]
    if not values:
        msg = f"No grid point at or above β = {beta}"
        raise ParameterError(msg)
    return min(values)


def U_trend(table: SweepTable, x: StateId) -> list[tuple[float, float]]:
    """(β, U_β(x)) for every grid point β; nondecreasing in β."""
    trend: list[tuple[float, float]] = []
    running = INF
    for point in reversed(table.points):
        running = min(running, point.u[x])
        trend.append((point.alpha, running))
    trend.reverse()
    return trend


def u_liminf(table: SweepTable, x: StateId) -> float:
    """Grid limit of U_β(x) as β runs up the grid.

    The sequence is nondecreasing, so its limit over a finite grid is the
    value at the last grid point.
    """
    return U_trend(table, x)[-1][1]


def w_bounds(table: SweepTable, tail: int | None = None) -> tuple[float, float]:
    """Bounds for w̲ and w̄ from the last ``tail`` values of (1 − α)m_α.

    Args:
        table: Sweep table
        tail: Window length; defaults to the last half of the grid

    Returns:
        (min, max) of (1 − α)m_α over the window
    """
    values = table.abel_m
    size = tail if tail is not None else max(1, math.ceil(len(values) / 2))
    window = values[-size:]
    return min(window), max(window)
