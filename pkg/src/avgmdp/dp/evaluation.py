"""Exact evaluation of stationary policies.

For α < 1 and finite costs the value solves (I − αP_φ)v = c_φ. The
structural method walks the strongly connected classes of P_φ so that +∞
costs and α = 1 are handled without ever forming a singular system.
"""

import itertools
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import spsolve

from avgmdp.dp.chains import decompose, policy_costs, policy_matrix
from avgmdp.dp.operators import check_discount, zero_value
from avgmdp.errors import ModelError, ParameterError
from avgmdp.model.extreal import INF, ext_mul
from avgmdp.model.models import (
    MdpModel,
    StateId,
    StationaryPolicy,
    ValueFn,
    expect_under,
)

logger = logging.getLogger(__name__)

type EvaluationMethod = Literal["auto", "linear", "structural"]


def enumerate_policies(model: MdpModel) -> Iterator[StationaryPolicy]:
    """All deterministic stationary policies, in lexicographic action order."""
    choices = [model.feasible(x) for x in model.states]
    for combo in itertools.product(*choices):
        yield StationaryPolicy(dict(zip(model.states, combo, strict=True)))


def evaluate_policy(
    model: MdpModel,
    policy: StationaryPolicy,
    alpha: float,
    method: EvaluationMethod = "auto",
) -> ValueFn:
    """Total α-discounted cost v_α^φ of a stationary policy.

    Args:
        model: Finite model
        policy: Feasible stationary policy
        alpha: Discount factor in [0, 1]
        method: ``linear`` solves one sparse system and needs α < 1 with
            finite costs under φ; ``structural`` works class by class and
            accepts α = 1 and +∞ costs; ``auto`` picks ``linear`` when it
            applies

    Returns:
        Value at every state; +∞ where the discounted sum diverges

    Raises:
        ParameterError: If α is out of range or ``linear`` cannot apply
    """
    check_discount(alpha)
    policy.check_feasible(model)
    costs = policy_costs(model, policy)
    if alpha == 0:
        return {x: float(c) for x, c in zip(model.states, costs, strict=True)}

    finite = bool(np.all(np.isfinite(costs)))
    if method == "auto":
        method = "linear" if alpha < 1 and finite else "structural"
    if method == "linear":
        if alpha >= 1 or not finite:
            msg = "Linear evaluation needs α < 1 and finite costs; use 'structural'"
            raise ParameterError(msg)
        return _evaluate_linear(model, policy, alpha, costs)
    return _evaluate_structural(model, policy, alpha, costs)


def _evaluate_linear(
    model: MdpModel, policy: StationaryPolicy, alpha: float, costs: np.ndarray
) -> ValueFn:
    matrix = policy_matrix(model, policy)
    system = sparse.identity(len(model), format="csc") - alpha * matrix.tocsc()
    values = np.atleast_1d(spsolve(system, costs))
    return {x: float(v) for x, v in zip(model.states, values, strict=True)}


def _evaluate_structural(
    model: MdpModel, policy: StationaryPolicy, alpha: float, costs: np.ndarray
) -> ValueFn:
    matrix = policy_matrix(model, policy)
    parts = decompose(matrix)
    values = np.full(len(model), np.nan)

    for label in parts.order:
        members = parts.members[label]
        inside = np.zeros(len(model), dtype=bool)
        inside[members] = True
        rows = matrix[members]
        block = rows[:, members].toarray()
        # Classes are processed after every class they reach, so each
        # outside successor already has its value
        outside_inf = np.isinf(values) & ~inside
        leaks_to_inf = bool(np.any(rows @ outside_inf.astype(float) > 0))
        if np.any(np.isinf(costs[members])) or leaks_to_inf:
            values[members] = INF
            continue
        if alpha == 1 and parts.closed[label]:
            values[members] = 0.0 if np.all(costs[members] == 0) else INF
            continue

        known = np.where(np.isfinite(values) & ~inside, values, 0.0)
        rhs = costs[members] + alpha * (rows @ known)
        lhs = np.eye(len(members)) - alpha * block
        values[members] = linalg.solve(lhs, rhs)

    logger.debug("Structural evaluation over %d classes", parts.count)
    return {x: float(v) for x, v in zip(model.states, values, strict=True)}


def evaluate_policy_horizon(
    model: MdpModel, policy: StationaryPolicy, alpha: float, horizon: int
) -> ValueFn:
    """T-horizon value v_{T,α}^φ, computed by T applications of the policy operator.

    Raises:
        ParameterError: If α or the horizon is out of range
    """
    check_discount(alpha)
    if horizon < 0:
        msg = f"Horizon must be nonnegative, got {horizon}"
        raise ParameterError(msg)
    policy.check_feasible(model)
    values = zero_value(model)
    for _ in range(horizon):
        values = {
            x: _policy_eta(model, values, alpha, x, policy) for x in model.states
        }
    return values


def _policy_eta(
    model: MdpModel, w: ValueFn, alpha: float, x: StateId, policy: StationaryPolicy
) -> float:
    cost = model.c(x, policy[x])
    if cost == INF:
        return INF
    return cost + ext_mul(alpha, expect_under(model.q(x, policy[x]), w))


@dataclass(frozen=True)
class RelativeValue:
    """A policy value split as v = d + ρ/(1 − α) with d(ref) = 0.

    ``rho`` equals (1 − α)v(ref); ``d`` stays bounded as α ↑ 1 on unichain
    models, so differences of values can be formed without cancellation.
    """

    alpha: float
    rho: float
    d: dict[StateId, float]
    ref: StateId

    def values(self) -> ValueFn:
        """Recombine into the absolute value function."""
        offset = self.rho / (1.0 - self.alpha)
        return {x: dx + offset for x, dx in self.d.items()}

    def min_d(self, window: Iterable[StateId] | None = None) -> float:
        """Smallest relative value over ``window`` (default: all states)."""
        keys = self.d.keys() if window is None else window
        return min(self.d[x] for x in keys)

    def relative_to_min(self, window: Iterable[StateId] | None = None) -> ValueFn:
        """v − min_window v, computed from ``d`` alone."""
        floor = self.min_d(window)
        return {x: dx - floor for x, dx in self.d.items()}

    def scaled_min(self, window: Iterable[StateId] | None = None) -> float:
        """(1 − α) min_window v, computed without dividing by 1 − α."""
        return self.rho + (1.0 - self.alpha) * self.min_d(window)


def evaluate_relative(
    model: MdpModel,
    policy: StationaryPolicy,
    alpha: float,
    ref: StateId | None = None,
) -> RelativeValue:
    """Solve (I − αP_φ)d + ρ·1 = c_φ with d(ref) = 0.

    The system stays nonsingular at α = 1 when φ induces a single recurrent
    class, in which case ρ is the gain and d a bias vector.

    Args:
        model: Finite model with finite costs under φ
        policy: Feasible stationary policy
        alpha: Discount factor in [0, 1]
        ref: Reference state; defaults to the first declared state

    Returns:
        The relative decomposition

    Raises:
        ModelError: If a cost under φ is +∞
        ParameterError: If the system is singular
    """
    check_discount(alpha)
    policy.check_feasible(model)
    costs = policy_costs(model, policy)
    if not np.all(np.isfinite(costs)):
        msg = "Relative evaluation needs finite costs under the policy"
        raise ModelError(msg)
    ref = model.states[0] if ref is None else ref
    pivot = model.index(ref)
    lhs = np.eye(len(model)) - alpha * policy_matrix(model, policy).toarray()
    lhs[:, pivot] = 1.0
    try:
        solution = linalg.solve(lhs, costs)
    except linalg.LinAlgError as exc:
        msg = f"Relative evaluation is singular at α = {alpha}: {exc}"
        raise ParameterError(msg) from exc
    d = {x: float(s) for x, s in zip(model.states, solution, strict=True)}
    rho = d[ref]
    d[ref] = 0.0
    return RelativeValue(alpha=alpha, rho=rho, d=d, ref=ref)
