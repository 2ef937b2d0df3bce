"""Finite-horizon backward induction and infinite-horizon value iteration."""

import logging
import math
from dataclasses import dataclass

from avgmdp.dp.evaluation import evaluate_policy
from avgmdp.dp.operators import bellman_backup, check_discount, eta_row, zero_value
from avgmdp.errors import ConvergenceError, ParameterError
from avgmdp.model.extreal import INF
from avgmdp.model.models import (
    ArgminSets,
    MarkovPolicy,
    MdpModel,
    StateId,
    StationaryPolicy,
    ValueFn,
)
from avgmdp.parallel import ordered_map
from avgmdp.selection.selector import argmin_set, minimize_row

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SupNormTolerance:
    """Stop once the iterate is certified within ``eps`` of v_α."""

    eps: float


@dataclass(frozen=True)
class FixedIterations:
    """Apply the Bellman operator exactly ``count`` times."""

    count: int


type StopRule = SupNormTolerance | FixedIterations


@dataclass(frozen=True)
class FiniteHorizonResult:
    """Values v_{0,α}, ..., v_{T,α}, argmin sets A_{t,α} and a T-optimal policy."""

    values: list[ValueFn]
    argmins: list[ArgminSets]
    policy: MarkovPolicy


@dataclass(frozen=True)
class InfiniteHorizonResult:
    """Value-iteration outcome.

    Attributes:
        values: Final iterate
        iterations: Number of Bellman backups applied
        residual: sup over finite-valued states of |v − Tv|
        monotone: Whether every iterate dominated its predecessor pointwise
    """

    values: ValueFn
    iterations: int
    residual: float
    monotone: bool


@dataclass(frozen=True)
class DiscountedSolution:
    """Optimal discounted values with a stationary policy attaining them."""

    alpha: float
    values: ValueFn
    policy: StationaryPolicy
    argmins: ArgminSets
    iterations: int
    residual: float
    certified: bool


def finite_horizon(
    model: MdpModel, alpha: float, horizon: int, workers: int = 1
) -> FiniteHorizonResult:
    """Backward induction over ``horizon`` epochs.

    ``values[t]`` is the optimal t-horizon value. The decision rule of epoch
    T−1−t takes the first action of A_{t,α}(x).

    Raises:
        ParameterError: If the horizon is not positive or α is out of range
    """
    check_discount(alpha)
    if horizon < 1:
        msg = f"Horizon must be at least 1, got {horizon}"
        raise ParameterError(msg)

    values = [zero_value(model)]
    argmins: list[ArgminSets] = []
    for _ in range(horizon):
        backed, sets = bellman_backup(model, values[-1], alpha, workers)
        values.append(backed)
        argmins.append(sets)

    epochs = tuple(
        StationaryPolicy({x: argmins[horizon - 1 - e][x][0] for x in model.states})
        for e in range(horizon)
    )
    return FiniteHorizonResult(
        values=values, argmins=argmins, policy=MarkovPolicy(epochs)
    )


def _sup_change(old: ValueFn, new: ValueFn) -> float:
    """sup |new − old| over states where both are finite."""
    diffs = [
        abs(new[x] - old[x]) for x in new if new[x] != INF and old[x] != INF
    ]
    return max(diffs, default=0.0)


def stop_threshold(eps: float, alpha: float) -> float:
    """Change below which value iteration is within ``eps`` of v_α."""
    if alpha == 0:
        return INF
    return eps * (1.0 - alpha) / (2.0 * alpha)


def infinite_horizon(
    model: MdpModel,
    alpha: float,
    mode: StopRule,
    *,
    workers: int = 1,
    initial: ValueFn | None = None,
    max_iterations: int = 10_000_000,
) -> InfiniteHorizonResult:
    """Value iteration v_{t+1,α} = T v_{t,α} from v_{0,α} ≡ 0.

    Args:
        model: Finite model
        alpha: Discount factor
        mode: ``SupNormTolerance`` (needs α < 1 and finite costs) or
            ``FixedIterations``
        workers: Threads per backup
        initial: Start from this function instead of 0; it must satisfy
            initial ≤ T(initial) ≤ v_α for the iterates to stay monotone
        max_iterations: Guard for ``SupNormTolerance``

    Returns:
        The final iterate with its residual

    Raises:
        ParameterError: If the sup-norm rule is requested where no
            contraction bound exists
        ConvergenceError: If the guard is hit
    """
    check_discount(alpha)
    if isinstance(mode, SupNormTolerance):
        if alpha >= 1 or not model.has_bounded_costs:
            msg = (
                "Sup-norm stopping needs α < 1 and finite costs; "
                "use FixedIterations or structural policy evaluation"
            )
            raise ParameterError(msg)
        if mode.eps <= 0:
            msg = f"Tolerance must be positive, got {mode.eps}"
            raise ParameterError(msg)
        threshold = stop_threshold(mode.eps, alpha)
        budget = max_iterations
    else:
        if mode.count < 0:
            msg = f"Iteration count must be nonnegative, got {mode.count}"
            raise ParameterError(msg)
        threshold = -1.0
        budget = mode.count

    values = dict(initial) if initial is not None else zero_value(model)
    monotone = True
    iterations = 0
    while iterations < budget:
        backed, _ = bellman_backup(model, values, alpha, workers)
        monotone = monotone and all(backed[x] >= values[x] for x in model.states)
        change = _sup_change(values, backed)
        values = backed
        iterations += 1
        if iterations % 10_000 == 0:
            logger.debug("Iteration %d: sup change %.3e", iterations, change)
        if change <= threshold:
            break
    else:
        if isinstance(mode, SupNormTolerance):
            msg = f"Value iteration did not reach {mode.eps} in {budget} iterations"
            raise ConvergenceError(msg)

    after, _ = bellman_backup(model, values, alpha, workers)
    residual = _sup_change(values, after)
    logger.info(
        "Value iteration at α=%s: %d iterations, residual %.3e",
        alpha,
        iterations,
        residual,
    )
    return InfiniteHorizonResult(
        values=values, iterations=iterations, residual=residual, monotone=monotone
    )


def stationary_from_value(
    model: MdpModel,
    values: ValueFn,
    alpha: float,
    tol: float = 1e-9,
    workers: int = 1,
) -> tuple[StationaryPolicy, ArgminSets]:
    """Greedy stationary policy for a (near) fixed point of the Bellman operator.

    Args:
        model: Finite model
        values: Candidate v_α
        alpha: Discount factor
        tol: Allowed Bellman residual, also the argmin-set slack
        workers: Threads for the per-state scans

    Returns:
        The policy choosing the first member of A_α(x) in declared order, and
        the sets A_α(x) up to ``tol``

    Raises:
        ConvergenceError: If the residual exceeds ``tol``; names the worst state
    """
    check_discount(alpha)

    def scan(x: StateId) -> tuple[float, tuple[object, ...]]:
        row = eta_row(model, values, alpha, x)
        actions = model.feasible(x)
        best, _ = minimize_row(actions, row)
        return best, argmin_set(actions, row, best, tol)

    scans = ordered_map(scan, model.states, workers)
    worst_state: StateId | None = None
    worst = 0.0
    for x, (best, _) in zip(model.states, scans, strict=True):
        if best == INF and values[x] == INF:
            continue
        gap = abs(best - values[x]) if math.isfinite(best) else INF
        if gap > worst:
            worst, worst_state = gap, x
    if worst > tol:
        msg = f"Bellman residual {worst:.3e} at state {worst_state!r} exceeds {tol:.3e}"
        raise ConvergenceError(msg)

    policy = StationaryPolicy(
        {x: sets[0] for x, (_, sets) in zip(model.states, scans, strict=True)}
    )
    argmins = {x: sets for x, (_, sets) in zip(model.states, scans, strict=True)}
    return policy, argmins


def solve_discounted(
    model: MdpModel,
    alpha: float,
    tol: float = 1e-10,
    *,
    workers: int = 1,
    initial: ValueFn | None = None,
    iterations: int = 100_000,
) -> DiscountedSolution:
    """Optimal α-discounted values and a stationary optimal policy.

    With α < 1 and finite costs, value iteration runs to the certified
    tolerance, the greedy policy is extracted and its exact value is
    reported. Otherwise a fixed budget of ``iterations`` backups is applied
    and the result is marked uncertified.

    Args:
        model: Finite model
        alpha: Discount factor
        tol: Target accuracy of the values
        workers: Threads per backup
        initial: Warm start, see ``infinite_horizon``
        iterations: Budget when no contraction bound exists

    Returns:
        The solution
    """
    certified = alpha < 1 and model.has_bounded_costs
    mode: StopRule = SupNormTolerance(tol) if certified else FixedIterations(iterations)
    run = infinite_horizon(model, alpha, mode, workers=workers, initial=initial)
    if not certified:
        _, argmins = bellman_backup(model, run.values, alpha, workers)
        policy = StationaryPolicy({x: argmins[x][0] for x in model.states})
        return DiscountedSolution(
            alpha=alpha,
            values=run.values,
            policy=policy,
            argmins=argmins,
            iterations=run.iterations,
            residual=run.residual,
            certified=False,
        )

    # The residual after stopping is at most eps(1−α)/2, well inside 2·tol
    policy, argmins = stationary_from_value(
        model, run.values, alpha, tol=max(2.0 * tol, run.residual), workers=workers
    )
    exact = evaluate_policy(model, policy, alpha)
    return DiscountedSolution(
        alpha=alpha,
        values=exact,
        policy=policy,
        argmins=argmins,
        iterations=run.iterations,
        residual=run.residual,
        certified=True,
    )
