"""The one-step operator η and the Bellman backup built on it."""

import logging

from avgmdp.errors import ParameterError
from avgmdp.model.extreal import INF, ExtNonnegReal, ext_mul
from avgmdp.model.models import (
    ActionId,
    ArgminSets,
    MdpModel,
    StateId,
    ValueFn,
    expect_under,
)
from avgmdp.parallel import ordered_map
from avgmdp.selection.selector import argmin_set, minimize_row

logger = logging.getLogger(__name__)


def check_discount(alpha: float) -> None:
    """Raise unless 0 ≤ α ≤ 1."""
    if not 0.0 <= alpha <= 1.0:
        msg = f"Discount factor must lie in [0, 1], got {alpha}"
        raise ParameterError(msg)


def eta(
    model: MdpModel, w: ValueFn, alpha: float, x: StateId, a: ActionId
) -> ExtNonnegReal:
    """η_w^α(x, a) = c(x, a) + α Σ_z q(z|x, a) w(z).

    With α = 0 the continuation is dropped even where w is +∞.

    Raises:
        InfeasibleActionError: If ``a`` is not in A(x)
    """
    cost = model.c(x, a)
    if cost == INF:
        return INF
    continuation = ext_mul(alpha, expect_under(model.q(x, a), w))
    return cost + continuation


def eta_row(
    model: MdpModel, w: ValueFn, alpha: float, x: StateId
) -> dict[ActionId, ExtNonnegReal]:
    """η_w^α(x, ·) over A(x) in declared order."""
    return {a: eta(model, w, alpha, x, a) for a in model.feasible(x)}


def bellman_backup(
    model: MdpModel,
    w: ValueFn,
    alpha: float,
    workers: int = 1,
    tol: float = 0.0,
) -> tuple[ValueFn, ArgminSets]:
    """Apply the Bellman operator once.

    Args:
        model: Model
        w: Value function total on the model's states
        alpha: Discount factor in [0, 1]
        workers: Threads for the per-state minimizations
        tol: Slack allowed in argmin membership; 0 means exact ties only

    Returns:
        The backed-up values and the argmin sets. At states whose backed-up
        value is +∞ the argmin set is the whole of A(x).
    """
    check_discount(alpha)

    def backup(x: StateId) -> tuple[ExtNonnegReal, tuple[ActionId, ...]]:
        row = eta_row(model, w, alpha, x)
        actions = model.feasible(x)
        best, _ = minimize_row(actions, row)
        return best, argmin_set(actions, row, best, tol)

    results = ordered_map(backup, model.states, workers)
    values = {x: best for x, (best, _) in zip(model.states, results, strict=True)}
    argmins = {x: sets for x, (_, sets) in zip(model.states, results, strict=True)}
    return values, argmins


def zero_value(model: MdpModel) -> ValueFn:
    """The function identically 0 on the model's states."""
    return dict.fromkeys(model.states, 0.0)
