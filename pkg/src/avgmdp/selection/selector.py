"""Parametric minimization v(x) = min_{a ∈ A(x)} u(x, a) and optimal selectors.

Feasible sets are finite, so every minimum is attained. Objectives may take
+∞; states where every action has value +∞ fall outside dom(v).
"""

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from enum import Enum

from avgmdp.errors import InfeasibleActionError, ParameterError
from avgmdp.model.extreal import INF
from avgmdp.model.models import ActionId, StateId
from avgmdp.parallel import ordered_map

type Fallback = Mapping[StateId, ActionId] | Callable[[StateId], ActionId]


class SelectorCase(Enum):
    """How a total selector was obtained outside dom(v)."""

    FALLBACK = "fallback"  # caller-supplied selector on X \ dom(v)
    COUNTABLE_COMPLEMENT = "countable-complement"  # any choice is admissible
    FINITE_VALUE = "finite-value"  # dom(v) = X
    REAL_VALUED = "real-valued"  # u finite on all of Gr(A)


@dataclass(frozen=True)
class ParametricObjective:
    """Objective u on the graph of a finite-valued set map A."""

    states: tuple[StateId, ...]
    feasible: Mapping[StateId, tuple[ActionId, ...]]
    value: Mapping[StateId, Mapping[ActionId, float]]

    def check(self) -> None:
        """Validate totality and the value range.

        Raises:
            ParameterError: If A(x) is empty, u is undefined somewhere on the
                graph, or u takes −∞ or NaN
        """
        for x in self.states:
            actions = self.feasible.get(x, ())
            if not actions:
                msg = f"Feasible set is empty at state {x!r}"
                raise ParameterError(msg)
            row = self.value.get(x, {})
            for a in actions:
                if a not in row:
                    msg = f"Objective undefined at ({x!r}, {a!r})"
                    raise ParameterError(msg)
                u = row[a]
                if math.isnan(u) or u == -INF:
                    msg = f"Objective takes {u} at ({x!r}, {a!r})"
                    raise ParameterError(msg)


@dataclass(frozen=True)
class SelectionResult:
    """Value function, its domain and an optimal selector on the domain."""

    objective: ParametricObjective
    v: dict[StateId, float]
    dom_v: tuple[StateId, ...]
    selector: dict[StateId, ActionId]
    total_selector: dict[StateId, ActionId] | None = None
    case: SelectorCase | None = None


def minimize_row(
    actions: tuple[ActionId, ...], values: Mapping[ActionId, float]
) -> tuple[float, ActionId]:
    """Minimum over a finite feasible list, first minimizer in declared order."""
    best_action = actions[0]
    best = values[best_action]
    for a in actions[1:]:
        if values[a] < best:
            best, best_action = values[a], a
    return best, best_action


def argmin_set(
    actions: tuple[ActionId, ...],
    values: Mapping[ActionId, float],
    minimum: float,
    tol: float = 0.0,
) -> tuple[ActionId, ...]:
    """Actions whose value is within ``tol`` of ``minimum``.

    When the minimum is +∞ every action is returned.
    """
    if minimum == INF:
        return actions
    return tuple(a for a in actions if values[a] <= minimum + tol)


def parametric_min(obj: ParametricObjective, workers: int = 1) -> SelectionResult:
    """Compute v, dom(v) and an optimal selector on dom(v).

    Args:
        obj: Objective to minimize
        workers: Threads used for the per-state minimizations

    Returns:
        Result without a total selector

    Raises:
        ParameterError: If the objective is invalid
    """
    obj.check()
    rows = ordered_map(
        lambda x: minimize_row(obj.feasible[x], obj.value[x]), obj.states, workers
    )
    v = {x: best for x, (best, _) in zip(obj.states, rows, strict=True)}
    dom_v = tuple(x for x in obj.states if v[x] < INF)
    selector = {
        x: a for x, (best, a) in zip(obj.states, rows, strict=True) if best < INF
    }
    return SelectionResult(objective=obj, v=v, dom_v=dom_v, selector=selector)


def total_selector(
    result: SelectionResult, fallback: Fallback | None = None
) -> SelectionResult:
    """Extend the selector to every state.

    Inside dom(v) the optimal selector is kept. Outside it ``fallback`` is
    used; without one, the first feasible action is taken, which is
    admissible because the complement of dom(v) in a finite state set is
    finite.

    Args:
        result: Output of ``parametric_min``
        fallback: Optional choice on the states outside dom(v)

    Returns:
        Copy of ``result`` with ``total_selector`` and ``case`` set

    Raises:
        InfeasibleActionError: If the fallback is infeasible at a state where
            it is consulted
    """
    obj = result.objective
    if len(result.dom_v) == len(obj.states):
        real_valued = all(
            obj.value[x][a] < INF for x in obj.states for a in obj.feasible[x]
        )
        case = SelectorCase.REAL_VALUED if real_valued else SelectorCase.FINITE_VALUE
        return _with_total(result, dict(result.selector), case)

    total = dict(result.selector)
    case = (
        SelectorCase.COUNTABLE_COMPLEMENT
        if fallback is None
        else SelectorCase.FALLBACK
    )
    for x in obj.states:
        if x in total:
            continue
        if fallback is None:
            total[x] = obj.feasible[x][0]
            continue
        choice = fallback[x] if isinstance(fallback, Mapping) else fallback(x)
        if choice not in obj.feasible[x]:
            msg = f"Fallback action {choice!r} is infeasible at state {x!r}"
            raise InfeasibleActionError(msg)
        total[x] = choice
    return _with_total(result, {x: total[x] for x in obj.states}, case)


def _with_total(
    result: SelectionResult, total: dict[StateId, ActionId], case: SelectorCase
) -> SelectionResult:
    return SelectionResult(
        objective=result.objective,
        v=result.v,
        dom_v=result.dom_v,
        selector=result.selector,
        total_selector=total,
        case=case,
    )
