"""Small model factories: random test models and textbook chains."""

from collections.abc import Sequence

import numpy as np

from avgmdp.errors import ParameterError
from avgmdp.model.models import MdpModel, TransitionRow


def random_model(
    rng: np.random.Generator,
    n_states: int,
    n_actions: int,
    *,
    max_cost: float = 10.0,
    unichain: bool = False,
    variable_actions: bool = False,
) -> MdpModel:
    """Draw a random finite model with integer state and action ids.

    Each row has random support of size 1..n_states with Dirichlet weights.

    Args:
        rng: Source of randomness
        n_states: Number of states
        n_actions: Number of actions per state (maximum if variable)
        max_cost: Costs are uniform on [0, max_cost]
        unichain: If True every row puts positive mass on state 0, so every
            stationary policy induces a single recurrent class
        variable_actions: If True each state gets 1..n_actions actions

    Returns:
        A valid model

    Raises:
        ParameterError: If a size is not positive
    """
    if n_states < 1 or n_actions < 1:
        msg = f"Need positive sizes, got {n_states} states, {n_actions} actions"
        raise ParameterError(msg)

    states = tuple(range(n_states))
    actions: dict[int, tuple[int, ...]] = {}
    cost: dict[int, dict[int, float]] = {}
    transitions: dict[int, dict[int, TransitionRow]] = {}
    for x in states:
        count = int(rng.integers(1, n_actions + 1)) if variable_actions else n_actions
        actions[x] = tuple(range(count))
        cost[x] = {a: float(rng.uniform(0.0, max_cost)) for a in actions[x]}
        transitions[x] = {a: _random_row(rng, n_states, unichain) for a in actions[x]}
    return MdpModel(
        states=states,
        actions=actions,
        cost=cost,
        transitions=transitions,
        name=f"random-{n_states}x{n_actions}",
    )


def _random_row(
    rng: np.random.Generator, n_states: int, unichain: bool
) -> TransitionRow:
    """Random distribution with sorted support."""
    size = int(rng.integers(1, n_states + 1))
    support = sorted(int(z) for z in rng.choice(n_states, size=size, replace=False))
    if unichain and 0 not in support:
        support = [0, *support]
    weights = rng.dirichlet(np.ones(len(support)))
    # Absorb rounding so the row sums to 1 well inside the 1e-12 tolerance
    weights[-1] = 1.0 - float(np.sum(weights[:-1]))
    if weights[-1] <= 0:
        weights = np.full(len(support), 1.0 / len(support))
    return TransitionRow(tuple(zip(support, (float(w) for w in weights), strict=True)))


def absorbing_model(cost: float = 1.0) -> MdpModel:
    """One state, one action, self-loop with the given cost."""
    return MdpModel(
        states=(0,),
        actions={0: (0,)},
        cost={0: {0: cost}},
        transitions={0: {0: TransitionRow.point(0)}},
        name="absorbing",
    )


def cycle_model(costs: Sequence[float]) -> MdpModel:
    """Deterministic single-action cycle 0 → 1 → ... → 0 with given costs."""
    n = len(costs)
    if n < 1:
        msg = "A cycle needs at least one state"
        raise ParameterError(msg)
    states = tuple(range(n))
    return MdpModel(
        states=states,
        actions={x: (0,) for x in states},
        cost={x: {0: float(costs[x])} for x in states},
        transitions={x: {0: TransitionRow.point((x + 1) % n)} for x in states},
        name=f"cycle-{n}",
    )
