"""Data models for countable-state MDPs with finite action sets."""

import math
from collections.abc import Hashable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

from avgmdp.errors import InfeasibleActionError, ModelError
from avgmdp.model.extreal import ExtNonnegReal, ext_mul, ext_sum

type StateId = Hashable
type ActionId = Hashable
type ValueFn = dict[StateId, ExtNonnegReal]
type ArgminSets = dict[StateId, tuple[ActionId, ...]]


@dataclass(frozen=True)
class TransitionRow:
    """Finite-support distribution q(·|x, a), in declared destination order."""

    entries: tuple[tuple[StateId, float], ...]

    @classmethod
    def of(cls, pairs: Sequence[Sequence[object]]) -> "TransitionRow":
        """Build a row from ``[(state, probability), ...]`` pairs."""
        return cls(tuple((state, float(prob)) for state, prob in pairs))

    @classmethod
    def point(cls, state: StateId) -> "TransitionRow":
        """Deterministic transition to ``state``."""
        return cls(((state, 1.0),))

    def __iter__(self) -> Iterator[tuple[StateId, float]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def destinations(self) -> tuple[StateId, ...]:
        """Destination states in declared order."""
        return tuple(state for state, _ in self.entries)

    @property
    def total(self) -> float:
        """Sum of the probabilities."""
        return math.fsum(prob for _, prob in self.entries)

    def normalized(self) -> "TransitionRow":
        """Return a copy whose probabilities sum to one.

        Rows are only renormalized on explicit request.

        Raises:
            ModelError: If the row has no positive mass
        """
        total = self.total
        if total <= 0:
            msg = "Cannot normalize a transition row without positive mass"
            raise ModelError(msg)
        return TransitionRow(tuple((s, p / total) for s, p in self.entries))


@dataclass(frozen=True)
class MdpModel:
    """The tuple (X, A, {A(x)}, c, q) restricted to a finite state window.

    ``states`` is the declared window. Every transition must stay inside it,
    which makes the window closed. ``witness`` is the subset over which the
    infimum of a value function is taken; ``None`` means the whole window.
    """

    states: tuple[StateId, ...]
    actions: Mapping[StateId, tuple[ActionId, ...]]
    cost: Mapping[StateId, Mapping[ActionId, ExtNonnegReal]]
    transitions: Mapping[StateId, Mapping[ActionId, TransitionRow]]
    witness: tuple[StateId, ...] | None = None
    name: str = "model"
    _index: Mapping[StateId, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {state: i for i, state in enumerate(self.states)}
        object.__setattr__(self, "_index", MappingProxyType(index))

    def __contains__(self, state: object) -> bool:
        return state in self._index

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: StateId) -> int:
        """Position of ``state`` in the declared window.

        Raises:
            ModelError: If the state is not in the window
        """
        try:
            return self._index[state]
        except KeyError:
            msg = f"State {state!r} is not in the model's state window"
            raise ModelError(msg) from None

    def feasible(self, state: StateId) -> tuple[ActionId, ...]:
        """A(x) in declared order."""
        try:
            return self.actions[state]
        except KeyError:
            msg = f"State {state!r} has no declared actions"
            raise ModelError(msg) from None

    def check_action(self, state: StateId, action: ActionId) -> None:
        """Raise unless ``action`` belongs to A(state)."""
        if action not in self.feasible(state):
            msg = f"Action {action!r} is not feasible at state {state!r}"
            raise InfeasibleActionError(msg)

    def c(self, state: StateId, action: ActionId) -> ExtNonnegReal:
        """One-step cost c(x, a)."""
        self.check_action(state, action)
        return self.cost[state][action]

    def q(self, state: StateId, action: ActionId) -> TransitionRow:
        """Transition row q(·|x, a)."""
        self.check_action(state, action)
        return self.transitions[state][action]

    @property
    def infimum_window(self) -> tuple[StateId, ...]:
        """States over which m_α = inf v_α is computed."""
        return self.witness if self.witness is not None else self.states

    @property
    def policy_count(self) -> int:
        """Number of deterministic stationary policies."""
        return math.prod(len(self.feasible(x)) for x in self.states)

    @property
    def has_bounded_costs(self) -> bool:
        """True if every cost on Gr(A) is finite."""
        return all(
            math.isfinite(value)
            for row in self.cost.values()
            for value in row.values()
        )


@dataclass(frozen=True)
class StationaryPolicy:
    """A selector φ with φ(x) ∈ A(x)."""

    choice: Mapping[StateId, ActionId]

    def __getitem__(self, state: StateId) -> ActionId:
        return self.choice[state]

    def check_feasible(self, model: MdpModel) -> None:
        """Raise unless φ(x) ∈ A(x) on every state of the model.

        Raises:
            ModelError: If the policy is undefined at some state
            InfeasibleActionError: If some choice is infeasible
        """
        for state in model.states:
            if state not in self.choice:
                msg = f"Policy is undefined at state {state!r}"
                raise ModelError(msg)
            model.check_action(state, self.choice[state])

    @classmethod
    def first_actions(cls, model: MdpModel) -> "StationaryPolicy":
        """Policy choosing the first declared action everywhere."""
        return cls({x: model.feasible(x)[0] for x in model.states})


@dataclass(frozen=True)
class MarkovPolicy:
    """Decision rules (φ_0, ..., φ_{T-1}), one per epoch."""

    epochs: tuple[StationaryPolicy, ...]

    def __len__(self) -> int:
        return len(self.epochs)

    def at(self, epoch: int) -> StationaryPolicy:
        """Decision rule used at epoch ``epoch``."""
        return self.epochs[epoch]

    def check_feasible(self, model: MdpModel) -> None:
        """Raise unless every epoch map is feasible."""
        for rule in self.epochs:
            rule.check_feasible(model)


def expect_under(row: TransitionRow, w: Mapping[StateId, ExtNonnegReal]) -> float:
    """Integral of ``w`` against q(·|x, a).

    Uses 0·∞ = 0; the result is +∞ iff some destination with positive mass
    has w = +∞.

    Args:
        row: Transition row
        w: Value function defined on every destination of the row

    Returns:
        Σ p_i · w(z_i)

    Raises:
        ModelError: If ``w`` is undefined at a destination
    """
    terms: list[float] = []
    for z, p in row:
        if z not in w:
            msg = f"Value function is undefined at state {z!r}"
            raise ModelError(msg)
        terms.append(ext_mul(p, w[z]))
    return ext_sum(terms)
