"""The single-action chain built from a branch sequence, truncated to its branches."""

from typing import Final

from avgmdp.errors import ParameterError
from avgmdp.example41.params import BranchSequence
from avgmdp.model.models import MdpModel, StateId, TransitionRow

ORIGIN: Final[int] = 0
ACTION: Final[int] = 0


def branch_states(seq: BranchSequence) -> list[tuple[int, int]]:
    """States (n, k), n = 1..K, k = 1..2N(n), in branch order."""
    return [(b.n, k) for b in seq for k in range(1, 2 * b.length + 1)]


def successor(seq: BranchSequence, state: StateId) -> StateId:
    """The unique next state: 0 → 0, (n, 2N(n)) → 0, (n, k) → (n, k+1)."""
    if state == ORIGIN:
        return ORIGIN
    n, k = state
    return ORIGIN if k == 2 * seq[n].length else (n, k + 1)


def build_model(seq: BranchSequence) -> MdpModel:
    """Build the model on {0} ∪ {(n, k)} for the generated branches.

    Costs are 1 at 0, 1 − ε⁽ⁿ⁾ on the first half of branch n and 1 + ε⁽ⁿ⁾ on
    the second half, rounded to double. The infimum window is the set of
    branch heads (n, 1), where v_α attains its infimum.

    Raises:
        ParameterError: If the sequence is empty
    """
    if not len(seq):
        msg = "Cannot build a model from an empty branch sequence"
        raise ParameterError(msg)

    states: list[StateId] = [ORIGIN, *branch_states(seq)]
    cost: dict[StateId, dict[int, float]] = {ORIGIN: {ACTION: 1.0}}
    for branch in seq:
        low, high = float(1 - branch.eps), float(1 + branch.eps)
        for k in range(1, 2 * branch.length + 1):
            cost[(branch.n, k)] = {ACTION: low if k <= branch.length else high}
    transitions = {
        x: {ACTION: TransitionRow.point(successor(seq, x))} for x in states
    }
    return MdpModel(
        states=tuple(states),
        actions=dict.fromkeys(states, (ACTION,)),
        cost=cost,
        transitions=transitions,
        witness=tuple((b.n, 1) for b in seq),
        name=f"example41-{len(seq)}",
    )
