"""Structure-preserving model rewrites."""

import logging
from typing import Final

from avgmdp.model.extreal import INF
from avgmdp.model.models import MdpModel, StateId, TransitionRow

logger = logging.getLogger(__name__)

SINK: Final[str] = "x*"
SINK_ACTION: Final[str] = "a*"


def merge_infinite_states(model: MdpModel, sink: StateId = SINK) -> MdpModel:
    """Collapse every state with only +∞ costs into one absorbing state.

    The merged state has the single action ``a*`` with cost +∞ and a
    self-loop. Transitions into any merged state are redirected to the sink,
    adding up probabilities. Values of all other states are unchanged.

    Args:
        model: Model to rewrite
        sink: Identifier of the merged state; must not clash with a kept state

    Returns:
        The rewritten model, or ``model`` itself if no state qualifies
    """
    doomed = {
        x
        for x in model.states
        if all(model.cost[x][a] == INF for a in model.feasible(x))
    }
    if not doomed:
        return model
    if sink in model and sink not in doomed:
        msg = f"Sink identifier {sink!r} clashes with a kept state"
        raise ValueError(msg)

    kept = tuple(x for x in model.states if x not in doomed)
    states = (*kept, sink)
    actions = {x: model.feasible(x) for x in kept}
    actions[sink] = (SINK_ACTION,)
    cost = {x: dict(model.cost[x]) for x in kept}
    cost[sink] = {SINK_ACTION: INF}
    transitions: dict[StateId, dict[object, TransitionRow]] = {}
    for x in kept:
        transitions[x] = {
            a: _redirect(model.transitions[x][a], doomed, sink)
            for a in model.feasible(x)
        }
    transitions[sink] = {SINK_ACTION: TransitionRow.point(sink)}

    witness = None
    if model.witness is not None:
        witness = tuple(w for w in model.witness if w not in doomed) or (sink,)
    logger.info("Merged %d all-infinite states into %r", len(doomed), sink)
    return MdpModel(
        states=states,
        actions=actions,
        cost=cost,
        transitions=transitions,
        witness=witness,
        name=f"{model.name}-merged",
    )


def _redirect(
    row: TransitionRow, doomed: set[StateId], sink: StateId
) -> TransitionRow:
    """Send the mass of merged destinations to the sink, keeping order."""
    entries: list[tuple[StateId, float]] = []
    sink_mass = 0.0
    sink_slot: int | None = None
    for z, p in row:
        if z in doomed:
            sink_mass += p
            if sink_slot is None:
                sink_slot = len(entries)
                entries.append((sink, 0.0))
        else:
            entries.append((z, p))
    if sink_slot is not None:
        entries[sink_slot] = (sink, sink_mass)
    return TransitionRow(tuple(entries))
