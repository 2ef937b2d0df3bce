"""JSON model interchange.

Document layout (version 1)::

    {
      "version": 1,
      "states": [id, ...],
      "witness": [id, ...],            # optional
      "actions": {state: [action, ...]},
      "cost": {state: {action: number | "inf"}},
      "transitions": {state: {action: [[state, prob], ...]}}
    }

Identifiers are JSON scalars or arrays; arrays become tuples. Object keys are
the identifier itself for strings and its compact JSON text otherwise, so the
state ``[1, 2]`` is keyed as ``"[1,2]"`` and the state ``0`` as ``"0"``.
"""

import json
import logging
from collections.abc import Hashable, Iterable, Mapping
from pathlib import Path
from typing import Any, Final

from avgmdp.errors import ModelError
from avgmdp.model.extreal import INF, INF_LITERAL, ext
from avgmdp.model.models import MdpModel, TransitionRow

logger = logging.getLogger(__name__)

FORMAT_VERSION: Final[int] = 1


def _hashable(raw: Any) -> Hashable:  # noqa: ANN401
    """Turn decoded JSON into an identifier (lists become tuples)."""
    if isinstance(raw, list):
        return tuple(_hashable(item) for item in raw)
    if isinstance(raw, dict):
        msg = f"Identifiers cannot be JSON objects: {raw!r}"
        raise ModelError(msg)
    return raw


def _plain(ident: Hashable) -> Any:  # noqa: ANN401
    """Turn an identifier into JSON-encodable data (tuples become lists)."""
    if isinstance(ident, tuple):
        return [_plain(item) for item in ident]
    return ident


def key_of(ident: Hashable) -> str:
    """Object key used for an identifier."""
    if isinstance(ident, str):
        return ident
    return json.dumps(_plain(ident), separators=(",", ":"))


class _KeyTable:
    """Resolves object keys back to declared identifiers."""

    def __init__(self, idents: Iterable[Hashable], what: str) -> None:
        self._by_key = {key_of(i): i for i in idents}
        self._what = what

    def resolve(self, key: str) -> Hashable:
        if key in self._by_key:
            return self._by_key[key]
        try:
            canonical = key_of(_hashable(json.loads(key)))
        except (json.JSONDecodeError, ModelError):
            canonical = None
        if canonical is not None and canonical in self._by_key:
            return self._by_key[canonical]
        msg = f"Unknown {self._what} key {key!r}"
        raise ModelError(msg)


def _field(doc: Mapping[str, Any], name: str) -> Any:  # noqa: ANN401
    if name not in doc:
        msg = f"Model document is missing field {name!r}"
        raise ModelError(msg)
    return doc[name]


def _as_list(raw: object, where: str) -> list[Any]:
    if not isinstance(raw, list):
        msg = f"{where} must be a JSON array, got {type(raw).__name__}"
        raise ModelError(msg)
    return raw


def _as_object(raw: object, where: str) -> dict[str, Any]:
    if not isinstance(raw, dict):
        msg = f"{where} must be a JSON object, got {type(raw).__name__}"
        raise ModelError(msg)
    return raw


def _number(raw: object, where: str) -> float:
    """A JSON number as a float; the ``"inf"`` literal is +∞.

    The sign is not checked here; ``CostValidator`` reports negative costs.
    """
    if isinstance(raw, str):
        try:
            return ext(raw)
        except ValueError as e:
            msg = f"Bad {where}: {e}"
            raise ModelError(msg) from e
    if isinstance(raw, bool) or not isinstance(raw, int | float):
        msg = f"Bad {where}: expected a number, got {raw!r}"
        raise ModelError(msg)
    return float(raw)


def _row(raw: object, where: str) -> TransitionRow:
    pairs: list[tuple[Hashable, float]] = []
    for pair in _as_list(raw, where):
        if not isinstance(pair, list) or len(pair) != 2:
            msg = f"{where} entries must be [state, probability] pairs, got {pair!r}"
            raise ModelError(msg)
        z, p = pair
        pairs.append((_hashable(z), _number(p, f"probability in {where}")))
    return TransitionRow.of(pairs)


def model_from_dict(doc: Mapping[str, Any], name: str = "model") -> MdpModel:
    """Build a model from a decoded JSON document.

    Costs are read as given; their range is checked by ``validate_model``.

    Args:
        doc: Decoded document
        name: Name given to the model

    Returns:
        The model (not yet validated)

    Raises:
        ModelError: If a field is missing or malformed
    """
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        msg = f"Unsupported model format version {version!r}"
        raise ModelError(msg)

    states = tuple(_hashable(s) for s in _as_list(_field(doc, "states"), "states"))
    state_keys = _KeyTable(states, "state")

    actions: dict[Hashable, tuple[Hashable, ...]] = {}
    for key, acts in _as_object(_field(doc, "actions"), "actions").items():
        where = f"actions[{key!r}]"
        actions[state_keys.resolve(key)] = tuple(
            _hashable(a) for a in _as_list(acts, where)
        )

    cost: dict[Hashable, dict[Hashable, float]] = {}
    for key, row in _as_object(_field(doc, "cost"), "cost").items():
        x = state_keys.resolve(key)
        action_keys = _KeyTable(actions.get(x, ()), f"action of state {key!r}")
        cost[x] = {
            action_keys.resolve(a): _number(v, f"cost at state {key!r}")
            for a, v in _as_object(row, f"cost[{key!r}]").items()
        }

    transitions: dict[Hashable, dict[Hashable, TransitionRow]] = {}
    for key, rows in _as_object(_field(doc, "transitions"), "transitions").items():
        x = state_keys.resolve(key)
        action_keys = _KeyTable(actions.get(x, ()), f"action of state {key!r}")
        transitions[x] = {
            action_keys.resolve(a): _row(pairs, f"transitions[{key!r}][{a!r}]")
            for a, pairs in _as_object(rows, f"transitions[{key!r}]").items()
        }

    witness = doc.get("witness")
    if witness is not None:
        witness = tuple(_hashable(w) for w in _as_list(witness, "witness"))
    return MdpModel(
        states=states,
        actions=actions,
        cost=cost,
        transitions=transitions,
        witness=witness,
        name=name,
    )


def model_to_dict(model: MdpModel) -> dict[str, Any]:
    """Encode a model as a JSON-ready document."""
    doc: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "states": [_plain(x) for x in model.states],
        "actions": {
            key_of(x): [_plain(a) for a in model.feasible(x)] for x in model.states
        },
        "cost": {
            key_of(x): {
                key_of(a): INF_LITERAL if model.cost[x][a] == INF else model.cost[x][a]
                for a in model.feasible(x)
            }
            for x in model.states
        },
        "transitions": {
            key_of(x): {
                key_of(a): [[_plain(z), p] for z, p in model.transitions[x][a]]
                for a in model.feasible(x)
            }
            for x in model.states
        },
    }
    if model.witness is not None:
        doc["witness"] = [_plain(w) for w in model.witness]
    return doc


def load_model(path: Path) -> MdpModel:
    """Read a model file.

    Raises:
        ModelError: If the file is unreadable or not a valid document
    """
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        msg = f"Cannot read model file {path}: {e}"
        raise ModelError(msg) from e
    if not isinstance(doc, dict):
        msg = f"Model file {path} does not contain a JSON object"
        raise ModelError(msg)
    logger.debug("Loaded model document from %s", path)
    try:
        return model_from_dict(doc, name=path.stem)
    except (TypeError, AttributeError) as e:
        msg = f"Malformed model file {path}: {e}"
        raise ModelError(msg) from e


def dump_model(model: MdpModel, path: Path) -> None:
    """Write a model file."""
    path.write_text(
        json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8"
    )
