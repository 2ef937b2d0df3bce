"""Tests for JSON model interchange and model rewrites."""

import json
from pathlib import Path

import numpy as np
import pytest

from avgmdp.dp import evaluate_policy
from avgmdp.errors import ModelError
from avgmdp.model import (
    INF,
    DefectKind,
    MdpModel,
    StationaryPolicy,
    dump_model,
    load_model,
    merge_infinite_states,
    model_from_dict,
    model_to_dict,
    random_model,
    validate_model,
)
from avgmdp.model.io import key_of
from avgmdp.model.transforms import SINK, SINK_ACTION


class TestKeys:
    """Tests for identifier keys."""

    def test_string_is_its_own_key(self) -> None:
        """Test that string identifiers are used verbatim."""
        assert key_of("s") == "s"

    def test_tuple_key_is_compact_json(self) -> None:
        """Test that tuples are keyed as compact JSON arrays."""
        assert key_of((1, 2)) == "[1,2]"
        assert key_of(0) == "0"


class TestModelDocuments:
    """Tests for reading and writing model documents."""

    def test_reads_inf_and_tuple_states(self) -> None:
        """Test that "inf" costs and array identifiers are decoded."""
        doc = {
            "version": 1,
            "states": [0, [1, 1]],
            "actions": {"0": ["go"], "[1, 1]": ["stop"]},
            "cost": {"0": {"go": 1}, "[1,1]": {"stop": "inf"}},
            "transitions": {
                "0": {"go": [[[1, 1], 1.0]]},
                "[1,1]": {"stop": [[[1, 1], 1.0]]},
            },
        }
        model = model_from_dict(doc)
        assert model.states == (0, (1, 1))
        assert model.c((1, 1), "stop") == INF
        assert model.q(0, "go").destinations == ((1, 1),)
        assert validate_model(model).accepted

    def test_missing_field(self) -> None:
        """Test that a document without transitions is refused."""
        with pytest.raises(ModelError, match="transitions"):
            model_from_dict({"states": [0], "actions": {"0": ["a"]}, "cost": {}})

    def test_unknown_state_key(self) -> None:
        """Test that keys naming undeclared states are refused."""
        doc = {
            "states": [0],
            "actions": {"1": ["a"]},
            "cost": {},
            "transitions": {},
        }
        with pytest.raises(ModelError, match="Unknown state key"):
            model_from_dict(doc)

    def test_negative_cost_reaches_validator(self) -> None:
        """Test that a negative cost loads and is reported by validation."""
        doc = {
            "states": [0],
            "actions": {"0": ["a"]},
            "cost": {"0": {"a": -2}},
            "transitions": {"0": {"a": [[0, 1.0]]}},
        }
        model = model_from_dict(doc)
        assert model.c(0, "a") == -2.0
        (defect,) = validate_model(model).of_kind(DefectKind.NEGATIVE_COST)
        assert (defect.state, defect.action) == (0, "a")

    @pytest.mark.parametrize(
        ("changes", "field"),
        [
            ({"cost": {"0": {"a": "cheap"}}}, "cost"),
            ({"cost": {"0": {"a": True}}}, "cost"),
            ({"states": 3}, "states"),
            ({"actions": ["a"]}, "actions"),
            ({"actions": {"0": "a"}}, "actions"),
            ({"cost": {"0": 5}}, "cost"),
            ({"transitions": {"0": {"a": [[0]]}}}, "transitions"),
            ({"transitions": {"0": {"a": 1.0}}}, "transitions"),
            ({"transitions": {"0": {"a": [[0, "one"]]}}}, "probability"),
            ({"witness": 0}, "witness"),
        ],
    )
    def test_malformed_shape(self, changes: dict[str, object], field: str) -> None:
        """Test that a wrongly shaped field is refused with its name."""
        doc: dict[str, object] = {
            "states": [0],
            "actions": {"0": ["a"]},
            "cost": {"0": {"a": 1.0}},
            "transitions": {"0": {"a": [[0, 1.0]]}},
            **changes,
        }
        with pytest.raises(ModelError, match=field):
            model_from_dict(doc)

    def test_unsupported_version(self) -> None:
        """Test that other format versions are refused."""
        with pytest.raises(ModelError, match="version"):
            model_from_dict({"version": 2})

    def test_file_round_trip(self, tmp_path: Path, rng: np.random.Generator) -> None:
        """Test that dumping and loading preserves the model within 1e-15."""
        model = random_model(rng, 4, 3)
        path = tmp_path / "model.json"
        dump_model(model, path)
        loaded = load_model(path)
        assert loaded.name == "model"
        assert loaded.states == model.states
        for x in model.states:
            assert loaded.feasible(x) == model.feasible(x)
            for a in model.feasible(x):
                assert loaded.c(x, a) == pytest.approx(model.c(x, a), rel=1e-15)
                assert loaded.q(x, a) == model.q(x, a)

    def test_inf_written_as_literal(self, infinite_cost_model: MdpModel) -> None:
        """Test that +∞ costs are written as the "inf" literal."""
        doc = model_to_dict(infinite_cost_model)
        assert doc["cost"]["2"]["dead"] == "inf"
        assert json.loads(json.dumps(doc)) == doc

    def test_malformed_file(self, tmp_path: Path) -> None:
        """Test that a wrongly shaped file is reported as a model error."""
        path = tmp_path / "shape.json"
        path.write_text(json.dumps({"states": 3, "actions": {}}))
        with pytest.raises(ModelError, match="states"):
            load_model(path)

    def test_unreadable_file(self, tmp_path: Path) -> None:
        """Test that broken JSON is reported as a model error."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ModelError, match="Cannot read"):
            load_model(path)


class TestMergeInfiniteStates:
    """Tests for collapsing all-infinite states."""

    def test_sink_replaces_doomed_state(self, infinite_cost_model: MdpModel) -> None:
        """Test that the all-infinite state becomes the absorbing sink."""
        merged = merge_infinite_states(infinite_cost_model)
        assert merged.states == (0, 1, SINK)
        assert merged.feasible(SINK) == (SINK_ACTION,)
        assert merged.c(SINK, SINK_ACTION) == INF
        assert merged.q(0, "a").destinations == (1, SINK)
        assert validate_model(merged).accepted

    def test_values_are_preserved(self, infinite_cost_model: MdpModel) -> None:
        """Test that finite values of kept states do not change."""
        policy = StationaryPolicy({0: "a", 1: "safe", 2: "dead"})
        merged_policy = StationaryPolicy({0: "a", 1: "safe", SINK: SINK_ACTION})
        before = evaluate_policy(infinite_cost_model, policy, 0.9)
        after = evaluate_policy(
            merge_infinite_states(infinite_cost_model), merged_policy, 0.9
        )
        assert after[1] == pytest.approx(before[1])
        assert after[0] == before[0] == INF

    def test_no_doomed_states(self, two_state_model: MdpModel) -> None:
        """Test that a model without all-infinite states is returned as is."""
        assert merge_infinite_states(two_state_model) is two_state_model
