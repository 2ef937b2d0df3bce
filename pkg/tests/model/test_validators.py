"""Tests for model validation."""

from avgmdp.example41 import build_model
from avgmdp.example41.params import BranchSequence
from avgmdp.model import (
    DefectKind,
    MdpModel,
    TransitionRow,
    absorbing_model,
    validate_model,
)
from avgmdp.model.validators import TransitionValidator


def _single(row: TransitionRow, cost: float = 1.0) -> MdpModel:
    """One state 0 with action "a" using the given row."""
    return MdpModel(
        states=(0, 1),
        actions={0: ("a",), 1: ("b",)},
        cost={0: {"a": cost}, 1: {"b": 0.0}},
        transitions={0: {"a": row}, 1: {"b": TransitionRow.point(1)}},
    )


class TestValidateModel:
    """Tests for validate_model."""

    def test_absorbing_model_is_accepted(self) -> None:
        """Test that a well-formed one-state model has an empty report."""
        report = validate_model(absorbing_model())
        assert report.accepted
        assert report.defects == []

    def test_short_row_names_pair(self) -> None:
        """Test that a row summing to 0.9 is reported at its (state, action)."""
        report = validate_model(_single(TransitionRow.of([(0, 0.4), (1, 0.5)])))
        assert not report.accepted
        (defect,) = report.of_kind(DefectKind.PROBABILITY_SUM)
        assert (defect.state, defect.action) == (0, "a")
        assert "state 0, action 'a'" in defect.describe()

    def test_tolerance_boundary(self) -> None:
        """Test that rounding inside the tolerance is accepted."""
        nudge = TransitionValidator.SUM_TOLERANCE / 2
        row = TransitionRow.of([(0, 0.1), (1, 0.9 + nudge)])
        assert validate_model(_single(row)).accepted

    def test_dangling_destination(self) -> None:
        """Test that leaving the state window is reported."""
        report = validate_model(_single(TransitionRow.point(9)))
        assert report.of_kind(DefectKind.DANGLING_DESTINATION)

    def test_negative_cost(self) -> None:
        """Test that negative costs are reported."""
        report = validate_model(_single(TransitionRow.point(1), cost=-1.0))
        assert report.of_kind(DefectKind.NEGATIVE_COST)

    def test_empty_action_set(self) -> None:
        """Test that a state without actions is reported."""
        model = MdpModel(states=(0,), actions={0: ()}, cost={}, transitions={})
        (defect,) = validate_model(model).defects
        assert defect.kind is DefectKind.EMPTY_ACTION_SET

    def test_duplicate_and_nonpositive(self) -> None:
        """Test that repeated and zero-probability destinations are reported."""
        row = TransitionRow.of([(0, 0.5), (0, 0.5), (1, 0.0)])
        report = validate_model(_single(row))
        assert report.of_kind(DefectKind.DUPLICATE_DESTINATION)
        assert report.of_kind(DefectKind.NONPOSITIVE_PROBABILITY)

    def test_missing_cost_and_transition(self) -> None:
        """Test that partial cost and transition maps are reported."""
        model = MdpModel(
            states=(0,),
            actions={0: ("a", "b")},
            cost={0: {"a": 1.0}},
            transitions={0: {"b": TransitionRow.point(0)}},
        )
        report = validate_model(model)
        assert report.of_kind(DefectKind.MISSING_COST)
        assert report.of_kind(DefectKind.MISSING_TRANSITION)

    def test_dangling_witness(self) -> None:
        """Test that witness states must belong to the window."""
        model = MdpModel(
            states=(0,),
            actions={0: ("a",)},
            cost={0: {"a": 0.0}},
            transitions={0: {"a": TransitionRow.point(0)}},
            witness=(5,),
        )
        assert validate_model(model).of_kind(DefectKind.DANGLING_WITNESS)

    def test_duplicate_state(self) -> None:
        """Test that a repeated state id is reported once with its position."""
        model = MdpModel(
            states=(0, 0, 1),
            actions={0: ("a",), 1: ("b",)},
            cost={0: {"a": 1.0}, 1: {"b": 0.0}},
            transitions={
                0: {"a": TransitionRow.point(1)},
                1: {"b": TransitionRow.point(1)},
            },
        )
        report = validate_model(model)
        assert not report.accepted
        (defect,) = report.defects
        assert defect.kind is DefectKind.DUPLICATE_STATE
        assert defect.state == 0
        assert "position 1" in defect.detail

    def test_counterexample_chain_is_accepted(
        self, short_sequence: BranchSequence
    ) -> None:
        """Test that the two-branch counterexample chain validates."""
        assert validate_model(build_model(short_sequence)).accepted
