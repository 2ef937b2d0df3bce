"""Model validators enforcing the standard assumptions at desk scale."""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar

from avgmdp.model.models import ActionId, MdpModel, StateId


class DefectKind(Enum):
    """Kinds of model defects, in report order."""

    DUPLICATE_STATE = "duplicate-state"
    EMPTY_ACTION_SET = "empty-action-set"
    MISSING_COST = "missing-cost"
    NEGATIVE_COST = "negative-cost"
    MISSING_TRANSITION = "missing-transition"
    PROBABILITY_SUM = "probability-sum"
    NONPOSITIVE_PROBABILITY = "nonpositive-probability"
    DUPLICATE_DESTINATION = "duplicate-destination"
    DANGLING_DESTINATION = "dangling-destination"
    DANGLING_WITNESS = "dangling-witness"


@dataclass(frozen=True)
class Defect:
    """One violated invariant, located at a state or (state, action) pair."""

    kind: DefectKind
    state: StateId
    action: ActionId | None
    detail: str

    def describe(self) -> str:
        """Human-readable one-liner."""
        where = f"state {self.state!r}"
        if self.action is not None:
            where += f", action {self.action!r}"
        return f"{self.kind.value} at {where}: {self.detail}"


@dataclass
class ValidationReport:
    """Result of validating a model."""

    defects: list[Defect] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        """A model is accepted iff the report is empty."""
        return not self.defects

    def of_kind(self, kind: DefectKind) -> list[Defect]:
        """Defects of one kind."""
        return [d for d in self.defects if d.kind == kind]


class ModelValidator(ABC):
    """Base validator for one family of model invariants.

    Subclasses inspect one aspect of the model and return the defects found.
    """

    @abstractmethod
    def validate(self, model: MdpModel) -> list[Defect]:
        """Collect the defects of this family.

        Args:
            model: Model to inspect

        Returns:
            Defects found, empty if the model satisfies the invariants
        """


class StateWindowValidator(ModelValidator):
    """State identifiers are distinct."""

    def validate(self, model: MdpModel) -> list[Defect]:
        """Report every repeated state id once per extra occurrence."""
        defects: list[Defect] = []
        seen: set[StateId] = set()
        for position, x in enumerate(model.states):
            if x in seen:
                defects.append(
                    Defect(
                        DefectKind.DUPLICATE_STATE,
                        x,
                        None,
                        f"state listed again at position {position}",
                    )
                )
            seen.add(x)
        return defects


class ActionSetValidator(ModelValidator):
    """Every state has at least one feasible action (A is strict)."""

    def validate(self, model: MdpModel) -> list[Defect]:
        """Check that A(x) is nonempty everywhere."""
        return [
            Defect(DefectKind.EMPTY_ACTION_SET, x, None, "A(x) is empty")
            for x in model.states
            if not model.actions.get(x)
        ]


class CostValidator(ModelValidator):
    """Costs are total on Gr(A) and take values in [0, +∞]."""

    def validate(self, model: MdpModel) -> list[Defect]:
        """Check cost totality and nonnegativity."""
        defects: list[Defect] = []
        for x in model.states:
            row = model.cost.get(x, {})
            for a in model.actions.get(x, ()):
                if a not in row:
                    defects.append(
                        Defect(DefectKind.MISSING_COST, x, a, "c(x, a) undefined")
                    )
                elif math.isnan(row[a]) or row[a] < 0:
                    defects.append(
                        Defect(DefectKind.NEGATIVE_COST, x, a, f"c(x, a) = {row[a]}")
                    )
        return defects


class TransitionValidator(ModelValidator):
    """Rows are probability distributions supported inside the state window."""

    SUM_TOLERANCE: ClassVar[float] = 1e-12

    def validate(self, model: MdpModel) -> list[Defect]:
        """Check every row of q for mass, positivity, uniqueness and closure."""
        defects: list[Defect] = []
        for x in model.states:
            rows = model.transitions.get(x, {})
            for a in model.actions.get(x, ()):
                if a not in rows:
                    defects.append(
                        Defect(
                            DefectKind.MISSING_TRANSITION, x, a, "q(·|x, a) undefined"
                        )
                    )
                    continue
                defects.extend(self._validate_row(model, x, a))
        return defects

    def _validate_row(
        self, model: MdpModel, x: StateId, a: ActionId
    ) -> list[Defect]:
        """Check a single row q(·|x, a)."""
        row = model.transitions[x][a]
        defects: list[Defect] = []
        if abs(row.total - 1.0) > self.SUM_TOLERANCE:
            defects.append(
                Defect(DefectKind.PROBABILITY_SUM, x, a, f"row sums to {row.total!r}")
            )
        seen: set[StateId] = set()
        for z, p in row:
            if not p > 0:
                defects.append(
                    Defect(
                        DefectKind.NONPOSITIVE_PROBABILITY, x, a, f"q({z!r}) = {p}"
                    )
                )
            if z in seen:
                defects.append(
                    Defect(
                        DefectKind.DUPLICATE_DESTINATION, x, a, f"{z!r} listed twice"
                    )
                )
            seen.add(z)
            if z not in model:
                defects.append(
                    Defect(
                        DefectKind.DANGLING_DESTINATION,
                        x,
                        a,
                        f"destination {z!r} is outside the state window",
                    )
                )
        return defects


class WitnessValidator(ModelValidator):
    """The infimum-witness window is a subset of the state window."""

    def validate(self, model: MdpModel) -> list[Defect]:
        """Check that witness states exist."""
        if model.witness is None:
            return []
        return [
            Defect(DefectKind.DANGLING_WITNESS, x, None, "witness state not in window")
            for x in model.witness
            if x not in model
        ]


VALIDATORS: tuple[ModelValidator, ...] = (
    StateWindowValidator(),
    ActionSetValidator(),
    CostValidator(),
    TransitionValidator(),
    WitnessValidator(),
)


def validate_model(model: MdpModel) -> ValidationReport:
    """List every violated model invariant.

    Args:
        model: Model to validate

    Returns:
        Report whose ``accepted`` flag is True iff no defect was found
    """
    report = ValidationReport()
    for validator in VALIDATORS:
        report.defects.extend(validator.validate(model))
    return report
