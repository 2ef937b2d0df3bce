"""Pytest configuration and shared fixtures."""

import numpy as np
import pytest

from avgmdp.avgcost import SweepTable, build_sweep
from avgmdp.example41 import (
    BranchSequence,
    ClosedFormSource,
    build_model,
    generate_sequence,
)
from avgmdp.model import MdpModel, TransitionRow


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomised suites."""
    return np.random.default_rng(20240607)


@pytest.fixture
def two_state_model() -> MdpModel:
    """Two states, two actions at state 0: stay cheaply or jump to a costly trap.

    Action "stay" at 0 costs 1 and loops; "go" costs 0 and moves to state 1,
    which loops forever at cost 2.
    """
    return MdpModel(
        states=(0, 1),
        actions={0: ("stay", "go"), 1: ("loop",)},
        cost={0: {"stay": 1.0, "go": 0.0}, 1: {"loop": 2.0}},
        transitions={
            0: {"stay": TransitionRow.point(0), "go": TransitionRow.point(1)},
            1: {"loop": TransitionRow.point(1)},
        },
        name="two-state",
    )


@pytest.fixture
def infinite_cost_model() -> MdpModel:
    """State 2 has only +∞ costs; state 1 can avoid it, state 0 reaches it w.p. ½."""
    return MdpModel(
        states=(0, 1, 2),
        actions={0: ("a",), 1: ("safe", "risky"), 2: ("dead",)},
        cost={
            0: {"a": 1.0},
            1: {"safe": 3.0, "risky": 0.0},
            2: {"dead": float("inf")},
        },
        transitions={
            0: {"a": TransitionRow.of([(1, 0.5), (2, 0.5)])},
            1: {"safe": TransitionRow.point(1), "risky": TransitionRow.point(2)},
            2: {"dead": TransitionRow.point(2)},
        },
        name="infinite",
    )


@pytest.fixture(scope="session")
def sequence() -> BranchSequence:
    """Branch sequence from α⁽¹⁾ = ½, three branches."""
    return generate_sequence(0.5, 3)


@pytest.fixture(scope="session")
def short_sequence() -> BranchSequence:
    """The first two branches only."""
    return generate_sequence(0.5, 2)


@pytest.fixture(scope="session")
def short_chain(short_sequence: BranchSequence) -> MdpModel:
    """The counterexample chain truncated to two branches (295 states)."""
    return build_model(short_sequence)


@pytest.fixture(scope="session")
def alpha_table(short_chain: MdpModel, short_sequence: BranchSequence) -> SweepTable:
    """Closed-form sweep of the two-branch chain on α⁽¹⁾, α⁽²⁾, α⁽³⁾."""
    grid = [float(b.alpha) for b in short_sequence]
    grid.append(float(short_sequence.branches[-1].alpha_next))
    return build_sweep(short_chain, grid, ClosedFormSource(short_sequence))


@pytest.fixture(scope="session")
def gamma_table(short_chain: MdpModel, short_sequence: BranchSequence) -> SweepTable:
    """Closed-form sweep of the two-branch chain on γ⁽¹⁾, γ⁽²⁾."""
    grid = [float(b.gamma) for b in short_sequence]
    return build_sweep(short_chain, grid, ClosedFormSource(short_sequence))
