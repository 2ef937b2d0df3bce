"""Tests for the counterexample chain."""

import pytest

from avgmdp.errors import ParameterError
from avgmdp.example41 import BranchSequence, branch_states, build_model, successor
from avgmdp.model import MdpModel, validate_model


class TestBuildModel:
    """Tests for build_model and successor."""

    def test_size(self, short_chain: MdpModel) -> None:
        """Test 1 + 2·7 + 2·140 states."""
        assert len(short_chain) == 295
        assert short_chain.states[0] == 0
        assert short_chain.policy_count == 1

    def test_successor(self, short_sequence: BranchSequence) -> None:
        """Test moves along a branch and back to the origin."""
        assert successor(short_sequence, 0) == 0
        assert successor(short_sequence, (1, 3)) == (1, 4)
        assert successor(short_sequence, (1, 14)) == 0
        assert successor(short_sequence, (2, 280)) == 0

    def test_costs(self, short_chain: MdpModel) -> None:
        """Test 1 at the origin, 1 − ε on first halves and 1 + ε on second halves."""
        assert short_chain.c(0, 0) == 1.0
        assert short_chain.c((1, 1), 0) == 0.5
        assert short_chain.c((1, 7), 0) == 0.5
        assert short_chain.c((1, 8), 0) == 1.5
        low, high = short_chain.c((2, 140), 0), short_chain.c((2, 141), 0)
        assert low + high == pytest.approx(2.0)
        assert low < 1.0 < high

    def test_witness_is_branch_heads(self, short_chain: MdpModel) -> None:
        """Test that the infimum is taken over (n, 1)."""
        assert short_chain.infimum_window == ((1, 1), (2, 1))

    def test_valid(self, short_chain: MdpModel) -> None:
        """Test that the chain passes validation."""
        assert validate_model(short_chain).accepted

    def test_branch_states(self, short_sequence: BranchSequence) -> None:
        """Test that branch states are listed in branch order."""
        states = branch_states(short_sequence)
        assert states[:2] == [(1, 1), (1, 2)]
        assert states[-1] == (2, 280)

    def test_empty_sequence(self) -> None:
        """Test that an empty sequence is refused."""
        with pytest.raises(ParameterError):
            build_model(BranchSequence((), 50))
