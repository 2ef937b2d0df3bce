"""Tests for the one-step operator and the Bellman backup."""

import numpy as np
import pytest

from avgmdp.dp import bellman_backup, eta, eta_row
from avgmdp.errors import InfeasibleActionError, ParameterError
from avgmdp.model import INF, MdpModel, TransitionRow, absorbing_model, random_model


def _costs_model(costs: dict[str, float]) -> MdpModel:
    """Two states; state "s" has the given action costs, all rows go to "t"."""
    return MdpModel(
        states=("s", "t"),
        actions={"s": tuple(costs), "t": ("stay",)},
        cost={"s": dict(costs), "t": {"stay": 0.0}},
        transitions={
            "s": {a: TransitionRow.point("t") for a in costs},
            "t": {"stay": TransitionRow.point("t")},
        },
    )


class TestEta:
    """Tests for η_w^α(x, a)."""

    def test_zero_discount_drops_continuation(self) -> None:
        """Test that α = 0 gives the cost even against +∞ continuation."""
        model = absorbing_model(cost=3.0)
        assert eta(model, {0: INF}, 0.0, 0, 0) == 3.0

    def test_zero_function(self, two_state_model: MdpModel) -> None:
        """Test that w ≡ 0 gives the cost."""
        w = {0: 0.0, 1: 0.0}
        assert eta(two_state_model, w, 0.7, 0, "stay") == 1.0

    def test_fixed_point_at_origin(self) -> None:
        """Test 1 + 0.5·2 = 2 at a self-loop with v(0) = 1/(1 − 0.5)."""
        assert eta(absorbing_model(), {0: 2.0}, 0.5, 0, 0) == 2.0

    def test_infeasible_action(self, two_state_model: MdpModel) -> None:
        """Test that an action outside A(x) raises."""
        with pytest.raises(InfeasibleActionError):
            eta(two_state_model, {0: 0.0, 1: 0.0}, 0.5, 1, "go")

    def test_monotone_in_w(self, rng: np.random.Generator) -> None:
        """Test that w ≤ w' implies η_w ≤ η_w'."""
        model = random_model(rng, 5, 3)
        low = {x: float(rng.uniform(0, 5)) for x in model.states}
        high = {x: low[x] + float(rng.uniform(0, 5)) for x in model.states}
        for x in model.states:
            lows, highs = eta_row(model, low, 0.9, x), eta_row(model, high, 0.9, x)
            assert all(lows[a] <= highs[a] for a in model.feasible(x))


class TestBellmanBackup:
    """Tests for the Bellman operator."""

    def test_single_action_equals_eta(self, rng: np.random.Generator) -> None:
        """Test that with one action the backup is η under it."""
        model = random_model(rng, 4, 1)
        w = {x: float(rng.uniform(0, 3)) for x in model.states}
        values, argmins = bellman_backup(model, w, 0.6)
        for x in model.states:
            assert values[x] == eta(model, w, 0.6, x, 0)
            assert argmins[x] == (0,)

    def test_cheapest_first_action(self) -> None:
        """Test costs (1, 3) with zero continuation give 1 and the first action."""
        model = _costs_model({"a1": 1.0, "a2": 3.0})
        values, argmins = bellman_backup(model, {"s": 0.0, "t": 0.0}, 0.9)
        assert values["s"] == 1.0
        assert argmins["s"] == ("a1",)

    def test_infinite_state_keeps_all_actions(self) -> None:
        """Test that a +∞ backed-up value has the whole of A(x) as argmin set."""
        model = _costs_model({"a1": INF, "a2": INF})
        values, argmins = bellman_backup(model, {"s": 0.0, "t": 0.0}, 0.9)
        assert values["s"] == INF
        assert argmins["s"] == ("a1", "a2")

    def test_ties_are_kept(self) -> None:
        """Test that exact ties all enter the argmin set."""
        model = _costs_model({"a1": 2.0, "a2": 2.0, "a3": 5.0})
        _, argmins = bellman_backup(model, {"s": 0.0, "t": 1.0}, 0.5)
        assert argmins["s"] == ("a1", "a2")

    def test_worker_count_does_not_matter(self, rng: np.random.Generator) -> None:
        """Test that threaded backups agree bit for bit with serial ones."""
        model = random_model(rng, 12, 3)
        w = {x: float(rng.uniform(0, 10)) for x in model.states}
        assert bellman_backup(model, w, 0.95, workers=4) == bellman_backup(
            model, w, 0.95
        )

    def test_monotone_in_alpha(self, rng: np.random.Generator) -> None:
        """Test that backed-up values grow with α for nonnegative w."""
        model = random_model(rng, 5, 3)
        w = {x: float(rng.uniform(0, 10)) for x in model.states}
        grid = [0.0, 0.3, 0.6, 0.9, 1.0]
        rows = [bellman_backup(model, w, a)[0] for a in grid]
        for before, after in zip(rows, rows[1:], strict=False):
            assert all(before[x] <= after[x] for x in model.states)

    @pytest.mark.parametrize("alpha", [-0.1, 1.5])
    def test_discount_range(self, alpha: float) -> None:
        """Test that discounts outside [0, 1] are refused."""
        with pytest.raises(ParameterError):
            bellman_backup(absorbing_model(), {0: 0.0}, alpha)
