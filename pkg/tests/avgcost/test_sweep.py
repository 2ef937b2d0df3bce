"""Tests for discount sweeps and the grid quantities derived from them."""

import numpy as np
import pytest

from avgmdp.avgcost import (
    DpSource,
    EnumerationSource,
    SweepTable,
    U_beta,
    U_trend,
    build_sweep,
    check_grid,
    point_from_values,
    u_liminf,
    w_bounds,
)
from avgmdp.config import parse_grid
from avgmdp.errors import CapExceededError, ModelError, ParameterError
from avgmdp.example41 import BranchSequence, branch_states
from avgmdp.model import INF, MdpModel, cycle_model, random_model


@pytest.fixture
def cycle_table() -> SweepTable:
    """Sweep of the cycle with costs (0, 2) on a small geometric grid."""
    return build_sweep(cycle_model([0.0, 2.0]), parse_grid("geometric:1:8"))


class TestCheckGrid:
    """Tests for grid validation."""

    @pytest.mark.parametrize("grid", [(), (0.5, 0.5), (0.9, 0.5), (0.5, 1.0), (-0.1,)])
    def test_rejects(self, grid: tuple[float, ...]) -> None:
        """Test that empty, unordered and out-of-range grids are refused."""
        with pytest.raises(ParameterError):
            check_grid(grid)

    def test_accepts_increasing(self) -> None:
        """Test that a strictly increasing grid in [0, 1) passes."""
        assert check_grid([0, 0.5, 0.75]) == (0.0, 0.5, 0.75)


class TestBuildSweep:
    """Tests for build_sweep and the value sources."""

    def test_cycle_closed_forms(self, cycle_table: SweepTable) -> None:
        """Test v, m, u and (1 − α)m against the cycle's closed forms."""
        for point in cycle_table.points:
            a = point.alpha
            assert point.v[1] == pytest.approx(2 / (1 - a * a))
            assert point.m == pytest.approx(2 * a / (1 - a * a))
            assert point.u[0] == 0.0
            assert point.u[1] == pytest.approx(2 / (1 + a))
            assert point.abel_m == pytest.approx(2 * a / (1 + a))
        assert cycle_table.source == "dp"

    def test_records(self, cycle_table: SweepTable) -> None:
        """Test one record per grid point and state."""
        records = cycle_table.records()
        assert len(records) == 2 * len(cycle_table.grid)
        assert set(records[0]) == {"alpha", "state", "v", "m", "u"}

    def test_enumeration_matches_dp(self, rng: np.random.Generator) -> None:
        """Test that both sources agree on random models."""
        grid = (0.5, 0.9, 0.99)
        for _ in range(5):
            model = random_model(rng, 4, 2, unichain=True)
            dp = build_sweep(model, grid, DpSource())
            enum = build_sweep(model, grid, EnumerationSource())
            for a, b in zip(dp.points, enum.points, strict=True):
                for x in model.states:
                    assert b.v[x] == pytest.approx(a.v[x], rel=1e-8)
                    assert b.u[x] == pytest.approx(a.u[x], abs=1e-7)
                assert b.abel_m == pytest.approx(a.abel_m, rel=1e-8)

    def test_enumeration_near_one(self) -> None:
        """Test that u and (1 − α)m stay accurate at α = 1 − 10⁻¹²."""
        alpha = 1 - 1e-12
        table = build_sweep(cycle_model([0.0, 2.0]), [alpha], EnumerationSource())
        (point,) = table.points
        assert point.u[1] == pytest.approx(2 / (1 + alpha), rel=1e-9)
        assert point.abel_m == pytest.approx(2 * alpha / (1 + alpha), rel=1e-9)

    def test_enumeration_cap(self, rng: np.random.Generator) -> None:
        """Test that too many policies are refused with the count attached."""
        model = random_model(rng, 5, 3)
        with pytest.raises(CapExceededError) as info:
            build_sweep(model, [0.5], EnumerationSource(cap=100))
        assert info.value.value == 243

    def test_threads_agree(self, rng: np.random.Generator) -> None:
        """Test that grid points computed in threads match the serial sweep."""
        model = random_model(rng, 4, 2)
        grid = parse_grid("geometric:1:6")
        assert build_sweep(model, grid, workers=3) == build_sweep(model, grid)

    def test_infinite_window(self, infinite_cost_model: MdpModel) -> None:
        """Test that +∞ over the whole infimum window is refused."""
        values = dict.fromkeys(infinite_cost_model.states, INF)
        with pytest.raises(ModelError):
            point_from_values(infinite_cost_model, 0.5, values)

    def test_infinite_states_keep_infinite_u(
        self, infinite_cost_model: MdpModel
    ) -> None:
        """Test that u is +∞ where v is, and finite elsewhere."""
        point = point_from_values(infinite_cost_model, 0.5, {0: INF, 1: 6.0, 2: INF})
        assert point.u == {0: INF, 1: 0.0, 2: INF}


class TestGridQuantities:
    """Tests for U_β, its trend and the w bounds."""

    def test_u_beta(self, cycle_table: SweepTable) -> None:
        """Test the grid infimum of u over [β, 1)."""
        last = cycle_table.points[-1]
        assert U_beta(cycle_table, 0.9, 1) == last.u[1]
        assert U_beta(cycle_table, 0.0, 0) == 0.0

    def test_u_beta_above_grid(self, cycle_table: SweepTable) -> None:
        """Test that β above the grid is refused."""
        with pytest.raises(ParameterError):
            U_beta(cycle_table, 0.9999, 1)

    def test_trend_is_nondecreasing(self, rng: np.random.Generator) -> None:
        """Test that U_β(x) is nondecreasing in β."""
        model = random_model(rng, 4, 2, unichain=True)
        table = build_sweep(model, parse_grid("geometric:1:10"), EnumerationSource())
        for x in model.states:
            values = [u for _, u in U_trend(table, x)]
            assert values == sorted(values)
            assert u_liminf(table, x) == values[-1]

    def test_w_bounds(self, cycle_table: SweepTable) -> None:
        """Test bounds from the last half of (1 − α)m_α."""
        low, high = w_bounds(cycle_table)
        tail = cycle_table.abel_m[-4:]
        assert (low, high) == (min(tail), max(tail))
        assert 0.0 <= low <= high <= 1.0
        assert w_bounds(cycle_table, tail=1) == (tail[-1], tail[-1])

    def test_refining_the_grid_lowers_u_beta(self, rng: np.random.Generator) -> None:
        """Test that U_β(x) does not increase when grid points are added."""
        model = random_model(rng, 4, 2, unichain=True)
        coarse = build_sweep(model, parse_grid("geometric:1:6"), EnumerationSource())
        fine = build_sweep(model, parse_grid("geometric:1:12"), EnumerationSource())
        for beta in coarse.grid:
            for x in model.states:
                assert U_beta(fine, beta, x) <= U_beta(coarse, beta, x)

    def test_counterexample_origin(self, alpha_table: SweepTable) -> None:
        """Test u_{α⁽ⁿ⁾}(0) ≤ 1 at every point of the α grid."""
        assert all(point.u[0] <= 1 + 1e-9 for point in alpha_table.points)
        assert u_liminf(alpha_table, 0) <= 1 + 1e-9
        assert U_beta(alpha_table, alpha_table.grid[0], 0) <= 1 + 1e-9

    def test_counterexample_branch_states(
        self, alpha_table: SweepTable, short_sequence: BranchSequence
    ) -> None:
        """Test u(n, k) ≤ N(n) + 1 on every branch state."""
        for n, k in branch_states(short_sequence):
            bound = short_sequence[n].length + 1
            assert u_liminf(alpha_table, (n, k)) <= bound + 1e-9, (n, k)
