"""Tests for the parameter functions and the branch recursion."""

import numpy as np
import pytest
from mpmath import mpf

from avgmdp.errors import CapExceededError, ParameterError
from avgmdp.example41 import (
    BranchSequence,
    derive_params,
    g,
    generate_sequence,
    verify_lemma43,
)


class TestDeriveParams:
    """Tests for derive_params and g."""

    def test_half_and_one(self) -> None:
        """Test β = ½, M = 1: γ = 5/6, n* = 7, δ = (5/7)^{1/7}."""
        params = derive_params("0.5", 1)
        assert params.eps == mpf("0.5")
        assert float(params.gamma) == pytest.approx(5 / 6, rel=1e-15)
        assert params.n_star == 7
        assert float(params.delta) == pytest.approx((5 / 7) ** (1 / 7), rel=1e-14)
        assert float(params.delta) == pytest.approx(0.95307, abs=1e-5)

    def test_g_at_gamma(self) -> None:
        """Test g_{½,1}(5/6) = 3 (1 − (5/6)⁷)²."""
        expected = 3 * (1 - (5 / 6) ** 7) ** 2
        assert float(g("0.5", 1, mpf(5) / 6)) == pytest.approx(expected, rel=1e-14)
        assert expected == pytest.approx(1.559, abs=1e-3)

    def test_small_m_uses_midpoint(self) -> None:
        """Test that for small M, γ is (β + 1)/2."""
        params = derive_params("0.5", "0.1")
        assert params.gamma == mpf("0.75")

    @pytest.mark.parametrize(("beta", "m"), [(0, 1), (1, 1), ("0.5", 0), ("0.5", -1)])
    def test_out_of_range(self, beta: object, m: object) -> None:
        """Test that β outside (0, 1) and M ≤ 0 are refused."""
        with pytest.raises(ParameterError):
            derive_params(beta, m)

    def test_cap(self) -> None:
        """Test that a branch longer than the cap raises with n* attached."""
        with pytest.raises(CapExceededError) as info:
            derive_params("0.5", 1, cap=5)
        assert info.value.value == 7

    def test_g_needs_open_interval(self) -> None:
        """Test that g is only defined for α in (0, 1)."""
        with pytest.raises(ParameterError):
            g("0.5", 1, 1)


class TestVerifyLemma43:
    """Tests for the sampled g-bounds."""

    def test_random_pairs(self, rng: np.random.Generator) -> None:
        """Test g ≤ 1 off (β, δ) and g(γ) ≥ M for random (β, M)."""
        for _ in range(200):
            beta = float(rng.uniform(0.5, 0.99))
            m = float(rng.uniform(0.5, 10.0))
            report = verify_lemma43(beta, m)
            assert report.passed, report.record()
            assert report.gamma_margin >= 0

    def test_record(self) -> None:
        """Test the flat summary."""
        record = verify_lemma43("0.5", 1).record()
        assert record["n_star"] == 7
        assert record["passed"] is True
        assert record["gamma_margin"] == pytest.approx(1.559 - 1, abs=1e-3)

    def test_needs_samples(self) -> None:
        """Test that zero samples are refused."""
        with pytest.raises(ParameterError):
            verify_lemma43("0.5", 1, samples_per_interval=0)


class TestGenerateSequence:
    """Tests for generate_sequence."""

    def test_first_branches(self, sequence: BranchSequence) -> None:
        """Test α⁽¹⁾, N(1), N(2) and the recursion α⁽ⁿ⁺¹⁾ = δ."""
        first, second, third = sequence.branches
        assert first.alpha == mpf("0.5")
        assert first.length == 7
        assert second.length == 140
        assert third.length > second.length
        assert second.alpha == first.alpha_next
        assert third.alpha == second.alpha_next
        assert first.eps == 1 - first.alpha
        assert not sequence.truncated

    def test_alphas_increase(self, sequence: BranchSequence) -> None:
        """Test β < γ < δ within every branch."""
        for branch in sequence:
            assert branch.alpha < branch.gamma < branch.alpha_next < 1

    def test_truncated_at_cap(self) -> None:
        """Test that the fourth branch exceeds the default cap."""
        seq = generate_sequence("0.5", 4)
        assert len(seq) == 3
        assert seq.truncated_at == 4
        assert seq.cap_value is not None
        assert seq.cap_value > 100_000

    def test_next_eps(self, sequence: BranchSequence) -> None:
        """Test ε⁽ᴷ⁺¹⁾ = 1 − α⁽ᴷ⁺¹⁾."""
        expected = 1 - float(sequence[3].alpha_next)
        assert float(sequence.next_eps) == pytest.approx(expected, rel=1e-9)

    def test_records(self, short_sequence: BranchSequence) -> None:
        """Test the branch table rows."""
        records = [branch.record() for branch in short_sequence]
        assert [r["N"] for r in records] == [7, 140]
        assert records[0]["alpha"] == 0.5

    @pytest.mark.parametrize(
        ("alpha1", "n_max", "cap"),
        [("0.4", 2, 100_000), ("1", 2, 100_000), ("0.5", 0, 100_000), ("0.5", 2, 5)],
    )
    def test_invalid(self, alpha1: str, n_max: int, cap: int) -> None:
        """Test α⁽¹⁾ outside [½, 1), no branches and a cap hit at branch 1."""
        with pytest.raises(ParameterError):
            generate_sequence(alpha1, n_max, cap=cap)

    def test_branch_index(self, short_sequence: BranchSequence) -> None:
        """Test 1-based branch access."""
        assert short_sequence[1].n == 1
        with pytest.raises(ParameterError):
            _ = short_sequence[3]
