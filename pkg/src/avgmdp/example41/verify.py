"""Verdicts on the counterexample: u_α(0) is unbounded, yet its liminf is finite."""

import logging
from dataclasses import dataclass, field

from mpmath import mp, mpf

from avgmdp.errors import ParameterError
from avgmdp.example41.closed_form import closed_form_v, relative_value_at_zero, scaled_m
from avgmdp.example41.construction import ORIGIN
from avgmdp.example41.params import BranchSequence
from avgmdp.parallel import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapRow:
    """u_α(0) at γ⁽ⁿ⁾ and at α⁽ⁿ⁾ for one branch.

    ``u_gamma`` is the certified lower end and ``u_alpha`` the certified upper
    end of the corresponding bracket.
    """

    n: int
    gamma: mpf
    u_gamma: mpf
    alpha: mpf
    u_alpha: mpf

    def record(self) -> dict[str, object]:
        """Row of the gap table."""
        return {
            "n": self.n,
            "gamma": float(self.gamma),
            "u_gamma": float(self.u_gamma),
            "alpha": float(self.alpha),
            "u_alpha": float(self.u_alpha),
        }


@dataclass(frozen=True)
class AbelRow:
    """(1 − α⁽ⁿ⁾) m_{α⁽ⁿ⁾} against its limit 1 and the bound 2⁻ⁿ."""

    n: int
    alpha: mpf
    scaled_m: mpf
    deviation: mpf
    bound: mpf

    @property
    def ok(self) -> bool:
        """True if the deviation is within the bound."""
        return self.deviation <= self.bound

    def record(self) -> dict[str, object]:
        """Row of the Abel trend table."""
        return {
            "n": self.n,
            "alpha": float(self.alpha),
            "scaled_m": float(self.scaled_m),
            "deviation": float(self.deviation),
            "bound": float(self.bound),
            "ok": self.ok,
        }


@dataclass(frozen=True)
class Prop42Report:
    """Closed-form evidence that sup_α u_α(0) = ∞ while liminf u_α(0) ≤ 1.

    Attributes:
        gaps: One row per generated branch
        unbounded: u_{γ⁽ⁿ⁾}(0) ≥ n − gap_tol on every row
        liminf_bounded: u_{α⁽ⁿ⁾}(0) ≤ 1 + tol on every row
        excursion_margin: min over sampled (α, n, k) of
            N(n) − (v_α(n, k) − v_α(0)); nonnegative when the bound holds
        failures: Human-readable descriptions of failed checks
    """

    gaps: list[GapRow]
    unbounded: bool
    liminf_bounded: bool
    excursion_margin: mpf
    tol: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True if every check holds."""
        return (
            self.unbounded
            and self.liminf_bounded
            and self.excursion_margin >= -self.tol
        )

    def verdict(self) -> dict[str, object]:
        """Structured verdict document."""
        return {
            "passed": self.passed,
            "assumption_b_fails": self.unbounded,
            "assumption_bbar_holds": self.liminf_bounded,
            "excursion_margin": float(self.excursion_margin),
            "branches": len(self.gaps),
            "gaps": [row.record() for row in self.gaps],
            "failures": list(self.failures),
        }


def gap_table(seq: BranchSequence, workers: int = 1) -> list[GapRow]:
    """u_{γ⁽ⁿ⁾}(0) (lower end) and u_{α⁽ⁿ⁾}(0) (upper end) per branch."""

    def row(branch_index: int) -> GapRow:
        branch = seq[branch_index]
        return GapRow(
            n=branch.n,
            gamma=branch.gamma,
            u_gamma=relative_value_at_zero(seq, branch.gamma).lower,
            alpha=branch.alpha,
            u_alpha=relative_value_at_zero(seq, branch.alpha).upper,
        )

    return ordered_map(row, range(1, len(seq) + 1), workers)


def abel_trend(seq: BranchSequence) -> list[AbelRow]:
    """|(1 − α⁽ⁿ⁾) m_{α⁽ⁿ⁾} − 1| against 2⁻ⁿ per branch.

    The deviation uses the worst end of the bracket.
    """
    rows: list[AbelRow] = []
    with mp.workdps(seq.dps):
        for branch in seq:
            bracket = scaled_m(seq, branch.alpha)
            deviation = max(abs(bracket.lower - 1), abs(bracket.upper - 1))
            rows.append(
                AbelRow(
                    n=branch.n,
                    alpha=branch.alpha,
                    scaled_m=bracket.value,
                    deviation=deviation,
                    bound=mpf(2) ** (-branch.n),
                )
            )
    return rows


def default_alpha_samples(seq: BranchSequence) -> list[mpf]:
    """α⁽ⁿ⁾, γ⁽ⁿ⁾ and α⁽ᴷ⁺¹⁾ for the generated branches, plus 0.5 and 0.9."""
    with mp.workdps(seq.dps):
        points = {mpf("0.5"), mpf("0.9"), seq.branches[-1].alpha_next}
        for branch in seq:
            points.update((branch.alpha, branch.gamma))
        return sorted(points)


def excursion_margin(seq: BranchSequence, alphas: list[mpf]) -> mpf:
    """min over α and branch states of N(n) − (v_α(n, k) − v_α(0)).

    Within a branch the excursion peaks at k ∈ {1, N, N+1, 2N}, so only those
    states are evaluated.
    """
    margin: mpf | None = None
    with mp.workdps(seq.dps):
        for alpha in alphas:
            origin = closed_form_v(seq, alpha, ORIGIN)
            for branch in seq:
                length = branch.length
                for k in sorted({1, length, length + 1, 2 * length}):
                    excess = closed_form_v(seq, alpha, (branch.n, k)) - origin
                    value = length - excess
                    margin = value if margin is None else min(margin, value)
    return margin if margin is not None else mpf(0)


def verify_prop42(
    seq: BranchSequence,
    tol: float = 1e-9,
    gap_tol: float = 1e-6,
    alphas: list[mpf] | None = None,
    workers: int = 1,
) -> Prop42Report:
    """Check the closed-form facts behind the counterexample.

    For every branch n: u_{γ⁽ⁿ⁾}(0) ≥ n − gap_tol and u_{α⁽ⁿ⁾}(0) ≤ 1 + tol.
    For sampled α and branch states: v_α(n, k) − v_α(0) ≤ N(n) + tol.

    Args:
        seq: Branch sequence with at least two branches
        tol: Tolerance for the upper bounds
        gap_tol: Tolerance for the growth bound
        alphas: Discounts for the excursion check
        workers: Threads for the gap table

    Returns:
        The report

    Raises:
        ParameterError: If fewer than two branches are given
    """
    if len(seq) < 2:
        msg = f"Need at least two branches, got {len(seq)}"
        raise ParameterError(msg)

    gaps = gap_table(seq, workers)
    failures: list[str] = []
    for row in gaps:
        if row.u_gamma < row.n - gap_tol:
            failures.append(f"u at γ({row.n}) is {mp.nstr(row.u_gamma, 12)} < {row.n}")
        if row.u_alpha > 1 + tol:
            failures.append(f"u at α({row.n}) is {mp.nstr(row.u_alpha, 12)} > 1")
    if alphas is None:
        alphas = default_alpha_samples(seq)
    margin = excursion_margin(seq, alphas)
    if margin < -tol:
        failures.append(f"Excursion bound violated by {mp.nstr(-margin, 12)}")

    report = Prop42Report(
        gaps=gaps,
        unbounded=all(row.u_gamma >= row.n - gap_tol for row in gaps),
        liminf_bounded=all(row.u_alpha <= 1 + tol for row in gaps),
        excursion_margin=margin,
        tol=tol,
        failures=failures,
    )
    for failure in failures:
        logger.warning(failure)
    return report
