"""Analytic discounted values of the counterexample chain.

v_α(0) = 1/(1 − α). Along branch n, with j counting the steps left in the
current half,

    v_α(n, k) = 1/(1−α) + ε⁽ⁿ⁾ [(1 − α^N) α^j − (1 − α^j)] / (1 − α),  k ≤ N,
    v_α(n, k) = 1/(1−α) + ε⁽ⁿ⁾ (1 − α^j) / (1 − α),                   k > N,

where N = N(n), j = N − k + 1 on the first half and j = 2N − k + 1 on the
second. The infimum m_α is attained on the branch heads:

    m_α = 1/(1−α) − sup_n ε⁽ⁿ⁾ (1 − α^{N(n)})² / (1 − α).
"""

import logging
from dataclasses import dataclass
from typing import ClassVar

from mpmath import mp, mpf

from avgmdp.avgcost.sweep import SweepPoint, SweepSource
from avgmdp.errors import ModelError, ParameterError
from avgmdp.example41.construction import ORIGIN
from avgmdp.example41.params import BranchSequence, Real, geometric_head
from avgmdp.model.models import MdpModel, StateId

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bracket:
    """A value known to lie in [lower, upper]; ``value`` is the end computed
    from the generated branches alone."""

    value: mpf
    lower: mpf
    upper: mpf

    @property
    def width(self) -> mpf:
        """upper − lower."""
        return self.upper - self.lower


def _check_alpha(alpha: Real) -> mpf:
    alpha = mpf(alpha)
    if not 0 < alpha < 1:
        msg = f"Closed forms need α in (0, 1), got {alpha}"
        raise ParameterError(msg)
    return alpha


def closed_form_v(seq: BranchSequence, alpha: Real, state: StateId) -> mpf:
    """v_α at a state of the truncated chain.

    Raises:
        ParameterError: If α is outside (0, 1)
        ModelError: If the state is not in the truncation
    """
    with mp.workdps(seq.dps):
        alpha = _check_alpha(alpha)
        base = 1 / (1 - alpha)
        if state == ORIGIN:
            return base
        try:
            n, k = state
            branch = seq[n]
        except (TypeError, ValueError, ParameterError):
            msg = f"State {state!r} is not in the truncated chain"
            raise ModelError(msg) from None
        length = branch.length
        if not 1 <= k <= 2 * length:
            msg = f"State {state!r} is not in the truncated chain"
            raise ModelError(msg)
        if k <= length:
            j = length - k + 1
            head = geometric_head(alpha, j, seq.dps)
            full = geometric_head(alpha, length, seq.dps)
            return base + branch.eps * (full * (1 - head) - head) / (1 - alpha)
        head = geometric_head(alpha, 2 * length - k + 1, seq.dps)
        return base + branch.eps * head / (1 - alpha)


def head_terms(seq: BranchSequence, alpha: Real) -> list[mpf]:
    """ε⁽ⁿ⁾ (1 − α^{N(n)})² for every generated branch."""
    with mp.workdps(seq.dps):
        alpha = _check_alpha(alpha)
        return [b.eps * geometric_head(alpha, b.length, seq.dps) ** 2 for b in seq]


def _sup_bracket(seq: BranchSequence, alpha: Real) -> Bracket:
    """Bracket for sup_n ε⁽ⁿ⁾ (1 − α^{N(n)})² over all n.

    Every ungenerated term is at most ε⁽ᴷ⁺¹⁾, the largest ε beyond the
    generated branches.
    """
    with mp.workdps(seq.dps):
        generated = max(head_terms(seq, alpha))
        upper = max(generated, seq.next_eps)
        return Bracket(value=generated, lower=generated, upper=upper)


def closed_form_m(seq: BranchSequence, alpha: Real, tail_tol: float = 1e-12) -> Bracket:
    """m_α = inf_x v_α(x), bracketed to account for ungenerated branches.

    ``value`` is the generated-branch estimate, which is the upper end. A
    bracket wider than ``tail_tol`` is logged as a warning.
    """
    with mp.workdps(seq.dps):
        alpha = _check_alpha(alpha)
        sup = _sup_bracket(seq, alpha)
        scale = 1 / (1 - alpha)
        result = Bracket(
            value=(1 - sup.value) * scale,
            lower=(1 - sup.upper) * scale,
            upper=(1 - sup.lower) * scale,
        )
    if result.width > tail_tol:
        logger.warning(
            "m_α bracket at α=%s has width %.3e above %.1e; generate more branches",
            mp.nstr(alpha, 17),
            float(result.width),
            tail_tol,
        )
    return result


def relative_value_at_zero(seq: BranchSequence, alpha: Real) -> Bracket:
    """u_α(0) = v_α(0) − m_α = sup_n ε⁽ⁿ⁾ (1 − α^{N(n)})² / (1 − α)."""
    with mp.workdps(seq.dps):
        alpha = _check_alpha(alpha)
        sup = _sup_bracket(seq, alpha)
        scale = 1 / (1 - alpha)
        return Bracket(
            value=sup.value * scale,
            lower=sup.lower * scale,
            upper=sup.upper * scale,
        )


def scaled_m(seq: BranchSequence, alpha: Real) -> Bracket:
    """(1 − α) m_α = 1 − sup_n ε⁽ⁿ⁾ (1 − α^{N(n)})², with no division."""
    with mp.workdps(seq.dps):
        sup = _sup_bracket(seq, alpha)
        return Bracket(value=1 - sup.value, lower=1 - sup.upper, upper=1 - sup.lower)


class ClosedFormSource(SweepSource):
    """Sweep source evaluating the analytic values of a built chain."""

    name: ClassVar[str] = "closed_form"

    def __init__(self, seq: BranchSequence) -> None:
        self.seq = seq

    def point(self, model: MdpModel, alpha: float) -> SweepPoint:
        with mp.workdps(self.seq.dps):
            values = {x: closed_form_v(self.seq, alpha, x) for x in model.states}
            m = closed_form_m(self.seq, alpha).value
            return SweepPoint(
                alpha=alpha,
                v={x: float(vx) for x, vx in values.items()},
                m=float(m),
                u={x: float(max(vx - m, 0)) for x, vx in values.items()},
                abel_m=float(scaled_m(self.seq, alpha).value),
            )
