"""Parameter functions of the counterexample and their generation procedure.

Everything is evaluated with mpmath at ``dps`` decimal digits: α⁽ⁿ⁾ → 1
while N(n) grows fast, and (1 − α^N)²/(1 − α) cancels catastrophically in
double precision. Values are rounded to ``float`` only by the report layer.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Final

from mpmath import mp, mpf

from avgmdp.errors import CapExceededError, ParameterError

logger = logging.getLogger(__name__)

DEFAULT_DPS: Final[int] = 50
BRANCH_CAP: Final[int] = 100_000
FLOOR_GUARD: Final[str] = "1e-25"

type Real = mpf | float | int | str


@dataclass(frozen=True)
class ParamTuple:
    """(ε_β, γ_{β,M}, n*_{β,M}, δ_{β,M}) for one pair (β, M)."""

    beta: mpf
    m: mpf
    eps: mpf
    gamma: mpf
    n_star: int
    delta: mpf
    dps: int


@dataclass(frozen=True)
class BranchParams:
    """Parameters of branch n: α⁽ⁿ⁾, ε⁽ⁿ⁾, γ⁽ⁿ⁾, N(n) and α⁽ⁿ⁺¹⁾."""

    n: int
    alpha: mpf
    eps: mpf
    gamma: mpf
    length: int
    alpha_next: mpf

    def record(self) -> dict[str, object]:
        """Row of the branch table."""
        return {
            "n": self.n,
            "alpha": float(self.alpha),
            "eps": float(self.eps),
            "gamma": float(self.gamma),
            "N": self.length,
            "alpha_next": float(self.alpha_next),
        }


@dataclass(frozen=True)
class BranchSequence:
    """Generated branches, possibly cut short by the branch-length cap.

    Attributes:
        branches: Branches 1..K
        dps: Working precision used to generate them
        truncated_at: First branch index whose N(n) exceeded the cap
        cap_value: That N(n)
    """

    branches: tuple[BranchParams, ...]
    dps: int
    truncated_at: int | None = None
    cap_value: int | None = None

    def __len__(self) -> int:
        return len(self.branches)

    def __iter__(self) -> Iterator[BranchParams]:
        return iter(self.branches)

    def __getitem__(self, n: int) -> BranchParams:
        """Branch with index ``n`` (1-based)."""
        if not 1 <= n <= len(self.branches):
            msg = f"Branch {n} is outside 1..{len(self.branches)}"
            raise ParameterError(msg)
        return self.branches[n - 1]

    @property
    def truncated(self) -> bool:
        """True if generation stopped at the cap."""
        return self.truncated_at is not None

    @property
    def next_eps(self) -> mpf:
        """ε⁽ᴷ⁺¹⁾ = 1 − α⁽ᴷ⁺¹⁾; bounds every ungenerated ε⁽ⁿ⁾."""
        with mp.workdps(self.dps):
            return 1 - self.branches[-1].alpha_next


def derive_params(
    beta: Real, m: Real, cap: int = BRANCH_CAP, dps: int = DEFAULT_DPS
) -> ParamTuple:
    """Compute ε_β, γ_{β,M}, n*_{β,M} and δ_{β,M}.

    The floor in n* is taken after adding a guard of 1e-25, so a logarithm
    that rounds just below an integer is not pushed down by one.

    Args:
        beta: β in (0, 1)
        m: M > 0
        cap: Largest admissible n*
        dps: Decimal digits of working precision

    Returns:
        The parameter tuple

    Raises:
        ParameterError: If β or M is out of range
        CapExceededError: If n* exceeds ``cap``
    """
    with mp.workdps(dps):
        beta, m = mpf(beta), mpf(m)
        if not 0 < beta < 1:
            msg = f"β must lie in (0, 1), got {beta}"
            raise ParameterError(msg)
        if not m > 0:
            msg = f"M must be positive, got {m}"
            raise ParameterError(msg)

        eps = 1 - beta
        gamma = max((beta + 1) / 2, 1 - eps / (3 * m))
        target = min(mpf(1) / 2, m * (1 - gamma) / eps)
        n_star = int(mp.floor(mp.log(target) / mp.log(gamma) + mpf(FLOOR_GUARD))) + 1
        if n_star > cap:
            msg = f"n* = {n_star} exceeds the branch-length cap {cap}"
            raise CapExceededError(msg, n_star, cap)

        base = 1 - 1 / (eps * n_star)
        delta = (gamma + 1) / 2
        # A nonpositive base has no real root; only the first term remains
        if base > 0:
            delta = max(delta, base ** (mpf(1) / n_star))
    return ParamTuple(
        beta=beta, m=m, eps=eps, gamma=gamma, n_star=n_star, delta=delta, dps=dps
    )


def geometric_head(alpha: Real, power: int, dps: int = DEFAULT_DPS) -> mpf:
    """1 − α^power, via expm1 so it keeps full relative accuracy near α = 1."""
    with mp.workdps(dps):
        return -mp.expm1(power * mp.log(mpf(alpha)))


def g_value(params: ParamTuple, alpha: Real) -> mpf:
    """g_{β,M}(α) = ε_β (1 − α^{n*})² / (1 − α) for precomputed parameters."""
    with mp.workdps(params.dps):
        alpha = mpf(alpha)
        if not 0 < alpha < 1:
            msg = f"α must lie in (0, 1), got {alpha}"
            raise ParameterError(msg)
        head = geometric_head(alpha, params.n_star, params.dps)
        return params.eps * head**2 / (1 - alpha)


def g(beta: Real, m: Real, alpha: Real, dps: int = DEFAULT_DPS) -> mpf:
    """g_{β,M}(α) with n* from ``derive_params(β, M)``."""
    return g_value(derive_params(beta, m, dps=dps), alpha)


@dataclass(frozen=True)
class Lemma43Report:
    """Sampled check of g ≤ 1 on (0, β] ∪ [δ, 1) and g(γ) ≥ M.

    The worst margins are 1 − max g on each interval and g(γ) − M.
    """

    params: ParamTuple
    samples: int
    tol: float
    low_worst_alpha: mpf
    low_margin: mpf
    high_worst_alpha: mpf
    high_margin: mpf
    gamma_margin: mpf

    @property
    def passed(self) -> bool:
        """True if all three margins are at least −tol."""
        return min(self.low_margin, self.high_margin, self.gamma_margin) >= -self.tol

    def record(self) -> dict[str, object]:
        """Flat summary for reports."""
        return {
            "beta": float(self.params.beta),
            "M": float(self.params.m),
            "n_star": self.params.n_star,
            "low_margin": float(self.low_margin),
            "low_worst_alpha": float(self.low_worst_alpha),
            "high_margin": float(self.high_margin),
            "high_worst_alpha": float(self.high_worst_alpha),
            "gamma_margin": float(self.gamma_margin),
            "passed": self.passed,
        }


def lemma_samples(params: ParamTuple, samples: int) -> tuple[list[mpf], list[mpf]]:
    """Sample points in (0, β] and in [δ, 1).

    The first list is β·i/s for i = 1..s, ending at β. The second starts at
    δ and approaches 1 geometrically, down to a distance of (1 − δ)·10⁻¹².
    """
    with mp.workdps(params.dps):
        low = [params.beta * i / samples for i in range(1, samples + 1)]
        gap = 1 - params.delta
        if samples == 1:
            return low, [params.delta]
        high = [
            1 - gap * mpf(10) ** (-mpf(12) * i / (samples - 1)) for i in range(samples)
        ]
    return low, high


def verify_lemma43(
    beta: Real,
    m: Real,
    samples_per_interval: int = 50,
    tol: float = 1e-9,
    dps: int = DEFAULT_DPS,
) -> Lemma43Report:
    """Check both halves of the g-bounds at sampled discounts.

    Raises:
        ParameterError: If fewer than one sample is requested
    """
    if samples_per_interval < 1:
        msg = f"Need at least one sample per interval, got {samples_per_interval}"
        raise ParameterError(msg)
    params = derive_params(beta, m, dps=dps)
    low, high = lemma_samples(params, samples_per_interval)
    with mp.workdps(dps):
        low_g, low_alpha = max((g_value(params, a), a) for a in low)
        high_g, high_alpha = max((g_value(params, a), a) for a in high)
        gamma_margin = g_value(params, params.gamma) - params.m
        report = Lemma43Report(
            params=params,
            samples=samples_per_interval,
            tol=tol,
            low_worst_alpha=low_alpha,
            low_margin=1 - low_g,
            high_worst_alpha=high_alpha,
            high_margin=1 - high_g,
            gamma_margin=gamma_margin,
        )
    if not report.passed:
        logger.warning("g-bounds fail for β=%s, M=%s", beta, m)
    return report


def generate_sequence(
    alpha1: Real,
    n_max: int,
    cap: int = BRANCH_CAP,
    dps: int = DEFAULT_DPS,
) -> BranchSequence:
    """Run the recursion α⁽ⁿ⁺¹⁾ = δ_{α⁽ⁿ⁾, n} from α⁽¹⁾.

    Each branch uses β = α⁽ⁿ⁾ and M = n. Generation stops early, with the
    branch index recorded, as soon as N(n) exceeds ``cap``.

    Args:
        alpha1: α⁽¹⁾ in [½, 1)
        n_max: Number of branches wanted
        cap: Branch-length cap
        dps: Working precision

    Returns:
        The branches generated before the cap was hit

    Raises:
        ParameterError: If α⁽¹⁾ or n_max is out of range, or the cap is hit
            at the first branch
    """
    with mp.workdps(dps):
        alpha = mpf(alpha1)
        if not mpf(1) / 2 <= alpha < 1:
            msg = f"α⁽¹⁾ must lie in [1/2, 1), got {alpha1}"
            raise ParameterError(msg)
    if n_max < 1:
        msg = f"Need at least one branch, got {n_max}"
        raise ParameterError(msg)

    branches: list[BranchParams] = []
    for n in range(1, n_max + 1):
        try:
            params = derive_params(alpha, n, cap=cap, dps=dps)
        except CapExceededError as exc:
            if not branches:
                msg = f"Branch 1 already exceeds the cap: {exc}"
                raise ParameterError(msg) from exc
            logger.warning("Sequence truncated at branch %d: N = %d", n, exc.value)
            return BranchSequence(
                tuple(branches), dps, truncated_at=n, cap_value=exc.value
            )
        branches.append(
            BranchParams(
                n=n,
                alpha=alpha,
                eps=params.eps,
                gamma=params.gamma,
                length=params.n_star,
                alpha_next=params.delta,
            )
        )
        alpha = params.delta
    logger.info("Generated %d branches", len(branches))
    return BranchSequence(tuple(branches), dps)
