"""Long-run average costs of stationary policies on finite models."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import spsolve

from avgmdp.dp.chains import can_reach, decompose, policy_costs, policy_matrix
from avgmdp.dp.evaluation import enumerate_policies, evaluate_policy_horizon
from avgmdp.errors import CapExceededError, ParameterError
from avgmdp.model.extreal import INF
from avgmdp.model.models import MdpModel, StateId, StationaryPolicy, ValueFn
from avgmdp.parallel import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_POLICY_CAP = 100_000


@dataclass(frozen=True)
class Exact:
    """Average cost from the class structure of the induced chain."""


@dataclass(frozen=True)
class Horizon:
    """Average cost (1/T) v_{T,1}^φ(x) over ``steps`` epochs."""

    steps: int


type AverageMethod = Exact | Horizon


def stationary_distribution(block: np.ndarray) -> np.ndarray:
    """Stationary distribution of an irreducible stochastic matrix.

    Solves π(P − I) = 0 with Σπ = 1 in the least-squares sense; the system is
    consistent and has a unique solution for an irreducible chain.
    """
    size = block.shape[0]
    system = np.vstack([block.T - np.eye(size), np.ones((1, size))])
    rhs = np.zeros(size + 1)
    rhs[-1] = 1.0
    pi, *_ = linalg.lstsq(system, rhs)
    return pi


def policy_gains(model: MdpModel, policy: StationaryPolicy) -> ValueFn:
    """Cesàro-limit average cost w^φ(x) at every state.

    Closed classes get π·c from their stationary distribution; transient
    states average the class gains with their absorption probabilities. A
    state that reaches a +∞ cost with positive probability has gain +∞.

    Args:
        model: Finite model
        policy: Feasible stationary policy

    Returns:
        Gain per state
    """
    policy.check_feasible(model)
    matrix = policy_matrix(model, policy)
    costs = policy_costs(model, policy)
    doomed = can_reach(matrix, np.isinf(costs))
    costs = np.where(np.isinf(costs), 0.0, costs)

    parts = decompose(matrix)
    gains = np.zeros(len(model))
    for label, members in enumerate(parts.members):
        if not parts.closed[label]:
            continue
        pi = stationary_distribution(matrix[members][:, members].toarray())
        gains[members] = float(pi @ costs[members])

    recurrent = parts.closed_states()
    transient = np.setdiff1d(np.arange(len(model)), recurrent)
    if transient.size:
        csr = matrix.tocsr()
        inner = csr[transient][:, transient]
        system = sparse.identity(transient.size, format="csc") - inner.tocsc()
        inflow = csr[transient][:, recurrent] @ gains[recurrent]
        gains[transient] = np.atleast_1d(spsolve(system, inflow))

    gains[doomed] = INF
    return {x: float(g) for x, g in zip(model.states, gains, strict=True)}


def average_cost_of_policy(
    model: MdpModel,
    policy: StationaryPolicy,
    x: StateId,
    method: AverageMethod | None = None,
) -> float:
    """Average cost w^φ(x) of a stationary policy from state ``x``.

    Args:
        model: Finite model
        policy: Feasible stationary policy
        x: Initial state
        method: ``Exact()`` (default) or ``Horizon(T)``

    Returns:
        The average cost

    Raises:
        ParameterError: If the horizon is not positive
    """
    method = method if method is not None else Exact()
    model.index(x)
    if isinstance(method, Horizon):
        if method.steps < 1:
            msg = f"Horizon must be at least 1, got {method.steps}"
            raise ParameterError(msg)
        total = evaluate_policy_horizon(model, policy, 1.0, method.steps)[x]
        return total / method.steps
    return policy_gains(model, policy)[x]


def best_average_policy(
    model: MdpModel, cap: int = DEFAULT_POLICY_CAP, workers: int = 1
) -> tuple[float, StationaryPolicy]:
    """Minimum over stationary policies and states of the exact average cost.

    Raises:
        CapExceededError: If the model has more than ``cap`` policies
    """
    count = model.policy_count
    if count > cap:
        msg = f"Model has {count} stationary policies, cap is {cap}"
        raise CapExceededError(msg, count, cap)
    policies = list(enumerate_policies(model))
    gains = ordered_map(
        lambda phi: min(policy_gains(model, phi).values()), policies, workers
    )
    best = min(range(len(policies)), key=gains.__getitem__)
    logger.info("Enumerated %d policies, w* = %.12g", count, gains[best])
    return gains[best], policies[best]


def w_star_bruteforce(
    model: MdpModel, cap: int = DEFAULT_POLICY_CAP, workers: int = 1
) -> float:
    """w* = min over stationary policies and states of w^φ(x)."""
    value, _ = best_average_policy(model, cap, workers)
    return value
