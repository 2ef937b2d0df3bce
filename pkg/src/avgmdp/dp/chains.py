"""Markov chains induced by stationary policies.

Policies are turned into sparse transition matrices indexed by the model's
declared state order, then split into strongly connected classes.
"""

from dataclasses import dataclass
from graphlib import TopologicalSorter

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from avgmdp.model.models import MdpModel, StationaryPolicy


def policy_matrix(model: MdpModel, policy: StationaryPolicy) -> sparse.csr_array:
    """Transition matrix P_φ in declared state order."""
    rows: list[int] = []
    cols: list[int] = []
    probs: list[float] = []
    for i, x in enumerate(model.states):
        for z, p in model.q(x, policy[x]):
            rows.append(i)
            cols.append(model.index(z))
            probs.append(p)
    n = len(model)
    return sparse.csr_array((probs, (rows, cols)), shape=(n, n))


def policy_costs(model: MdpModel, policy: StationaryPolicy) -> np.ndarray:
    """Cost vector c_φ in declared state order; may contain +∞."""
    return np.array([model.c(x, policy[x]) for x in model.states], dtype=float)


@dataclass(frozen=True)
class ClassDecomposition:
    """Strongly connected classes of a chain.

    Attributes:
        labels: Class label of every state
        members: State indices of each class, ascending
        closed: Whether each class has no transitions leaving it
        order: Class labels with every class after all classes it can reach
    """

    labels: np.ndarray
    members: tuple[np.ndarray, ...]
    closed: tuple[bool, ...]
    order: tuple[int, ...]

    @property
    def count(self) -> int:
        """Number of classes."""
        return len(self.members)

    def closed_states(self) -> np.ndarray:
        """Indices of states in closed (recurrent) classes."""
        chunks = [m for m, c in zip(self.members, self.closed, strict=True) if c]
        if not chunks:
            return np.array([], dtype=int)
        return np.sort(np.concatenate(chunks))


def decompose(matrix: sparse.csr_array) -> ClassDecomposition:
    """Split a chain into strongly connected classes.

    Args:
        matrix: Square transition matrix with nonnegative entries

    Returns:
        The decomposition, with ``order`` a reverse topological order of the
        condensation
    """
    count, labels = connected_components(matrix, directed=True, connection="strong")
    members = tuple(np.flatnonzero(labels == k) for k in range(count))
    coo = matrix.tocoo()
    successors: dict[int, set[int]] = {k: set() for k in range(count)}
    for i, j, p in zip(coo.row, coo.col, coo.data, strict=True):
        if p > 0 and labels[i] != labels[j]:
            successors[int(labels[i])].add(int(labels[j]))
    closed = tuple(not successors[k] for k in range(count))
    order = tuple(TopologicalSorter(successors).static_order())
    return ClassDecomposition(
        labels=labels, members=members, closed=closed, order=order
    )


def can_reach(matrix: sparse.csr_array, targets: np.ndarray) -> np.ndarray:
    """States from which some target is reached with positive probability.

    Args:
        matrix: Square transition matrix
        targets: Boolean mask of target states

    Returns:
        Boolean mask, including the targets themselves
    """
    support = (matrix > 0).astype(np.int64)
    reached = targets.astype(bool).copy()
    while True:
        grown = reached | (support @ reached.astype(np.int64) > 0)
        if np.array_equal(grown, reached):
            return reached
        reached = grown
