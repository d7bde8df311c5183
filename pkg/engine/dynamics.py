"""
Influence score and asynchronous sweep.

A free node i reads Z_i = sum_j sigma_j * w_ij over its in-neighbors j and becomes red if
Z_i > threshold, blue if Z_i < 0 and keeps its spin otherwise. ADJACENCY mode uses w_ij = 1,
STOCHASTIC mode uses w_ij = 1 / k_j. A float sum within ZERO_TOLERANCE times the total in-weight
counts as exactly 0.
"""

import logging
from typing import Optional

import numpy as np
from numba import njit

from config.experiment import MatrixMode
from models.graph import DirectedGraph
from models.state import SpinState
from utils.errors import ContractViolationError

logger = logging.getLogger(__name__)

ZERO_TOLERANCE = 1e-12


@njit(cache=True, nogil=True)
def _influence(in_indptr, in_indices, in_weights, sigma, node):
    z = 0.0
    scale = 0.0
    for k in range(in_indptr[node], in_indptr[node + 1]):
        z += sigma[in_indices[k]] * in_weights[k]
        scale += abs(in_weights[k])
    if abs(z) <= ZERO_TOLERANCE * scale:
        return 0.0
    return z


@njit(cache=True, nogil=True)
def _sweep_kernel(in_indptr, in_indices, in_weights, sigma, order, threshold):
    flips = 0
    for position in range(order.shape[0]):
        node = order[position]
        z = _influence(in_indptr, in_indices, in_weights, sigma, node)
        if z > threshold:
            new_spin = 1
        elif z < 0.0:
            new_spin = -1
        else:
            continue
        if sigma[node] != new_spin:
            sigma[node] = new_spin
            flips += 1
    return flips


def influence_weights(graph: DirectedGraph, matrix_mode: MatrixMode) -> np.ndarray:
    """
    Weight of every in-edge, aligned with graph.in_indices.

    Dangling sources would get weight 0 in STOCHASTIC mode, but a node without out-links never
    appears as an in-neighbor, so every weight is 1 / k_j > 0 in practice.
    """
    if matrix_mode == MatrixMode.ADJACENCY:
        return np.ones(graph.n_edges, dtype=np.float64)

    degree = graph.out_degree[graph.in_indices].astype(np.float64)
    weights = np.zeros_like(degree)
    np.divide(1.0, degree, out=weights, where=degree > 0)
    return weights


def influence_score(
    graph: DirectedGraph,
    sigma: np.ndarray,
    node: int,
    matrix_mode: MatrixMode = MatrixMode.ADJACENCY,
    weights: Optional[np.ndarray] = None,
) -> float:
    """Z_i of one node on the current spins."""
    if weights is None:
        weights = influence_weights(graph, matrix_mode)
    return float(
        _influence(graph.in_indptr, graph.in_indices, weights, np.asarray(sigma), int(node))
    )


def check_permutation(state: SpinState, permutation: np.ndarray) -> None:
    """
    Verify that permutation visits every free node exactly once.

    Raises:
        ContractViolationError: On fixed nodes, repeats or missing free nodes
    """
    permutation = np.asarray(permutation)
    if permutation.size and state.fixed_mask[permutation].any():
        fixed = permutation[state.fixed_mask[permutation]]
        raise ContractViolationError(f"Sweep order contains fixed nodes: {fixed[:10].tolist()}")
    free = state.free_nodes
    if permutation.shape[0] != free.shape[0] or not np.array_equal(np.sort(permutation), free):
        raise ContractViolationError(
            "Sweep order must list every non-fixed node exactly once "
            f"({permutation.shape[0]} given, {free.shape[0]} free)"
        )


def run_sweep(
    graph: DirectedGraph,
    sigma: np.ndarray,
    permutation: np.ndarray,
    weights: np.ndarray,
    threshold: float = 0.0,
) -> int:
    """Unchecked in-place sweep over prepared arrays; returns the flip count."""
    return int(
        _sweep_kernel(graph.in_indptr, graph.in_indices, weights, sigma, permutation, threshold)
    )


def sweep(
    graph: DirectedGraph,
    state: SpinState,
    permutation: np.ndarray,
    matrix_mode: MatrixMode = MatrixMode.ADJACENCY,
    threshold: float = 0.0,
    weights: Optional[np.ndarray] = None,
) -> int:
    """
    Visit the free nodes in permutation order, updating spins in place.

    Each visit reads Z_i on the current state, so updates earlier in the sweep are seen by
    later nodes.

    Returns:
        Number of visits that changed sigma_i

    Raises:
        ContractViolationError: If permutation is not exactly the free node set
    """
    permutation = np.ascontiguousarray(permutation, dtype=np.int64)
    check_permutation(state, permutation)
    if weights is None:
        weights = influence_weights(graph, matrix_mode)
    return run_sweep(graph, state.sigma, permutation, weights, threshold)
