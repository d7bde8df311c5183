"""PageRank of the Google matrix G = alpha * S + (1 - alpha) / N by power iteration."""

import logging
import math
from typing import Optional

import numpy as np
import pandas as pd

from models.graph import DirectedGraph
from models.results import PageRankResult
from utils.errors import ConvergenceError, InofError

logger = logging.getLogger(__name__)

DEFAULT_ALPHA = 0.85
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 1000


def _inverse_out_degree(graph: DirectedGraph) -> np.ndarray:
    degree = graph.out_degree.astype(np.float64)
    inverse = np.zeros_like(degree)
    np.divide(1.0, degree, out=inverse, where=degree > 0)
    return inverse


def _google_step(in_matrix, p: np.ndarray, inverse_degree, dangling, alpha: float) -> np.ndarray:
    """One multiply G p; dangling columns are uniform 1/N."""
    n = p.shape[0]
    dangling_mass = float(np.sum(p[dangling]))
    total = float(np.sum(p))
    return alpha * (in_matrix @ (p * inverse_degree)) + (
        alpha * dangling_mass + (1.0 - alpha) * total
    ) / n


def rank_index(p: np.ndarray) -> np.ndarray:
    """Rank K of every node by decreasing p; equal values order by node id."""
    n = p.shape[0]
    order = np.lexsort((np.arange(n), -p))
    k_index = np.empty(n, dtype=np.int64)
    k_index[order] = np.arange(1, n + 1)
    return k_index


def compute_pagerank(
    graph: DirectedGraph,
    alpha: float = DEFAULT_ALPHA,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    start: Optional[np.ndarray] = None,
) -> PageRankResult:
    """
    Compute the PageRank vector and rank index K.

    Power iteration from the uniform vector (or ``start``) until the L1 change drops
    below ``tol``. Dangling mass is redistributed uniformly in every iteration.

    Raises:
        InofError: If the graph is empty or alpha is outside (0, 1)
        ConvergenceError: If max_iter iterations do not reach tol
    """
    if graph.n_nodes == 0:
        raise InofError("PageRank of an empty graph is undefined")
    if not 0.0 < alpha < 1.0:
        raise InofError(f"Damping factor must lie in (0, 1), got {alpha}")
    if tol <= 0:
        raise InofError(f"Tolerance must be positive, got {tol}")

    n = graph.n_nodes
    in_matrix = graph.in_matrix()
    inverse_degree = _inverse_out_degree(graph)
    dangling = graph.out_degree == 0

    if start is None:
        p = np.full(n, 1.0 / n)
    else:
        p = np.asarray(start, dtype=np.float64) / math.fsum(start)

    residual = math.inf
    for iteration in range(1, max_iter + 1):
        p_next = _google_step(in_matrix, p, inverse_degree, dangling, alpha)
        residual = float(np.abs(p_next - p).sum())
        p = p_next
        if residual < tol:
            break
    else:
        logger.error(f"PageRank stalled at residual {residual:.3e} after {max_iter} iterations")
        raise ConvergenceError(max_iter, residual)

    p = p / math.fsum(p)
    logger.info(f"PageRank converged in {iteration} iterations (L1 change {residual:.2e})")

    return PageRankResult(
        p=p,
        k_index=rank_index(p),
        alpha=alpha,
        iterations=iteration,
        residual=residual,
    )


def google_residual(graph: DirectedGraph, p: np.ndarray, alpha: float = DEFAULT_ALPHA) -> float:
    """L1 norm of G p - p, computed with one explicit matrix-free multiply."""
    p = np.asarray(p, dtype=np.float64)
    gp = _google_step(
        graph.in_matrix(), p, _inverse_out_degree(graph), graph.out_degree == 0, alpha
    )
    return float(np.abs(gp - p).sum())


def pagerank_table(graph: DirectedGraph, result: PageRankResult) -> pd.DataFrame:
    """Rows node_id, title, p, k_index ordered by K."""
    order = result.order
    return pd.DataFrame(
        {
            "node_id": order,
            "title": [graph.title(int(node)) for node in order],
            "p": result.p[order],
            "k_index": result.k_index[order],
        }
    )
