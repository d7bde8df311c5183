"""Erdős link distances from the fixed groups and the distance-resolved polarization profile."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd

from models.graph import DirectedGraph
from models.results import NodeStats
from utils.errors import ContractViolationError

logger = logging.getLogger(__name__)

UNREACHABLE = -1


class Direction(str, Enum):
    """FORWARD follows src -> dst, the direction influence travels."""

    FORWARD = "forward"
    REVERSE = "reverse"


class Diagonal(str, Enum):
    CLOSER_RED = "closer_red"
    EQUAL = "equal"
    CLOSER_BLUE = "closer_blue"


@dataclass(frozen=True)
class DistanceProfileRow:
    """Mean delta-mu of the nodes in one (d, diagonal) cell."""

    d: int
    diagonal: Diagonal
    mean_delta_mu: float
    count: int


def bfs_from_group(
    graph: DirectedGraph, group: Iterable[int], direction: Direction = Direction.FORWARD
) -> np.ndarray:
    """
    Multi-source BFS hop counts from a node group.

    Returns:
        int64 array with 0 on the group, UNREACHABLE (-1) where no path exists
    """
    sources = np.unique(np.fromiter(group, dtype=np.int64))
    if sources.size == 0:
        raise ContractViolationError("BFS needs a non-empty source group")

    matrix = graph.out_matrix() if direction == Direction.FORWARD else graph.in_matrix()
    distance = np.full(graph.n_nodes, UNREACHABLE, dtype=np.int64)
    distance[sources] = 0

    frontier = sources
    level = 0
    while frontier.size:
        level += 1
        reached = np.unique(matrix[frontier].indices)
        frontier = reached[distance[reached] == UNREACHABLE]
        distance[frontier] = level

    logger.debug(f"BFS {direction.value} from {sources.size} sources reached depth {level - 1}")
    return distance


def joint_distance_counts(d_r: np.ndarray, d_b: np.ndarray) -> dict[tuple[int, int], int]:
    """Number of nodes in every (d_r, d_b) cell, over nodes finite in both fields."""
    both = (d_r != UNREACHABLE) & (d_b != UNREACHABLE)
    pairs = np.stack((d_r[both], d_b[both]), axis=1)
    if pairs.size == 0:
        return {}
    cells, counts = np.unique(pairs, axis=0, return_counts=True)
    return {(int(r), int(b)): int(c) for (r, b), c in zip(cells, counts)}


def diagonal_mass_fraction(counts: dict[tuple[int, int], int]) -> float:
    """Share of jointly reachable nodes lying on d_b = d_r and d_b = d_r +- 1."""
    total = sum(counts.values())
    if total == 0:
        return 0.0
    on_diagonals = sum(c for (r, b), c in counts.items() if abs(r - b) <= 1)
    return on_diagonals / total


def delta_mu_by_distance(
    d_r: np.ndarray, d_b: np.ndarray, node_stats: NodeStats
) -> list[DistanceProfileRow]:
    """
    Mean delta-mu grouped by (min(d_r, d_b), sign(d_b - d_r)).

    Only nodes reachable from both groups and not persistently white are counted.
    """
    keep = (d_r != UNREACHABLE) & (d_b != UNREACHABLE) & ~node_stats.persistently_white
    d = np.minimum(d_r, d_b)[keep]
    side = np.sign(d_b - d_r)[keep]
    delta = node_stats.delta_mu[keep]

    labels = {1: Diagonal.CLOSER_RED, 0: Diagonal.EQUAL, -1: Diagonal.CLOSER_BLUE}
    rows: list[DistanceProfileRow] = []
    frame = pd.DataFrame({"d": d, "side": side, "delta": delta})
    for (distance, sign), group in frame.groupby(["d", "side"], sort=True):
        rows.append(
            DistanceProfileRow(
                d=int(distance),
                diagonal=labels[int(sign)],
                mean_delta_mu=float(group["delta"].mean()),
                count=int(group.shape[0]),
            )
        )
    return rows


def distance_table(graph: DirectedGraph, d_r: np.ndarray, d_b: np.ndarray) -> pd.DataFrame:
    """Per-node distances; unreachable cells are left empty."""
    return pd.DataFrame(
        {
            "node_id": np.arange(graph.n_nodes),
            "title": [graph.title(node) for node in range(graph.n_nodes)],
            "d_r": pd.array(np.where(d_r == UNREACHABLE, None, d_r), dtype="Int64"),
            "d_b": pd.array(np.where(d_b == UNREACHABLE, None, d_b), dtype="Int64"),
        }
    )


def joint_counts_table(counts: dict[tuple[int, int], int]) -> pd.DataFrame:
    rows = sorted(counts.items())
    return pd.DataFrame(
        {
            "d_r": [cell[0] for cell, _ in rows],
            "d_b": [cell[1] for cell, _ in rows],
            "count": [count for _, count in rows],
        }
    )


def profile_table(rows: list[DistanceProfileRow]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "d": [row.d for row in rows],
            "diagonal": [row.diagonal.value for row in rows],
            "mean_delta_mu": [row.mean_delta_mu for row in rows],
            "count": [row.count for row in rows],
        }
    )
