"""Per-node accumulation of realization results into slot statistics."""

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.results import NodeStats, RealizationResult, SlotSummary
from models.state import RED, WHITE
from stats.histogram import FR_BIN_WIDTH, FR_RANGE, MU_RANGE, histogram, mu_bin_width_for
from utils.errors import StatsError

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class NodeAccumulator:
    """
    Integer running sums over realizations of one slot.

    add and merge commute, so results can be folded in any order or by several workers.
    f_r samples are keyed by realization index for the same reason. fixed_mask marks the
    red and blue groups, which are summed like any node but left out of mu_0.
    """

    n_nodes: int
    slot_index: int = 0
    fixed_mask: Optional[np.ndarray] = None
    sigma_sum: np.ndarray = field(init=False)
    red_count: np.ndarray = field(init=False)
    white_count: np.ndarray = field(init=False)
    fr_samples: dict[int, float] = field(default_factory=dict, init=False)

    def __post_init__(self) -> None:
        if self.fixed_mask is None:
            self.fixed_mask = np.zeros(self.n_nodes, dtype=np.bool_)
        elif self.fixed_mask.shape != (self.n_nodes,):
            raise StatsError(
                f"fixed mask has shape {self.fixed_mask.shape}, expected ({self.n_nodes},)"
            )
        self.sigma_sum = np.zeros(self.n_nodes, dtype=np.int64)
        self.red_count = np.zeros(self.n_nodes, dtype=np.int64)
        self.white_count = np.zeros(self.n_nodes, dtype=np.int64)

    @property
    def count(self) -> int:
        return len(self.fr_samples)

    def add(self, result: RealizationResult) -> None:
        """Fold one realization into the sums."""
        if result.final_sigma.shape[0] != self.n_nodes:
            raise StatsError(
                f"realization has {result.final_sigma.shape[0]} nodes, expected {self.n_nodes}"
            )
        if result.realization_index in self.fr_samples:
            raise StatsError(f"realization {result.realization_index} added twice")
        sigma = result.final_sigma
        self.sigma_sum += sigma
        self.red_count += sigma == RED
        self.white_count += sigma == WHITE
        self.fr_samples[result.realization_index] = result.f_r

    def merge(self, other: "NodeAccumulator") -> "NodeAccumulator":
        """Combine two partial accumulators over disjoint realizations."""
        if other.n_nodes != self.n_nodes:
            raise StatsError("cannot merge accumulators of different graphs")
        if not np.array_equal(self.fixed_mask, other.fixed_mask):
            raise StatsError("cannot merge accumulators with different fixed groups")
        overlap = self.fr_samples.keys() & other.fr_samples.keys()
        if overlap:
            raise StatsError(f"realizations counted twice: {sorted(overlap)[:10]}")
        merged = NodeAccumulator(self.n_nodes, self.slot_index, self.fixed_mask)
        merged.sigma_sum = self.sigma_sum + other.sigma_sum
        merged.red_count = self.red_count + other.red_count
        merged.white_count = self.white_count + other.white_count
        merged.fr_samples = {**self.fr_samples, **other.fr_samples}
        return merged

    def finalize(self, mu_bin_width: Optional[float] = None) -> tuple[NodeStats, SlotSummary]:
        """
        Turn the sums into NodeStats and a SlotSummary.

        mu_0 averages mu_i over free nodes that were colored in at least one realization.
        The mu bin width defaults to the finer long-run width for large slots.

        Raises:
            StatsError: If no realization was added
        """
        n_r = self.count
        if n_r == 0:
            raise StatsError("cannot aggregate an empty stream of realizations")

        mu = self.sigma_sum / n_r
        white_freq = self.white_count / n_r
        red_freq = self.red_count / n_r

        node_stats = NodeStats(
            mu=mu,
            white_freq=white_freq,
            red_freq=red_freq,
            mu_0=0.0,
            n_realizations=n_r,
            fixed_mask=self.fixed_mask,
        )
        averaged = node_stats.averaged
        n_averaged = int(np.count_nonzero(averaged))
        node_stats.mu_0 = math.fsum(mu[averaged]) / n_averaged if n_averaged else 0.0
        n_isolated = int(np.count_nonzero(node_stats.persistently_white))
        isolated_fraction = n_isolated / self.n_nodes if self.n_nodes else 0.0

        fr_samples = [self.fr_samples[index] for index in sorted(self.fr_samples)]
        mu_0_realization = math.fsum(2.0 * fr - 1.0 for fr in fr_samples) / n_r

        summary = SlotSummary(
            slot_index=self.slot_index,
            n_realizations=n_r,
            mu_0=node_stats.mu_0,
            mu_0_realization=mu_0_realization,
            mean_fr=math.fsum(fr_samples) / n_r,
            isolated_fraction=isolated_fraction,
            fr_samples=fr_samples,
            fr_histogram=histogram(fr_samples, FR_BIN_WIDTH, FR_RANGE),
            mu_histogram=histogram(
                mu[averaged] if n_averaged else mu,
                mu_bin_width or mu_bin_width_for(n_r),
                MU_RANGE,
            ),
        )
        logger.info(
            f"Slot {self.slot_index}: mu_0={node_stats.mu_0:.4f}, "
            f"isolated fraction={isolated_fraction:.4f}, N_r={n_r}"
        )
        return node_stats, summary


def aggregate_nodes(
    results: Iterable[RealizationResult],
    mu_bin_width: Optional[float] = None,
    fixed_mask: Optional[np.ndarray] = None,
) -> tuple[NodeStats, SlotSummary]:
    """
    Average a stream of realizations into per-node and slot statistics.

    White counts as sigma = 0 in mu_i. Persistently white nodes make up the isolated fraction.
    mu_0 leaves them out, together with the nodes in fixed_mask.

    Raises:
        StatsError: If the stream is empty or mixes slots or graph sizes
    """
    accumulator: Optional[NodeAccumulator] = None
    for result in results:
        if accumulator is None:
            accumulator = NodeAccumulator(
                result.final_sigma.shape[0], result.slot_index, fixed_mask
            )
        elif result.slot_index != accumulator.slot_index:
            raise StatsError(
                f"stream mixes slots {accumulator.slot_index} and {result.slot_index}"
            )
        accumulator.add(result)
    if accumulator is None:
        raise StatsError("cannot aggregate an empty stream of realizations")
    return accumulator.finalize(mu_bin_width)
