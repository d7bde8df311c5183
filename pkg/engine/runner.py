"""Realization and slot runners."""

import logging
import time
from collections import deque
from collections.abc import Iterator
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.experiment import ExperimentConfig
from engine.dynamics import influence_weights, run_sweep
from engine.seeding import derive_seed, realization_rng
from models.graph import DirectedGraph
from models.results import RealizationResult, fraction_red
from models.state import SpinState
from utils.errors import SimulationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SpinDynamics:
    """
    Per-experiment precomputation shared read-only by every realization.

    Holds the in-edge weights for the chosen matrix mode, the white-option initial state and
    the free node list that each sweep permutes.
    """

    graph: DirectedGraph
    config: ExperimentConfig
    weights: np.ndarray
    initial: SpinState
    free_nodes: np.ndarray

    @classmethod
    def from_config(cls, graph: DirectedGraph, config: ExperimentConfig) -> "SpinDynamics":
        config.validate_for_graph(graph.n_nodes)
        initial = SpinState.white_option(graph.n_nodes, config.red_nodes, config.blue_nodes)
        initial.sigma.setflags(write=False)
        weights = influence_weights(graph, config.matrix_mode)
        weights.setflags(write=False)
        return cls(
            graph=graph,
            config=config,
            weights=weights,
            initial=initial,
            free_nodes=np.ascontiguousarray(initial.free_nodes, dtype=np.int64),
        )

    def _check_fixed(self, state: SpinState, tau: int) -> None:
        fixed = self.initial.fixed_mask
        if not np.array_equal(state.sigma[fixed], self.initial.sigma[fixed]):
            raise SimulationError(f"fixed node changed spin during sweep {tau}")

    def run(self, slot_index: int, realization_index: int) -> RealizationResult:
        """Run one realization from the white option for up to tau_max sweeps."""
        config = self.config
        seed = derive_seed(config.master_seed, slot_index, realization_index)
        rng = realization_rng(seed)
        state = self.initial.copy()

        trace: list[float] = []
        sweeps_run = 0
        for tau in range(1, config.tau_max + 1):
            permutation = rng.permutation(self.free_nodes)
            flips = run_sweep(
                self.graph, state.sigma, permutation, self.weights, config.flip_threshold
            )
            sweeps_run = tau

            if config.check_invariants:
                self._check_fixed(state, tau)
            if config.record_trace:
                n_red, n_blue, _ = state.counts()
                trace.append(fraction_red(n_red, n_blue))
            if config.early_stop and flips == 0:
                break

        n_red, n_blue, n_white = state.counts()
        if n_red + n_blue == 0:
            logger.debug(
                f"Slot {slot_index} realization {realization_index}: no free node colored"
            )

        return RealizationResult(
            slot_index=slot_index,
            realization_index=realization_index,
            seed=seed,
            final_sigma=state.sigma,
            n_red=n_red,
            n_blue=n_blue,
            n_white=n_white,
            sweeps_run=sweeps_run,
            fr_trace=tuple(trace),
        )


def run_realization(
    graph: DirectedGraph,
    config: ExperimentConfig,
    slot_index: int,
    realization_index: int,
    dynamics: Optional[SpinDynamics] = None,
) -> RealizationResult:
    """
    Run one realization, fully determined by (master_seed, slot_index, realization_index).

    Args:
        graph: Graph to simulate on
        config: Experiment configuration
        slot_index: Slot coordinate of the seed
        realization_index: Realization coordinate of the seed
        dynamics: Optional precomputed SpinDynamics for the same graph and config
    """
    if dynamics is None:
        dynamics = SpinDynamics.from_config(graph, config)
    return dynamics.run(slot_index, realization_index)


def run_slot(
    graph: DirectedGraph,
    config: ExperimentConfig,
    slot_index: int,
    threads: int = 1,
    dynamics: Optional[SpinDynamics] = None,
) -> Iterator[RealizationResult]:
    """
    Yield the n_realizations results of one slot in realization-index order.

    Realizations are spread over a thread pool (the sweep kernel releases the GIL); at most
    ``4 * threads`` finished states are held in memory at once. Output does not depend on
    ``threads``.
    """
    if dynamics is None:
        dynamics = SpinDynamics.from_config(graph, config)

    started = time.monotonic()
    total = config.n_realizations
    step = max(1, total // 10)

    def _progress(done: int) -> None:
        if done % step == 0 or done == total:
            logger.info(
                f"Slot {slot_index}: {done}/{total} realizations "
                f"({time.monotonic() - started:.1f}s)"
            )

    if threads <= 1:
        for realization_index in range(total):
            yield dynamics.run(slot_index, realization_index)
            _progress(realization_index + 1)
        return

    window = 4 * threads
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="inof") as pool:
        pending: deque[Future[RealizationResult]] = deque()
        done = 0
        for realization_index in range(total):
            pending.append(pool.submit(dynamics.run, slot_index, realization_index))
            if len(pending) >= window:
                yield pending.popleft().result()
                done += 1
                _progress(done)
        while pending:
            yield pending.popleft().result()
            done += 1
            _progress(done)
