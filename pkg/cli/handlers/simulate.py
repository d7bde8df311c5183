"""Simulate command: PageRank, Monte Carlo slots and the run manifest."""

import argparse
import logging
import time
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numba
import numpy as np
import pandas as pd
import pydantic
import scipy

from cli.decorators import EXIT_OK, handle_errors
from config.experiment import ExperimentConfig, ExperimentFile
from config.settings import TOOL_VERSION, Settings
from config.storage import OutputLayout
from engine.runner import SpinDynamics, run_slot
from graph.pagerank import compute_pagerank, pagerank_table
from graph.storage import graph_checksum, load_binary
from models.graph import DirectedGraph
from models.results import PageRankResult, RealizationResult, RunManifest
from results.repository import ResultsRepository, realization_table, trace_table
from stats.aggregate import NodeAccumulator
from stats.reporting import node_table
from utils.formatters import format_slot_summary
from utils.validators import resolve_selectors

logger = logging.getLogger(__name__)

_NO_SIGMA = np.empty(0, dtype=np.int8)


def experiment_from_args(args: argparse.Namespace) -> ExperimentFile:
    """
    Build the experiment from an optional JSON file and command-line overrides.

    Flags left unset on the command line keep the file value.
    """
    base = ExperimentFile.load(args.config) if args.config else ExperimentFile()
    overrides: dict[str, Any] = {
        "graph": args.graph,
        "red": args.red,
        "blue": args.blue,
        "matrix": args.matrix,
        "tau": args.tau,
        "realizations": args.realizations,
        "slots": args.slots,
        "seed": args.seed,
        "out": args.out,
        "threads": args.threads,
        "early_stop": args.early_stop,
        "flip_threshold": args.flip_threshold,
        "dump_realizations": args.dump_realizations,
        "trace": args.trace,
    }
    experiment = base.merged_with(overrides)
    if not experiment.graph:
        raise ValueError("a graph cache is required (--graph or \"graph\" in --config)")
    if not experiment.out:
        raise ValueError("an output directory is required (--out or \"out\" in --config)")
    return experiment


def resolve_groups(graph: DirectedGraph, experiment: ExperimentFile) -> tuple[list[int], list[int]]:
    """Resolve red and blue selectors together so every miss is reported at once."""
    if not experiment.red or not experiment.blue:
        raise ValueError("both --red and --blue need at least one selector")
    ids = resolve_selectors(graph, experiment.red + experiment.blue)
    return ids[: len(experiment.red)], ids[len(experiment.red) :]


def library_versions() -> dict[str, str]:
    return {
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "numba": numba.__version__,
        "pandas": pd.__version__,
        "pydantic": pydantic.VERSION,
    }


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def simulate_slots(
    graph: DirectedGraph,
    config: ExperimentConfig,
    repository: ResultsRepository,
    pagerank: PageRankResult,
    threads: int,
    dump_realizations: bool = False,
) -> tuple[dict[str, list[str]], dict[str, float]]:
    """
    Run every slot and store its artifacts.

    Returns:
        Tuple of (output paths per slot, seconds per slot)
    """
    layout = repository.layout
    titles = graph.titles or ()
    dynamics = SpinDynamics.from_config(graph, config)

    slot_outputs: dict[str, list[str]] = {}
    timings: dict[str, float] = {}
    for slot_index in range(config.n_slots):
        started = time.monotonic()
        accumulator = NodeAccumulator(graph.n_nodes, slot_index, dynamics.initial.fixed_mask)
        kept: list[RealizationResult] = []
        for result in run_slot(graph, config, slot_index, threads=threads, dynamics=dynamics):
            accumulator.add(result)
            if dump_realizations or config.record_trace:
                kept.append(replace(result, final_sigma=_NO_SIGMA))

        node_stats, summary = accumulator.finalize()
        paths = repository.save_slot(summary, node_table(node_stats, pagerank, titles))
        if dump_realizations:
            paths.append(
                repository.write_csv(realization_table(kept), layout.realizations_path(slot_index))
            )
        if config.record_trace:
            paths.append(repository.write_csv(trace_table(kept), layout.trace_path(slot_index)))

        slot_outputs[str(slot_index)] = [path.name for path in paths]
        timings[f"slot_{slot_index:03d}"] = round(time.monotonic() - started, 3)
        print(format_slot_summary(summary))

    return slot_outputs, timings


@handle_errors
def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    """
    Run the Monte Carlo experiment and write a results directory.

    Args:
        args: Parsed arguments (see cli.parser)
        settings: Application settings (thread fallback, debug checks)
    """
    started_at = _utc_now()
    experiment = experiment_from_args(args)
    threads = experiment.threads or settings.runtime.threads

    graph_path = Path(experiment.graph)  # type: ignore[arg-type]
    graph = load_binary(graph_path)
    red_nodes, blue_nodes = resolve_groups(graph, experiment)
    config = experiment.to_config(red_nodes, blue_nodes).model_copy(
        update={"check_invariants": settings.runtime.debug}
    )
    logger.info(
        f"Simulating {config.n_slots} slot(s) x {config.n_realizations} realizations, "
        f"tau={config.tau_max}, matrix={config.matrix_mode.value}, threads={threads}"
    )

    layout = OutputLayout(results_dir=experiment.out)  # type: ignore[arg-type]
    layout.ensure_directories()
    repository = ResultsRepository(layout)

    pagerank_started = time.monotonic()
    pagerank = compute_pagerank(graph)
    repository.write_csv(pagerank_table(graph, pagerank), layout.pagerank_path)
    pagerank_seconds = round(time.monotonic() - pagerank_started, 3)

    manifest = RunManifest(
        tool_version=TOOL_VERSION,
        config={
            **config.model_dump(mode="json"),
            "red_selectors": experiment.red,
            "blue_selectors": experiment.blue,
            "dump_realizations": experiment.dump_realizations,
        },
        graph_path=str(graph_path),
        graph_checksum=graph_checksum(graph_path),
        master_seed=config.master_seed,
        pagerank={
            "alpha": pagerank.alpha,
            "iterations": pagerank.iterations,
            "residual": pagerank.residual,
        },
        library_versions=library_versions(),
        started_at=started_at,
    )
    repository.write_manifest(manifest)

    slot_outputs, timings = simulate_slots(
        graph, config, repository, pagerank, threads, experiment.dump_realizations
    )
    manifest.slot_outputs = slot_outputs
    manifest.timings = {"pagerank": pagerank_seconds, **timings}
    manifest.finished_at = _utc_now()
    repository.write_manifest(manifest)
    return EXIT_OK
