"""Analyze command: histograms, fluctuations, correlators and node reports."""

import argparse
import logging
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from cli.decorators import EXIT_OK, handle_errors
from config.settings import Settings
from config.storage import OutputLayout
from models.results import NodeStats, SlotSummary
from results.repository import ResultsRepository, read_covariate
from stats.correlation import CorrelationMethod, correlate_covariate, correlate_slots
from stats.fluctuations import fluctuations
from stats.histogram import (
    FR_BIN_WIDTH,
    FR_RANGE,
    MU_RANGE,
    histogram,
    histogram2d,
    histogram_table,
    mu_bin_width_for,
)
from stats.reporting import NodeSelection, report_extremes, report_nodes
from utils.errors import ResultsError, SelectionError
from utils.formatters import format_fluctuations, format_slot_correlation
from utils.validators import read_selector_file

logger = logging.getLogger(__name__)


class SlotData:
    """Lazily loaded per-node statistics of every slot in a results directory."""

    def __init__(self, repository: ResultsRepository):
        self.repository = repository
        self.summaries: list[SlotSummary] = repository.load_slot_summaries()
        self._nodes: dict[int, tuple[NodeStats, pd.DataFrame]] = {}

    def summary(self, slot_index: int) -> SlotSummary:
        for summary in self.summaries:
            if summary.slot_index == slot_index:
                return summary
        raise ResultsError(f"Slot {slot_index} not found in {self.repository.layout.root}")

    def nodes(self, slot_index: int) -> tuple[NodeStats, pd.DataFrame]:
        if slot_index not in self._nodes:
            self._nodes[slot_index] = self.repository.load_node_stats(self.summary(slot_index))
        return self._nodes[slot_index]

    def all_node_stats(self) -> list[NodeStats]:
        return [self.nodes(summary.slot_index)[0] for summary in self.summaries]


def _title_mask(frame: pd.DataFrame, titles: list[str]) -> np.ndarray:
    """Boolean node mask for exact titles; unknown titles raise SelectionError."""
    known = set(frame["title"])
    missing = [title for title in titles if title not in known]
    if missing:
        raise SelectionError(missing)
    return frame["title"].isin(titles).to_numpy()


def write_histogram(data: SlotData, slot_index: int, kind: str, bin_width: Optional[float]) -> Path:
    """f_r density over realizations or mu density over the free colored nodes."""
    if kind == "fr":
        samples = data.summary(slot_index).fr_samples
        hist = histogram(samples, bin_width or FR_BIN_WIDTH, FR_RANGE)
    else:
        node_stats, _ = data.nodes(slot_index)
        width = bin_width or mu_bin_width_for(node_stats.n_realizations)
        hist = histogram(node_stats.mu[node_stats.averaged], width, MU_RANGE)
    layout = data.repository.layout
    return data.repository.write_csv(
        histogram_table(hist), layout.analysis_path(f"histogram_{kind}_slot_{slot_index:03d}.csv")
    )


def write_slot_correlations(data: SlotData, mask: Optional[np.ndarray]) -> Path:
    mu_vectors = [stats.mu for stats in data.all_node_stats()]
    n_nodes = int(mask.sum()) if mask is not None else len(mu_vectors[0])
    results = []
    for method in CorrelationMethod:
        correlation = correlate_slots(mu_vectors, method, mask)
        print(format_slot_correlation(correlation))
        results.append(correlation.to_dict())
    layout = data.repository.layout
    return data.repository.write_json(
        {"n_nodes": n_nodes, "methods": results},
        layout.analysis_path("slot_correlations.json"),
    )


def write_slot_pair_density(data: SlotData, bin_width: Optional[float]) -> Path:
    """Sparse (mu_1, mu_2) counts for slots 0 and 1 over free nodes colored in both."""
    if len(data.summaries) < 2:
        raise ResultsError("slot-pair density needs at least 2 slots")
    first = data.summaries[0].slot_index
    second = data.summaries[1].slot_index
    stats_a, _ = data.nodes(first)
    stats_b, _ = data.nodes(second)
    keep = stats_a.averaged & stats_b.averaged
    width = bin_width or mu_bin_width_for(stats_a.n_realizations)
    cells = histogram2d(stats_a.mu[keep], stats_b.mu[keep], width, MU_RANGE)
    lo = MU_RANGE[0]
    frame = pd.DataFrame(
        [(lo + i * width, lo + j * width, count) for (i, j), count in sorted(cells.items())],
        columns=["mu_1_lo", "mu_2_lo", "count"],
    )
    layout = data.repository.layout
    return data.repository.write_csv(frame, layout.analysis_path("slot_pair_density.csv"))


@handle_errors
def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    """
    Produce the requested analysis artifacts under <results>/analysis.

    Args:
        args: Parsed arguments (see cli.parser)
        settings: Application settings
    """
    requested = (
        args.histogram,
        args.fluctuations,
        args.correlate_slots,
        args.covariate,
        args.top_k,
        args.select_titles,
        args.extremes,
        args.slot_pair_density,
    )
    if not any(item not in (None, False) for item in requested):
        raise ValueError("no analysis requested")

    layout = OutputLayout(results_dir=args.results)
    repository = ResultsRepository(layout)
    data = SlotData(repository)
    layout.ensure_directories()

    slot = args.slot
    titles = read_selector_file(args.select_titles) if args.select_titles else []
    written: list[Path] = []

    if args.histogram:
        written.append(write_histogram(data, slot, args.histogram, args.bin_width))

    if args.fluctuations:
        report = fluctuations(data.summaries, data.all_node_stats())
        print(format_fluctuations(report))
        written.append(
            repository.write_json(report.to_dict(), layout.analysis_path("fluctuations.json"))
        )

    if args.correlate_slots:
        mask = _title_mask(data.nodes(slot)[1], titles) if titles else None
        written.append(write_slot_correlations(data, mask))

    if args.covariate:
        _, frame = data.nodes(slot)
        result = correlate_covariate(frame, read_covariate(args.covariate), args.covariate_column)
        for method, value in result.coefficients.items():
            print(f"{method}: {value:.4f} ({result.n_matched} matched titles)")
        written.append(
            repository.write_json(result.to_dict(), layout.analysis_path("covariate.json"))
        )

    if args.top_k is not None or (titles and not args.correlate_slots):
        node_stats, frame = data.nodes(slot)
        if args.top_k is not None:
            selection = NodeSelection(top_k=args.top_k)
        else:
            selection = NodeSelection(titles=titles)
        pagerank = repository.load_pagerank()
        rows = report_nodes(node_stats, pagerank, selection, frame["title"].tolist())
        written.append(repository.write_csv(rows, layout.analysis_path("nodes.csv")))

    if args.extremes:
        node_stats, frame = data.nodes(slot)
        pagerank = repository.load_pagerank()
        rows = report_extremes(node_stats, pagerank, args.extremes, frame["title"].tolist())
        written.append(repository.write_csv(rows, layout.analysis_path("extremes.csv")))

    if args.slot_pair_density:
        written.append(write_slot_pair_density(data, args.bin_width))

    for path in written:
        logger.info(f"Wrote {path}")
    return EXIT_OK
