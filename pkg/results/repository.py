"""Repository layer for results directories (slot JSON, per-node CSV, manifest)."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd

from config.storage import OutputLayout
from models.results import NodeStats, PageRankResult, RealizationResult, RunManifest, SlotSummary
from utils.errors import ResultsError

logger = logging.getLogger(__name__)


def realization_table(results: list[RealizationResult]) -> pd.DataFrame:
    """Raw per-realization dump, one row per realization."""
    return pd.DataFrame(
        {
            "realization_index": [r.realization_index for r in results],
            "seed": [str(r.seed) for r in results],
            "f_r": [r.f_r for r in results],
            "n_white": [r.n_white for r in results],
            "sweeps_run": [r.sweeps_run for r in results],
        }
    )


def trace_table(results: list[RealizationResult]) -> pd.DataFrame:
    """f_r after every sweep, long format (realization_index, tau, f_r)."""
    rows = [
        (r.realization_index, tau, fr)
        for r in results
        for tau, fr in enumerate(r.fr_trace, start=1)
    ]
    return pd.DataFrame(rows, columns=["realization_index", "tau", "f_r"])


def _atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_name(path.name + ".tmp")
    with open(tmp_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    os.replace(tmp_path, path)


class ResultsRepository:
    """Reads and writes every artifact of one results directory."""

    def __init__(self, layout: OutputLayout):
        """
        Initialize repository with a directory layout.

        Args:
            layout: OutputLayout naming the files of the results directory
        """
        self.layout = layout

    def write_csv(self, frame: pd.DataFrame, path: Path) -> Path:
        """Write a table as UTF-8 CSV with LF line endings."""
        _atomic_write_text(path, frame.to_csv(index=False, lineterminator="\n"))
        logger.debug(f"Wrote {len(frame)} rows to {path}")
        return path

    def write_json(self, data: Any, path: Path) -> Path:
        _atomic_write_text(path, json.dumps(data, indent=2, ensure_ascii=False) + "\n")
        logger.debug(f"Wrote {path}")
        return path

    def save_slot(self, summary: SlotSummary, node_frame: pd.DataFrame) -> list[Path]:
        """
        Store the summary JSON and per-node CSV of one slot.

        Returns:
            Paths written, summary first
        """
        summary_path = self.write_json(
            summary.to_dict(), self.layout.slot_summary_path(summary.slot_index)
        )
        nodes_path = self.write_csv(node_frame, self.layout.node_stats_path(summary.slot_index))
        logger.info(f"Saved slot {summary.slot_index} to {summary_path.parent}")
        return [summary_path, nodes_path]

    def load_slot_summaries(self) -> list[SlotSummary]:
        """
        Load every slot summary ordered by slot index.

        Raises:
            ResultsError: If the directory holds no slot, or slots listed in the manifest
                are missing
        """
        paths = self.layout.slot_summary_paths()
        if not paths:
            raise ResultsError(f"No slot summaries found in {self.layout.root}")

        summaries = []
        for path in paths:
            try:
                with open(path, encoding="utf-8") as f:
                    summaries.append(SlotSummary.from_dict(json.load(f)))
            except (json.JSONDecodeError, KeyError) as e:
                logger.error(f"Failed to read slot summary {path}: {e}")
                raise ResultsError(f"Corrupt slot summary {path}: {e}") from e
        summaries.sort(key=lambda s: s.slot_index)

        if self.layout.manifest_path.exists():
            manifest = self.load_manifest()
            expected = int(manifest.config.get("n_slots", len(summaries)))
            found = {s.slot_index for s in summaries}
            missing = sorted(set(range(expected)) - found)
            if missing:
                raise ResultsError(f"Missing slot files for slots {missing} in {self.layout.root}")
        return summaries

    def load_node_table(self, slot_index: int) -> pd.DataFrame:
        """Read the per-node CSV of one slot, ordered by node id."""
        path = self.layout.node_stats_path(slot_index)
        if not path.exists():
            raise ResultsError(f"Missing per-node file {path}")
        frame = pd.read_csv(
            path, keep_default_na=False, dtype={"title": str}, float_precision="round_trip"
        )
        return frame.sort_values("node_id", kind="stable").reset_index(drop=True)

    def load_fixed_mask(self, n_nodes: int) -> Optional[np.ndarray]:
        """Mask of the red and blue groups recorded in the manifest, if there is one."""
        if not self.layout.manifest_path.exists():
            return None
        config = self.load_manifest().config
        fixed = [int(node) for node in config.get("red_nodes", []) + config.get("blue_nodes", [])]
        if any(node >= n_nodes for node in fixed):
            raise ResultsError(f"Manifest groups do not fit the {n_nodes}-node tables")
        mask = np.zeros(n_nodes, dtype=np.bool_)
        mask[fixed] = True
        return mask

    def load_node_stats(self, summary: SlotSummary) -> tuple[NodeStats, pd.DataFrame]:
        """Rebuild NodeStats of one slot from its CSV, summary and manifest groups."""
        frame = self.load_node_table(summary.slot_index)
        node_stats = NodeStats(
            mu=frame["mu"].to_numpy(dtype=np.float64),
            white_freq=frame["white_freq"].to_numpy(dtype=np.float64),
            red_freq=frame["red_freq"].to_numpy(dtype=np.float64),
            mu_0=summary.mu_0,
            n_realizations=summary.n_realizations,
            fixed_mask=self.load_fixed_mask(len(frame)),
        )
        return node_stats, frame

    def load_pagerank(self) -> PageRankResult:
        """Rebuild the PageRank result stored next to the slot files."""
        path = self.layout.pagerank_path
        if not path.exists():
            raise ResultsError(f"Missing PageRank table {path}")
        frame = pd.read_csv(
            path, keep_default_na=False, dtype={"title": str}, float_precision="round_trip"
        ).sort_values("node_id", kind="stable")
        details = self.load_manifest().pagerank if self.layout.manifest_path.exists() else {}
        return PageRankResult(
            p=frame["p"].to_numpy(dtype=np.float64),
            k_index=frame["k_index"].to_numpy(dtype=np.int64),
            alpha=float(details.get("alpha", 0.85)),
            iterations=int(details.get("iterations", 0)),
            residual=float(details.get("residual", 0.0)),
        )

    def write_manifest(self, manifest: RunManifest) -> Path:
        """Write the run manifest atomically."""
        path = self.write_json(manifest.to_dict(), self.layout.manifest_path)
        logger.info(f"Run manifest written to {path}")
        return path

    def load_manifest(self) -> RunManifest:
        path = self.layout.manifest_path
        if not path.exists():
            raise ResultsError(f"Missing run manifest {path}")
        with open(path, encoding="utf-8") as f:
            return RunManifest.from_dict(json.load(f))


def read_covariate(path: Path) -> pd.DataFrame:
    """
    Read a title,value covariate CSV; a header row is detected and skipped.

    Raises:
        ResultsError: If the file does not have two columns or values are not numeric
    """
    frame = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, encoding="utf-8")
    if frame.shape[1] < 2:
        raise ResultsError(f"Covariate file {path} needs title,value columns")
    frame = frame.iloc[:, :2]
    frame.columns = ["title", "value"]
    values = pd.to_numeric(frame["value"], errors="coerce")
    if len(frame) and pd.isna(values.iloc[0]):
        frame, values = frame.iloc[1:], values.iloc[1:]
    if values.isna().any():
        bad = frame.loc[values.isna(), "title"].tolist()[:5]
        raise ResultsError(f"Non-numeric covariate values for {bad}")
    return pd.DataFrame({"title": frame["title"].to_numpy(), "value": values.to_numpy(dtype=float)})
