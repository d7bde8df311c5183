from pathlib import Path

from pydantic import BaseModel, Field


class OutputLayout(BaseModel):
    """File names of every artifact inside a results directory."""

    results_dir: str = Field(..., description="Directory holding one simulate run")

    @property
    def root(self) -> Path:
        return Path(self.results_dir)

    def slot_summary_path(self, slot_index: int) -> Path:
        return self.root / f"slot_{slot_index:03d}.json"

    def node_stats_path(self, slot_index: int) -> Path:
        return self.root / f"nodes_slot_{slot_index:03d}.csv"

    def realizations_path(self, slot_index: int) -> Path:
        return self.root / f"realizations_slot_{slot_index:03d}.csv"

    def trace_path(self, slot_index: int) -> Path:
        return self.root / f"trace_slot_{slot_index:03d}.csv"

    @property
    def pagerank_path(self) -> Path:
        return self.root / "pagerank.csv"

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def analysis_path(self, name: str) -> Path:
        """Analysis artifacts live in an ``analysis`` subdirectory."""
        return self.root / "analysis" / name

    def slot_summary_paths(self) -> list[Path]:
        return sorted(self.root.glob("slot_[0-9][0-9][0-9].json"))

    def ensure_directories(self) -> None:
        """Create the results directory and its analysis subdirectory."""
        (self.root / "analysis").mkdir(parents=True, exist_ok=True)
