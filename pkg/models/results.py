from dataclasses import dataclass, field
from typing import Optional

import numpy as np


def fraction_red(n_red: int, n_blue: int) -> float:
    """Red share of the colored free nodes; a state with none colored counts as balanced."""
    colored = n_red + n_blue
    return n_red / colored if colored else 0.5


@dataclass(frozen=True, eq=False)
class PageRankResult:
    """PageRank vector and the rank index K derived from it."""

    p: np.ndarray
    k_index: np.ndarray
    alpha: float
    iterations: int
    residual: float

    @property
    def order(self) -> np.ndarray:
        """Node ids sorted by K (K=1 first)."""
        return np.argsort(self.k_index, kind="stable")


@dataclass(eq=False)
class RealizationResult:
    """
    Final state of one Monte Carlo pathway.

    n_red, n_blue and n_white count free nodes only, so f_r is the red share of the colored
    free nodes.
    """

    slot_index: int
    realization_index: int
    seed: int
    final_sigma: np.ndarray
    n_red: int
    n_blue: int
    n_white: int
    sweeps_run: int
    fr_trace: tuple[float, ...] = ()

    @property
    def f_r(self) -> float:
        return fraction_red(self.n_red, self.n_blue)

    @property
    def f_b(self) -> float:
        return 1.0 - self.f_r

    @property
    def mu(self) -> float:
        """Global polarization of this realization, 2 f_r - 1."""
        return 2.0 * self.f_r - 1.0


@dataclass
class Histogram:
    """Fixed-width histogram with density normalization sum(density * width) = 1."""

    width: float
    lo: float
    hi: float
    counts: list[int]
    density: list[float]

    @property
    def edges(self) -> list[float]:
        return [self.lo + k * self.width for k in range(len(self.counts) + 1)]

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "lo": self.lo,
            "hi": self.hi,
            "counts": list(self.counts),
            "density": list(self.density),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Histogram":
        return cls(
            width=float(data["width"]),
            lo=float(data["lo"]),
            hi=float(data.get("hi", data["lo"] + data["width"] * len(data["counts"]))),
            counts=[int(c) for c in data["counts"]],
            density=[float(d) for d in data["density"]],
        )


@dataclass(eq=False)
class NodeStats:
    """
    Per-node polarization over one slot.

    A node that ends white in a realization contributes sigma = 0 to its mean, so a node that
    is sometimes white and sometimes red gets a fractional mu. fixed_mask marks the red and
    blue groups when known; they stay in the table but not in mu_0.
    """

    mu: np.ndarray
    white_freq: np.ndarray
    red_freq: np.ndarray
    mu_0: float
    n_realizations: int
    fixed_mask: Optional[np.ndarray] = None

    @property
    def delta_mu(self) -> np.ndarray:
        return self.mu - self.mu_0

    @property
    def persistently_white(self) -> np.ndarray:
        return self.white_freq >= 1.0

    @property
    def averaged(self) -> np.ndarray:
        """Free nodes colored in at least one realization, the set mu_0 averages over."""
        if self.fixed_mask is None:
            return ~self.persistently_white
        return ~self.persistently_white & ~self.fixed_mask

    @property
    def n_nodes(self) -> int:
        return int(self.mu.shape[0])


@dataclass
class SlotSummary:
    """Global statistics of one slot of realizations."""

    slot_index: int
    n_realizations: int
    mu_0: float
    mu_0_realization: float
    mean_fr: float
    isolated_fraction: float
    fr_samples: list[float]
    fr_histogram: Histogram
    mu_histogram: Histogram

    def to_dict(self) -> dict:
        """Convert summary to the slot JSON layout."""
        return {
            "slot_index": self.slot_index,
            "n_realizations": self.n_realizations,
            "mu_0": self.mu_0,
            "mu_0_realization": self.mu_0_realization,
            "mean_fr": self.mean_fr,
            "isolated_fraction": self.isolated_fraction,
            "fr_samples": list(self.fr_samples),
            "fr_histogram": self.fr_histogram.to_dict(),
            "mu_histogram": self.mu_histogram.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SlotSummary":
        return cls(
            slot_index=int(data["slot_index"]),
            n_realizations=int(data["n_realizations"]),
            mu_0=float(data["mu_0"]),
            mu_0_realization=float(data["mu_0_realization"]),
            mean_fr=float(data["mean_fr"]),
            isolated_fraction=float(data["isolated_fraction"]),
            fr_samples=[float(x) for x in data["fr_samples"]],
            fr_histogram=Histogram.from_dict(data["fr_histogram"]),
            mu_histogram=Histogram.from_dict(data["mu_histogram"]),
        )


@dataclass
class FluctuationReport:
    """Slot-to-slot spread of the global and per-node polarization."""

    sigma_0: float
    sigma_mu: float
    n_slots: int
    per_slot_mu0: list[float]

    def to_dict(self) -> dict:
        return {
            "sigma_0": self.sigma_0,
            "sigma_mu": self.sigma_mu,
            "n_slots": self.n_slots,
            "per_slot_mu0": list(self.per_slot_mu0),
        }


@dataclass
class PowerLawFit:
    """Least-squares fit sigma ~ prefactor * N_r ** exponent."""

    exponent: float
    prefactor: float
    exponent_stderr: float
    n_points: int

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "prefactor": self.prefactor,
            "exponent_stderr": self.exponent_stderr,
            "n_points": self.n_points,
        }


@dataclass
class RunManifest:
    """Everything needed to reproduce a simulate run."""

    tool_version: str
    config: dict
    graph_path: str
    graph_checksum: str
    master_seed: int
    pagerank: dict = field(default_factory=dict)
    slot_outputs: dict[str, list[str]] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    library_versions: dict[str, str] = field(default_factory=dict)
    started_at: Optional[str] = None
    finished_at: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "config": self.config,
            "graph_path": self.graph_path,
            "graph_checksum": self.graph_checksum,
            "master_seed": self.master_seed,
            "pagerank": self.pagerank,
            "slot_outputs": self.slot_outputs,
            "timings": self.timings,
            "library_versions": self.library_versions,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        return cls(
            tool_version=data.get("tool_version", ""),
            config=data.get("config", {}),
            graph_path=data.get("graph_path", ""),
            graph_checksum=data.get("graph_checksum", ""),
            master_seed=int(data.get("master_seed", 0)),
            pagerank=data.get("pagerank", {}),
            slot_outputs=data.get("slot_outputs", {}),
            timings=data.get("timings", {}),
            library_versions=data.get("library_versions", {}),
            started_at=data.get("started_at"),
            finished_at=data.get("finished_at"),
        )
