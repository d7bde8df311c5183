"""Experiment configuration: fixed groups, update rule and Monte Carlo budget."""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from utils.validators import parse_node_selectors

MAX_SEED = (1 << 64) - 1


class MatrixMode(str, Enum):
    """ADJACENCY sums in-neighbor spins, STOCHASTIC weights them by 1 / out-degree."""

    ADJACENCY = "adjacency"
    STOCHASTIC = "stochastic"


class ExperimentConfig(BaseModel):
    """Fully resolved experiment with node ids for both fixed groups."""

    red_nodes: list[int] = Field(..., description="Node ids pinned to +1")
    blue_nodes: list[int] = Field(..., description="Node ids pinned to -1")
    matrix_mode: MatrixMode = Field(default=MatrixMode.ADJACENCY)
    tau_max: int = Field(default=20, ge=1, description="Sweeps per realization")
    n_realizations: int = Field(default=1000, ge=1, description="Realizations per slot (N_r)")
    n_slots: int = Field(default=1, ge=1)
    master_seed: int = Field(default=0, ge=0, le=MAX_SEED)
    early_stop: bool = Field(default=False)
    flip_threshold: float = Field(default=0.0, description="Red iff Z > threshold")
    record_trace: bool = Field(default=False)
    check_invariants: bool = Field(default=False)

    @field_validator("red_nodes", "blue_nodes")
    @classmethod
    def validate_group(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("fixed node groups must not be empty")
        if any(node < 0 for node in v):
            raise ValueError("node ids must be non-negative")
        return sorted(set(v))

    @field_validator("flip_threshold")
    @classmethod
    def validate_threshold(cls, v: float) -> float:
        if v not in (0.0, 1.0):
            raise ValueError("flip_threshold must be 0 or 1")
        return v

    @model_validator(mode="after")
    def validate_disjoint(self) -> "ExperimentConfig":
        overlap = set(self.red_nodes) & set(self.blue_nodes)
        if overlap:
            raise ValueError(f"red and blue groups overlap: {sorted(overlap)}")
        return self

    def validate_for_graph(self, n_nodes: int) -> None:
        """Check that every fixed node exists in a graph of n_nodes nodes."""
        out_of_range = [node for node in self.red_nodes + self.blue_nodes if node >= n_nodes]
        if out_of_range:
            raise ValueError(f"fixed node ids out of range for {n_nodes} nodes: {out_of_range}")

    @property
    def fixed_nodes(self) -> list[int]:
        return sorted(self.red_nodes + self.blue_nodes)


class ExperimentFile(BaseModel):
    """
    JSON experiment file as written by a user.

    Fixed groups are selectors: exact article titles or ``#id`` node ids. Every field can be
    overridden from the command line.
    """

    graph: Optional[str] = None
    red: list[str] = Field(default_factory=list)
    blue: list[str] = Field(default_factory=list)
    matrix: MatrixMode = MatrixMode.ADJACENCY
    tau: int = Field(default=20, ge=1)
    realizations: int = Field(default=1000, ge=1)
    slots: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    out: Optional[str] = None
    threads: Optional[int] = Field(default=None, ge=1)
    early_stop: bool = False
    flip_threshold: float = 0.0
    dump_realizations: bool = False
    trace: bool = False

    @field_validator("red", "blue", mode="before")
    @classmethod
    def split_selector_list(cls, v: Any) -> Any:
        """Accept a comma-separated string as well as a JSON list."""
        if isinstance(v, str):
            return parse_node_selectors(v)
        return v

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExperimentFile":
        """Read and validate an experiment file."""
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        return cls.model_validate(data)

    def merged_with(self, overrides: dict[str, Any]) -> "ExperimentFile":
        """Return a copy where every non-None override replaces the file value."""
        values = self.model_dump()
        values.update({key: value for key, value in overrides.items() if value is not None})
        return ExperimentFile.model_validate(values)

    def to_config(self, red_nodes: list[int], blue_nodes: list[int]) -> ExperimentConfig:
        """Build the resolved configuration once selectors are turned into ids."""
        return ExperimentConfig(
            red_nodes=red_nodes,
            blue_nodes=blue_nodes,
            matrix_mode=self.matrix,
            tau_max=self.tau,
            n_realizations=self.realizations,
            n_slots=self.slots,
            master_seed=self.seed,
            early_stop=self.early_stop,
            flip_threshold=self.flip_threshold,
            record_trace=self.trace,
        )
