from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
import scipy.sparse as sp

INDEX_DTYPE = np.int32
OFFSET_DTYPE = np.int64


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    result = np.ascontiguousarray(array, dtype=dtype)
    result.setflags(write=False)
    return result


def title_index(titles: Sequence[str]) -> dict[str, int]:
    """Exact title to node id; first occurrence wins for repeated titles."""
    index: dict[str, int] = {}
    for node, name in enumerate(titles):
        index.setdefault(name, node)
    return index


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """
    Immutable directed graph stored as CSR in both orientations.

    Node ids are dense integers in [0, n_nodes). ``out_indices[out_indptr[j]:out_indptr[j+1]]``
    lists the targets of j, ``in_indices[in_indptr[i]:in_indptr[i+1]]`` lists the sources
    pointing to i. Both neighbor lists are sorted ascending.
    """

    n_nodes: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    titles: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "out_indptr", _frozen(self.out_indptr, OFFSET_DTYPE))
        object.__setattr__(self, "out_indices", _frozen(self.out_indices, INDEX_DTYPE))
        object.__setattr__(self, "in_indptr", _frozen(self.in_indptr, OFFSET_DTYPE))
        object.__setattr__(self, "in_indices", _frozen(self.in_indices, INDEX_DTYPE))
        if self.titles is not None:
            object.__setattr__(self, "titles", tuple(self.titles))

    @classmethod
    def from_edges(
        cls,
        n_nodes: int,
        sources: np.ndarray,
        targets: np.ndarray,
        titles: Optional[tuple[str, ...]] = None,
    ) -> "DirectedGraph":
        """
        Build both CSR orientations from an edge array.

        Edges must already be free of self-loops and duplicates.
        """
        sources = np.asarray(sources, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.int64)

        out_order = np.lexsort((targets, sources))
        out_indptr = np.zeros(n_nodes + 1, dtype=OFFSET_DTYPE)
        np.cumsum(np.bincount(sources, minlength=n_nodes), out=out_indptr[1:])

        in_order = np.lexsort((sources, targets))
        in_indptr = np.zeros(n_nodes + 1, dtype=OFFSET_DTYPE)
        np.cumsum(np.bincount(targets, minlength=n_nodes), out=in_indptr[1:])

        return cls(
            n_nodes=n_nodes,
            out_indptr=out_indptr,
            out_indices=targets[out_order],
            in_indptr=in_indptr,
            in_indices=sources[in_order],
            titles=titles,
        )

    @property
    def n_edges(self) -> int:
        return int(self.out_indices.shape[0])

    @cached_property
    def out_degree(self) -> np.ndarray:
        """Out-degree k_j of every node."""
        degree = np.diff(self.out_indptr)
        degree.setflags(write=False)
        return degree

    @cached_property
    def dangling_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.out_degree == 0)

    def in_neighbors(self, node: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[node] : self.in_indptr[node + 1]]

    def out_neighbors(self, node: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[node] : self.out_indptr[node + 1]]

    def out_matrix(self) -> sp.csr_matrix:
        """Adjacency as a scipy CSR matrix with rows = sources."""
        data = np.ones(self.n_edges, dtype=np.float64)
        return sp.csr_matrix(
            (data, self.out_indices, self.out_indptr), shape=(self.n_nodes, self.n_nodes)
        )

    def in_matrix(self) -> sp.csr_matrix:
        """Adjacency transposed as a scipy CSR matrix with rows = targets."""
        data = np.ones(self.n_edges, dtype=np.float64)
        return sp.csr_matrix(
            (data, self.in_indices, self.in_indptr), shape=(self.n_nodes, self.n_nodes)
        )

    def title(self, node: int) -> str:
        """Title of a node, or ``#id`` when the graph carries no titles."""
        if self.titles is not None and node < len(self.titles):
            return self.titles[node]
        return f"#{node}"

    @cached_property
    def title_index(self) -> dict[str, int]:
        return title_index(self.titles or ())

    def structurally_equal(self, other: "DirectedGraph") -> bool:
        """Compare node count, CSR arrays and titles."""
        return (
            self.n_nodes == other.n_nodes
            and np.array_equal(self.out_indptr, other.out_indptr)
            and np.array_equal(self.out_indices, other.out_indices)
            and np.array_equal(self.in_indptr, other.in_indptr)
            and np.array_equal(self.in_indices, other.in_indices)
            and self.titles == other.titles
        )

    def __repr__(self) -> str:
        return f"DirectedGraph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"


@dataclass
class LoadReport:
    """Counts collected while ingesting an edge list."""

    n_nodes: int = 0
    n_edges_kept: int = 0
    n_self_loops_dropped: int = 0
    n_duplicate_edges_merged: int = 0
    n_dangling_nodes: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        """Convert report to a JSON-ready dictionary."""
        return {
            "n_nodes": self.n_nodes,
            "n_edges_kept": self.n_edges_kept,
            "n_self_loops_dropped": self.n_self_loops_dropped,
            "n_duplicate_edges_merged": self.n_duplicate_edges_merged,
            "n_dangling_nodes": self.n_dangling_nodes,
            "warnings": list(self.warnings),
        }
