"""Shared fixtures for all tests."""

import networkx as nx
import numpy as np
import pytest

from config.experiment import ExperimentConfig, MatrixMode
from config.settings import LoggingConfig, RuntimeConfig, Settings
from models.graph import DirectedGraph
from models.results import RealizationResult


def graph_from_edges(n_nodes, edges, titles=None):
    """Build a DirectedGraph from a list of (src, dst) pairs."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return DirectedGraph.from_edges(n_nodes, edges[:, 0], edges[:, 1], titles=titles)


def graph_from_networkx(nx_graph):
    """Simple DirectedGraph from a networkx digraph (self-loops and multi-edges dropped)."""
    simple = nx.DiGraph(nx_graph)
    simple.remove_edges_from(nx.selfloop_edges(simple))
    edges = sorted(simple.edges())
    if not edges:
        return graph_from_edges(simple.number_of_nodes(), np.empty((0, 2)))
    return graph_from_edges(simple.number_of_nodes(), edges)


def make_result(sigma, realization_index=0, slot_index=0, seed=0):
    """RealizationResult for a hand-written final state."""
    sigma = np.asarray(sigma, dtype=np.int8)
    n_red = int(np.count_nonzero(sigma == 1))
    n_blue = int(np.count_nonzero(sigma == -1))
    return RealizationResult(
        slot_index=slot_index,
        realization_index=realization_index,
        seed=seed,
        final_sigma=sigma,
        n_red=n_red,
        n_blue=n_blue,
        n_white=int(sigma.shape[0]) - n_red - n_blue,
        sweeps_run=1,
    )


@pytest.fixture
def test_settings(tmp_path):
    """Create test settings."""
    return Settings(
        runtime=RuntimeConfig(threads=2, debug=True),
        logging=LoggingConfig(log_level="INFO", log_file=str(tmp_path / "test.log")),
    )


@pytest.fixture
def hub_graph():
    """
    Red hub 0 pointing to 1, 2, 3; blue node 4 without links.

    Every free node is forced red in the first sweep.
    """
    return graph_from_edges(
        5,
        [(0, 1), (0, 2), (0, 3)],
        titles=("Socialism", "Alpha", "Beta", "Gamma", "Capitalism"),
    )


@pytest.fixture
def hub_config():
    return ExperimentConfig(red_nodes=[0], blue_nodes=[4], n_realizations=10, master_seed=7)


@pytest.fixture
def chain_graph():
    """Chain 0 -> 1 -> 2 -> 3 plus an isolated node 4."""
    return graph_from_edges(5, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def contested_graph():
    """
    Red 0 and blue 1 competing for four free nodes.

    Red reaches 2, blue reaches 3; node 4 reads 2, 3 and 5; node 5 reads 3 and 4. The final
    colors of 4 and 5 depend on the sweep order.
    """
    return graph_from_edges(
        6,
        [(0, 2), (1, 3), (2, 4), (3, 4), (5, 4), (3, 5), (4, 5)],
    )


@pytest.fixture
def contested_config():
    return ExperimentConfig(
        red_nodes=[0],
        blue_nodes=[1],
        matrix_mode=MatrixMode.ADJACENCY,
        tau_max=20,
        n_realizations=200,
        n_slots=2,
        master_seed=2024,
    )


@pytest.fixture
def random_graph():
    """Sparse Erdős–Rényi digraph with 200 nodes."""
    return graph_from_networkx(nx.gnp_random_graph(200, 0.03, seed=3, directed=True))


@pytest.fixture
def edge_file(tmp_path):
    """Write edge and title files and return their paths."""

    def _write(edges_text, titles=None):
        edges_path = tmp_path / "edges.txt"
        edges_path.write_text(edges_text, encoding="utf-8")
        titles_path = None
        if titles is not None:
            titles_path = tmp_path / "titles.txt"
            titles_path.write_text("\n".join(titles) + "\n", encoding="utf-8")
        return edges_path, titles_path

    return _write
