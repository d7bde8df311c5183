import numpy as np
import pytest

from graph.ingest import MAX_NODE_ID, ingest_edge_list, read_titles
from models.graph import title_index
from utils.errors import GraphLoadError


class TestIngestEdgeList:
    """Unit tests for edge-list ingestion."""

    @pytest.mark.unit
    def test_chain_with_dangling_end(self, edge_file):
        """Test that '0 1 / 1 2' gives 3 nodes and one dangling node."""
        edges_path, _ = edge_file("0 1\n1 2\n")
        graph, report = ingest_edge_list(edges_path)

        assert graph.n_nodes == 3
        assert graph.out_degree.tolist() == [1, 1, 0]
        assert report.n_dangling_nodes == 1
        assert report.n_edges_kept == 2

    @pytest.mark.unit
    def test_self_loop_dropped(self, edge_file):
        """Test that self-loops are dropped and counted."""
        edges_path, _ = edge_file("0 0\n0 1\n")
        graph, report = ingest_edge_list(edges_path)

        assert report.n_self_loops_dropped == 1
        assert report.n_edges_kept == 1
        assert graph.out_neighbors(0).tolist() == [1]

    @pytest.mark.unit
    def test_duplicates_merged(self, edge_file):
        """Test that repeated edges collapse to one."""
        edges_path, _ = edge_file("0 1\n0 1\n")
        graph, report = ingest_edge_list(edges_path)

        assert report.n_duplicate_edges_merged == 1
        assert graph.out_degree[0] == 1

    @pytest.mark.unit
    def test_both_orientations_agree(self, edge_file):
        """Test that in-neighbor lists mirror the out-neighbor lists."""
        edges_path, _ = edge_file("2 0\n0 1\n1 2\n2 1\n3 1\n")
        graph, _ = ingest_edge_list(edges_path)

        out_edges = {(j, int(i)) for j in range(graph.n_nodes) for i in graph.out_neighbors(j)}
        in_edges = {(int(j), i) for i in range(graph.n_nodes) for j in graph.in_neighbors(i)}
        assert out_edges == in_edges == {(2, 0), (0, 1), (1, 2), (2, 1), (3, 1)}
        assert int(graph.out_degree.sum()) == graph.n_edges

    @pytest.mark.unit
    def test_neighbor_lists_sorted(self, edge_file):
        """Test that neighbor lists come out in ascending order."""
        edges_path, _ = edge_file("0 3\n0 1\n0 2\n")
        graph, _ = ingest_edge_list(edges_path)
        assert graph.out_neighbors(0).tolist() == [1, 2, 3]

    @pytest.mark.unit
    def test_deterministic(self, edge_file):
        """Test that the same bytes give the same CSR arrays."""
        edges_path, _ = edge_file("3 1\n0 2\n2 3\n1 0\n")
        first, _ = ingest_edge_list(edges_path)
        second, _ = ingest_edge_list(edges_path)
        assert first.structurally_equal(second)

    @pytest.mark.unit
    def test_titles_extend_node_count(self, edge_file):
        """Test that a longer titles file sets n_nodes."""
        edges_path, titles_path = edge_file("0 1\n", titles=["A", "B", "C", "D"])
        graph, report = ingest_edge_list(edges_path, titles_path)

        assert graph.n_nodes == 4
        assert graph.titles == ("A", "B", "C", "D")
        assert report.warnings == []

    @pytest.mark.unit
    def test_short_titles_file_warns(self, edge_file):
        """Test that fewer titles than nodes is a warning, not an error."""
        edges_path, titles_path = edge_file("0 1\n1 2\n", titles=["A"])
        graph, report = ingest_edge_list(edges_path, titles_path)

        assert graph.n_nodes == 3
        assert len(report.warnings) == 1
        assert graph.title(2) == "#2"

    @pytest.mark.unit
    def test_empty_file(self, edge_file):
        """Test that an empty edge list gives an empty graph."""
        edges_path, _ = edge_file("")
        graph, report = ingest_edge_list(edges_path)
        assert graph.n_nodes == 0
        assert report.n_edges_kept == 0

    @pytest.mark.unit
    def test_missing_file(self, tmp_path):
        """Test that a missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            ingest_edge_list(tmp_path / "nope.txt")

    @pytest.mark.unit
    def test_malformed_token_reports_line(self, edge_file):
        """Test that a non-integer token is reported with its line number."""
        lines = [f"{i} {i + 1}" for i in range(16)] + ["5 x"]
        edges_path, _ = edge_file("\n".join(lines) + "\n")

        with pytest.raises(GraphLoadError) as exc_info:
            ingest_edge_list(edges_path)
        assert exc_info.value.line_number == 17
        assert "line 17" in str(exc_info.value)

    @pytest.mark.unit
    def test_invalid_utf8_reports_line(self, tmp_path):
        """Test that undecodable bytes in the edge list are a load error with a line number."""
        edges_path = tmp_path / "edges.txt"
        edges_path.write_bytes(b"0 1\n1 \xff2\n2 3\n")
        with pytest.raises(GraphLoadError) as exc_info:
            ingest_edge_list(edges_path)
        assert exc_info.value.line_number == 2

    @pytest.mark.unit
    def test_extra_field_reports_line(self, edge_file):
        """Test that a line with three fields is rejected."""
        edges_path, _ = edge_file("0 1\n1 2 3\n")
        with pytest.raises(GraphLoadError) as exc_info:
            ingest_edge_list(edges_path)
        assert exc_info.value.line_number == 2

    @pytest.mark.unit
    def test_negative_id_rejected(self, edge_file):
        """Test that negative node ids are rejected."""
        edges_path, _ = edge_file("0 1\n-1 2\n")
        with pytest.raises(GraphLoadError) as exc_info:
            ingest_edge_list(edges_path)
        assert exc_info.value.line_number == 2

    @pytest.mark.unit
    def test_index_overflow_rejected(self, edge_file):
        """Test that ids beyond the index width are rejected."""
        edges_path, _ = edge_file(f"0 {MAX_NODE_ID + 1}\n")
        with pytest.raises(GraphLoadError, match="exceeds"):
            ingest_edge_list(edges_path)


class TestTitles:
    """Unit tests for titles handling."""

    @pytest.mark.unit
    def test_read_titles_keeps_spaces_and_unicode(self, tmp_path):
        """Test that titles are kept byte-exact apart from the line break."""
        path = tmp_path / "titles.txt"
        path.write_text("United States\nКоммунизм\n Leading space\n", encoding="utf-8")
        assert read_titles(path) == ("United States", "Коммунизм", " Leading space")

    @pytest.mark.unit
    def test_invalid_utf8_titles(self, tmp_path):
        """Test that an undecodable titles file is a load error naming the line."""
        path = tmp_path / "titles.txt"
        path.write_bytes(b"Alpha\nBeta\n\xc3\x28Gamma\n")
        with pytest.raises(GraphLoadError, match="line 3: invalid UTF-8"):
            read_titles(path)

    @pytest.mark.unit
    def test_title_index_exact(self, hub_graph):
        """Test that the graph title index matches titles exactly."""
        assert hub_graph.title_index["Capitalism"] == 4
        assert "socialism" not in hub_graph.title_index

    @pytest.mark.unit
    def test_title_index_first_occurrence_wins(self):
        """Test that a repeated title maps to its first node."""
        assert title_index(["Alpha", "Beta", "Alpha"]) == {"Alpha": 0, "Beta": 1}

    @pytest.mark.unit
    def test_graph_arrays_read_only(self, hub_graph):
        """Test that CSR arrays cannot be modified after construction."""
        with pytest.raises(ValueError):
            hub_graph.out_indices[0] = np.int32(3)
