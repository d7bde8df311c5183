import pytest

from utils.errors import SelectionError
from utils.validators import (
    parse_node_selector,
    parse_node_selectors,
    read_selector_file,
    resolve_selectors,
    validate_seed,
)


class TestParseNodeSelector:
    """Unit tests for selector parsing."""

    @pytest.mark.unit
    def test_node_id(self):
        """Test that '#123' selects node 123."""
        assert parse_node_selector("#123") == (True, 123, "")

    @pytest.mark.unit
    def test_title(self):
        """Test that anything else is a title."""
        assert parse_node_selector("Socialism") == (True, None, "")
        assert parse_node_selector("C# (programming language)") == (True, None, "")

    @pytest.mark.unit
    def test_empty(self):
        """Test that an empty selector is invalid."""
        is_valid, _, error = parse_node_selector("")
        assert not is_valid
        assert "empty" in error

    @pytest.mark.unit
    def test_bad_id(self):
        """Test that '#' followed by a non-number is invalid."""
        is_valid, node_id, _ = parse_node_selector("#12a")
        assert not is_valid
        assert node_id is None

    @pytest.mark.unit
    def test_comma_list(self):
        """Test splitting a comma-separated selector list."""
        assert parse_node_selectors("Socialism, Communism,,#4") == ["Socialism", "Communism", "#4"]


class TestResolveSelectors:
    """Unit tests for selector resolution against a graph."""

    @pytest.mark.unit
    def test_mixed(self, hub_graph):
        """Test that titles and ids resolve in input order."""
        assert resolve_selectors(hub_graph, ["Capitalism", "#1", "Socialism"]) == [4, 1, 0]

    @pytest.mark.unit
    def test_titles_are_exact(self, hub_graph):
        """Test that case and whitespace variants do not match."""
        with pytest.raises(SelectionError) as exc_info:
            resolve_selectors(hub_graph, ["socialism", " Capitalism", "#99", "Alpha"])
        assert exc_info.value.missing == ["socialism", " Capitalism", "#99"]

    @pytest.mark.unit
    def test_selector_file(self, tmp_path):
        """Test reading one selector per line."""
        path = tmp_path / "countries.txt"
        path.write_text("France\n\nEgypt\r\nChile\n", encoding="utf-8")
        assert read_selector_file(path) == ["France", "Egypt", "Chile"]


class TestValidateSeed:
    """Unit tests for seed validation."""

    @pytest.mark.unit
    def test_bounds(self):
        """Test the unsigned 64-bit range."""
        assert validate_seed(0) == (True, "")
        assert validate_seed((1 << 64) - 1) == (True, "")
        assert not validate_seed(-1)[0]
        assert not validate_seed(1 << 64)[0]
