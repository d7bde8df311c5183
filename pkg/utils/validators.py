import re
from collections.abc import Iterable
from pathlib import Path
from typing import Optional, Union

from models.graph import DirectedGraph
from utils.errors import SelectionError

_NODE_ID_PATTERN = re.compile(r"^#(\d+)$")


def parse_node_selector(token: str) -> tuple[bool, Optional[int], str]:
    """
    Parse one fixed-node selector.

    Rules:
    - ``#123`` selects node id 123
    - anything else is an exact article title (no normalization)

    Args:
        token: Selector from the command line or experiment file

    Returns:
        Tuple of (is_valid, node_id or None for titles, error_message)
    """
    if not token:
        return False, None, "Selector cannot be empty"

    match = _NODE_ID_PATTERN.match(token)
    if match:
        return True, int(match.group(1)), ""

    if token.startswith("#"):
        return False, None, f"Invalid node id selector: {token!r}"

    return True, None, ""


def resolve_selectors(graph: DirectedGraph, selectors: Iterable[str]) -> list[int]:
    """
    Turn selectors into node ids, collecting every failure before raising.

    Raises:
        SelectionError: Listing all unresolved titles and invalid or out-of-range ids
    """
    index = graph.title_index
    resolved: list[int] = []
    missing: list[str] = []

    for token in selectors:
        is_valid, node_id, _ = parse_node_selector(token)
        if not is_valid:
            missing.append(token)
        elif node_id is not None:
            if node_id < graph.n_nodes:
                resolved.append(node_id)
            else:
                missing.append(token)
        elif token in index:
            resolved.append(index[token])
        else:
            missing.append(token)

    if missing:
        raise SelectionError(missing)
    return resolved


def read_selector_file(path: Union[str, Path]) -> list[str]:
    """Read one selector per line, skipping blank lines."""
    text = Path(path).read_text(encoding="utf-8")
    return [line.rstrip("\r") for line in text.split("\n") if line.strip()]


def validate_seed(value: int) -> tuple[bool, str]:
    """
    Validate a master seed.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if value < 0:
        return False, "Seed must be non-negative"
    if value >= 1 << 64:
        return False, "Seed must fit in 64 bits"
    return True, ""


def parse_node_selectors(text: str) -> list[str]:
    """
    Split a comma-separated selector list, dropping empty items.

    Titles containing commas must be passed as separate command-line arguments instead.
    """
    return [token.strip() for token in text.split(",") if token.strip()]
