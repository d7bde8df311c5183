"""
Binary graph cache.

Layout (all little-endian):

    header   magic b"INOF" | u32 version | u64 n_nodes | u64 n_edges
    out-CSR  u64 offsets[n_nodes + 1] | u32 targets[n_edges]
    in-CSR   u64 offsets[n_nodes + 1] | u32 sources[n_edges]
    titles   u8 has_titles | u64 n_titles | u64 n_bytes | UTF-8 titles joined by LF
"""

import hashlib
import logging
import os
import struct
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from models.graph import DirectedGraph
from utils.errors import GraphFormatError

logger = logging.getLogger(__name__)

MAGIC = b"INOF"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sIQQ")
_TITLES_HEADER = struct.Struct("<BQQ")
_OFFSET = np.dtype("<u8")
_INDEX = np.dtype("<u4")

PathLike = Union[str, Path]


def save_binary(graph: DirectedGraph, path: PathLike) -> Path:
    """
    Write the graph to a binary cache file.

    The file is written to a temporary sibling and renamed into place.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_name(path.name + ".tmp")

    with open(tmp_path, "wb") as f:
        f.write(_HEADER.pack(MAGIC, FORMAT_VERSION, graph.n_nodes, graph.n_edges))
        f.write(graph.out_indptr.astype(_OFFSET).tobytes())
        f.write(graph.out_indices.astype(_INDEX).tobytes())
        f.write(graph.in_indptr.astype(_OFFSET).tobytes())
        f.write(graph.in_indices.astype(_INDEX).tobytes())

        if graph.titles is None:
            f.write(_TITLES_HEADER.pack(0, 0, 0))
        else:
            blob = "\n".join(graph.titles).encode("utf-8")
            f.write(_TITLES_HEADER.pack(1, len(graph.titles), len(blob)))
            f.write(blob)

    os.replace(tmp_path, path)
    logger.info(f"Saved graph cache {path} ({graph.n_nodes} nodes, {graph.n_edges} edges)")
    return path


def _read_exact(f: BinaryIO, n_bytes: int, what: str) -> bytes:
    data = f.read(n_bytes)
    if len(data) != n_bytes:
        raise GraphFormatError(f"Truncated graph cache: expected {n_bytes} bytes of {what}")
    return data


def _read_array(f: BinaryIO, dtype: np.dtype, count: int, what: str) -> np.ndarray:
    data = _read_exact(f, dtype.itemsize * count, what)
    return np.frombuffer(data, dtype=dtype, count=count)


def _check_edges(
    graph: DirectedGraph, out_indices: np.ndarray, in_indices: np.ndarray, path: Path
) -> None:
    """
    Cross-check the two CSR blocks.

    Every index must be a node id, the out-CSR must be a sorted simple graph and the in-CSR
    must hold exactly its transpose.
    """
    n_nodes = graph.n_nodes
    for name, indices in (("out", out_indices), ("in", in_indices)):
        if indices.size and int(indices.max()) >= n_nodes:
            raise GraphFormatError(
                f"Corrupt {name}-CSR in {path}: node id {int(indices.max())} >= {n_nodes}"
            )

    sources = np.repeat(np.arange(n_nodes, dtype=np.int64), np.diff(graph.out_indptr))
    targets = graph.out_indices.astype(np.int64)
    if np.any(sources == targets):
        raise GraphFormatError(f"Corrupt graph cache {path}: self-loop stored")
    keys = sources * n_nodes + targets
    if np.any(np.diff(keys) <= 0):
        raise GraphFormatError(f"Corrupt out-CSR in {path}: unsorted or repeated edges")

    rebuilt = DirectedGraph.from_edges(n_nodes, sources, targets, titles=graph.titles)
    if not rebuilt.structurally_equal(graph):
        raise GraphFormatError(f"Corrupt graph cache {path}: in-CSR is not the out-CSR transpose")


def load_binary(path: PathLike) -> DirectedGraph:
    """
    Load a graph previously written by save_binary.

    Raises:
        GraphFormatError: Bad magic, unsupported version, truncated or inconsistent file
        FileNotFoundError: If the file does not exist
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph cache not found: {path}")

    with open(path, "rb") as f:
        header = f.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise GraphFormatError(f"Truncated graph cache header in {path}")

        magic, version, n_nodes, n_edges = _HEADER.unpack(header)
        if magic != MAGIC:
            raise GraphFormatError(f"Not an INOF graph cache (magic {magic!r}): {path}")
        if version != FORMAT_VERSION:
            raise GraphFormatError(
                f"Unsupported graph cache version {version} (expected {FORMAT_VERSION}): {path}"
            )

        out_indptr = _read_array(f, _OFFSET, n_nodes + 1, "out-CSR offsets")
        out_indices = _read_array(f, _INDEX, n_edges, "out-CSR targets")
        in_indptr = _read_array(f, _OFFSET, n_nodes + 1, "in-CSR offsets")
        in_indices = _read_array(f, _INDEX, n_edges, "in-CSR sources")

        has_titles, n_titles, n_bytes = _TITLES_HEADER.unpack(
            _read_exact(f, _TITLES_HEADER.size, "titles header")
        )
        titles = None
        if has_titles:
            blob = _read_exact(f, n_bytes, "titles")
            titles = tuple(blob.decode("utf-8").split("\n")) if n_titles else ()
            if len(titles) != n_titles:
                raise GraphFormatError(
                    f"Titles block holds {len(titles)} entries, header says {n_titles}"
                )

    for name, indptr in (("out", out_indptr), ("in", in_indptr)):
        if indptr[0] != 0 or indptr[-1] != n_edges or np.any(np.diff(indptr.astype(np.int64)) < 0):
            raise GraphFormatError(f"Corrupt {name}-CSR offsets in {path}")

    graph = DirectedGraph(
        n_nodes=int(n_nodes),
        out_indptr=out_indptr.astype(np.int64),
        out_indices=out_indices.astype(np.int32),
        in_indptr=in_indptr.astype(np.int64),
        in_indices=in_indices.astype(np.int32),
        titles=titles,
    )
    _check_edges(graph, out_indices, in_indices, path)
    logger.info(f"Loaded graph cache {path} ({graph.n_nodes} nodes, {graph.n_edges} edges)")
    return graph


def graph_checksum(path: PathLike, chunk_size: int = 1 << 20) -> str:
    """SHA-256 of a graph cache file, recorded in run manifests."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(chunk_size), b""):
            digest.update(chunk)
    return digest.hexdigest()
