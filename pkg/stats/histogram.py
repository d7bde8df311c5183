"""Fixed-width density histograms."""

import math
from collections.abc import Sequence

import numpy as np
import pandas as pd

from models.results import Histogram
from utils.errors import StatsError

FR_BIN_WIDTH = 1.0 / 30.0
MU_BIN_WIDTH = 1e-3
MU_BIN_WIDTH_LONG = 5e-4
LONG_RUN_REALIZATIONS = 100_000

FR_RANGE = (0.0, 1.0)
MU_RANGE = (-1.0, 1.0)


def mu_bin_width_for(n_realizations: int) -> float:
    """Default mu bin width: finer for slots of LONG_RUN_REALIZATIONS or more."""
    return MU_BIN_WIDTH_LONG if n_realizations >= LONG_RUN_REALIZATIONS else MU_BIN_WIDTH


def _n_bins(lo: float, hi: float, bin_width: float) -> int:
    return max(1, math.ceil((hi - lo) / bin_width - 1e-9))


def _bin_index(values: np.ndarray, lo: float, bin_width: float, n_bins: int) -> np.ndarray:
    """Bin of every value; values on or beyond the range edges go to the edge bins."""
    index = np.floor((values - lo) / bin_width).astype(np.int64)
    return np.clip(index, 0, n_bins - 1)


def histogram(
    samples: Sequence[float],
    bin_width: float = FR_BIN_WIDTH,
    value_range: tuple[float, float] = FR_RANGE,
) -> Histogram:
    """
    Density histogram normalized so that sum(density * bin_width) = 1.

    Raises:
        StatsError: If samples are empty or the binning is invalid
    """
    values = np.asarray(samples, dtype=np.float64)
    if values.size == 0:
        raise StatsError("histogram of an empty sample")
    if bin_width <= 0:
        raise StatsError(f"bin width must be positive, got {bin_width}")
    lo, hi = value_range
    if hi <= lo:
        raise StatsError(f"invalid histogram range [{lo}, {hi}]")

    n_bins = _n_bins(lo, hi, bin_width)
    counts = np.bincount(_bin_index(values, lo, bin_width, n_bins), minlength=n_bins)
    density = counts / (values.size * bin_width)
    return Histogram(
        width=bin_width,
        lo=lo,
        hi=hi,
        counts=counts.tolist(),
        density=density.tolist(),
    )


def histogram2d(
    x: Sequence[float],
    y: Sequence[float],
    bin_width: float = MU_BIN_WIDTH,
    value_range: tuple[float, float] = MU_RANGE,
) -> dict[tuple[int, int], int]:
    """Sparse 2-D counts keyed by (x bin, y bin); only non-empty cells are returned."""
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape:
        raise StatsError("2-D histogram needs paired samples")
    if xs.size == 0:
        raise StatsError("histogram of an empty sample")

    lo, hi = value_range
    n_bins = _n_bins(lo, hi, bin_width)
    cells = np.stack(
        (_bin_index(xs, lo, bin_width, n_bins), _bin_index(ys, lo, bin_width, n_bins)), axis=1
    )
    unique, counts = np.unique(cells, axis=0, return_counts=True)
    return {(int(i), int(j)): int(c) for (i, j), c in zip(unique, counts)}


def histogram_table(hist: Histogram) -> pd.DataFrame:
    edges = hist.edges
    return pd.DataFrame(
        {
            "bin_lo": edges[:-1],
            "bin_hi": edges[1:],
            "count": hist.counts,
            "density": hist.density,
        }
    )
