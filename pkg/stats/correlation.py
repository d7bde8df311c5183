"""Pearson, Spearman and Kendall tau-b correlators, slot-pair correlators and the KS test."""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
import pandas as pd
from scipy import stats as scipy_stats

from utils.errors import StatsError

logger = logging.getLogger(__name__)


class CorrelationMethod(str, Enum):
    PEARSON = "pearson"
    SPEARMAN = "spearman"
    KENDALL = "kendall"


@dataclass
class SlotCorrelation:
    """Correlator of every slot pair plus their mean and population spread."""

    method: CorrelationMethod
    pairs: dict[tuple[int, int], float]
    mean: float
    std: float

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "pairs": [
                {"slot_a": a, "slot_b": b, "value": value}
                for (a, b), value in sorted(self.pairs.items())
            ],
            "mean": self.mean,
            "std": self.std,
        }


def correlate(
    x: Sequence[float], y: Sequence[float], method: CorrelationMethod = CorrelationMethod.PEARSON
) -> float:
    """
    Correlation coefficient of paired samples.

    Spearman uses average ranks for ties, Kendall is the tie-aware tau-b.

    Raises:
        StatsError: With fewer than 3 pairs, unequal lengths, or a constant input
    """
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape:
        raise StatsError(f"paired samples differ in length: {xs.size} vs {ys.size}")
    if xs.size < 3:
        raise StatsError(f"correlation needs at least 3 pairs, got {xs.size}")

    method = CorrelationMethod(method)
    if np.all(xs == xs[0]) or np.all(ys == ys[0]):
        if method == CorrelationMethod.KENDALL:
            raise StatsError("Kendall tau is undefined when one sample is all tied")
        raise StatsError(f"{method.value} correlation is undefined for zero variance")

    if method == CorrelationMethod.PEARSON:
        value = scipy_stats.pearsonr(xs, ys)[0]
    elif method == CorrelationMethod.SPEARMAN:
        value = scipy_stats.spearmanr(xs, ys)[0]
    else:
        value = scipy_stats.kendalltau(xs, ys, variant="b")[0]

    return float(np.clip(value, -1.0, 1.0))


def correlate_slots(
    mu_vectors: Sequence[np.ndarray],
    method: CorrelationMethod,
    mask: Optional[np.ndarray] = None,
) -> SlotCorrelation:
    """
    Correlate per-node mu between every unordered pair of slots.

    Args:
        mu_vectors: One mu array per slot, aligned by node id
        method: Correlator to use
        mask: Optional boolean node selection (e.g. the country articles)

    Raises:
        StatsError: With fewer than two slots
    """
    if len(mu_vectors) < 2:
        raise StatsError(f"slot correlators need at least 2 slots, got {len(mu_vectors)}")

    pairs: dict[tuple[int, int], float] = {}
    for (a, mu_a), (b, mu_b) in itertools.combinations(enumerate(mu_vectors), 2):
        if mask is not None:
            mu_a, mu_b = mu_a[mask], mu_b[mask]
        pairs[(a, b)] = correlate(mu_a, mu_b, method)

    values = np.fromiter(pairs.values(), dtype=np.float64)
    logger.info(
        f"{method.value} slot correlator over {len(pairs)} pairs: "
        f"{values.mean():.3f} +- {values.std():.3f}"
    )
    return SlotCorrelation(
        method=method, pairs=pairs, mean=float(values.mean()), std=float(values.std())
    )


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Two-sample Kolmogorov-Smirnov statistic and p-value."""
    if len(a) == 0 or len(b) == 0:
        raise StatsError("KS test needs two non-empty samples")
    result = scipy_stats.ks_2samp(np.asarray(a), np.asarray(b))
    return float(result.statistic), float(result.pvalue)


@dataclass
class CovariateCorrelation:
    """Per-node quantity against an external title,value covariate."""

    column: str
    coefficients: dict[str, float]
    n_matched: int
    unmatched_titles: list[str]

    def to_dict(self) -> dict:
        return {
            "column": self.column,
            "coefficients": dict(self.coefficients),
            "n_matched": self.n_matched,
            "unmatched_titles": list(self.unmatched_titles),
        }


def correlate_covariate(
    node_frame: pd.DataFrame, covariate: pd.DataFrame, column: str = "delta_mu"
) -> CovariateCorrelation:
    """
    Join a per-node table with a covariate on exact title and correlate with all methods.

    Args:
        node_frame: Per-node table with a ``title`` column and ``column``
        covariate: Two columns, title and value
        column: Per-node column to correlate

    Raises:
        StatsError: If fewer than 3 titles match or a side is constant
    """
    covariate = covariate.iloc[:, :2].copy()
    covariate.columns = ["title", "value"]
    joined = covariate.merge(
        node_frame[["title", column]].drop_duplicates("title"), on="title", how="left"
    )
    unmatched = joined.loc[joined[column].isna(), "title"].tolist()
    joined = joined.dropna(subset=[column, "value"])
    if unmatched:
        logger.warning(f"{len(unmatched)} covariate titles did not match any node")

    x = joined[column].to_numpy(dtype=np.float64)
    y = joined["value"].to_numpy(dtype=np.float64)
    coefficients = {method.value: correlate(x, y, method) for method in CorrelationMethod}
    return CovariateCorrelation(
        column=column,
        coefficients=coefficients,
        n_matched=int(x.size),
        unmatched_titles=unmatched,
    )
