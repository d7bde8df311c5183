"""Slot-to-slot fluctuations of the global polarization and of per-node mu."""

import itertools
import math
from collections.abc import Sequence
from typing import Optional

import numpy as np

from models.results import FluctuationReport, NodeStats, SlotSummary
from utils.errors import StatsError


def sigma_mu_pair(
    mu_a: np.ndarray, mu_b: np.ndarray, mask: Optional[np.ndarray] = None
) -> float:
    """Root-mean-square difference of per-node mu between two slots."""
    diff = np.asarray(mu_a, dtype=np.float64) - np.asarray(mu_b, dtype=np.float64)
    if mask is not None:
        diff = diff[mask]
    if diff.size == 0:
        raise StatsError("no nodes left to compare between slots")
    return math.sqrt(float(np.mean(diff * diff)))


def fluctuations(
    slot_summaries: Sequence[SlotSummary], node_stats_per_slot: Sequence[NodeStats]
) -> FluctuationReport:
    """
    sigma_0 and sigma_mu over a set of slots.

    sigma_0 is the population standard deviation of the slot mu_0 values. sigma_mu is the
    per-pair RMS of mu_1(i) - mu_2(i), averaged over all unordered slot pairs; a node is
    compared in a pair unless it is persistently white in either slot.

    Raises:
        StatsError: With fewer than two slots or mismatched inputs
    """
    n_slots = len(slot_summaries)
    if n_slots < 2:
        raise StatsError(f"fluctuations need at least 2 slots, got {n_slots}")
    if len(node_stats_per_slot) != n_slots:
        raise StatsError("one NodeStats per slot summary is required")

    per_slot_mu0 = [summary.mu_0 for summary in slot_summaries]
    sigma_0 = float(np.std(np.asarray(per_slot_mu0, dtype=np.float64)))

    pair_values = []
    for a, b in itertools.combinations(node_stats_per_slot, 2):
        mask = ~(a.persistently_white | b.persistently_white)
        pair_values.append(sigma_mu_pair(a.mu, b.mu, mask))
    sigma_mu = math.fsum(pair_values) / len(pair_values)

    return FluctuationReport(
        sigma_0=sigma_0,
        sigma_mu=sigma_mu,
        n_slots=n_slots,
        per_slot_mu0=per_slot_mu0,
    )
