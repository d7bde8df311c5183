import numpy as np
import pytest

from stats.aggregate import NodeAccumulator, aggregate_nodes
from stats.histogram import MU_BIN_WIDTH, MU_BIN_WIDTH_LONG
from tests.conftest import make_result
from utils.errors import StatsError


class TestAggregateNodes:
    """Unit tests for per-node aggregation."""

    @pytest.mark.unit
    def test_sixty_forty_split(self):
        """Test that 600 red and 400 blue endings give mu = 0.2."""
        results = [make_result([1, 1, -1], i) for i in range(600)]
        results += [make_result([1, -1, -1], 600 + i) for i in range(400)]
        node_stats, _ = aggregate_nodes(results)

        assert node_stats.mu[1] == pytest.approx(0.2)
        assert node_stats.red_freq[1] == pytest.approx(0.6)
        assert node_stats.white_freq.tolist() == [0.0, 0.0, 0.0]

    @pytest.mark.unit
    def test_white_counts_as_zero(self):
        """Test that a node white in half the realizations gets mu = 0.5."""
        results = [make_result([1, 1, -1], 0), make_result([1, 0, -1], 1)]
        node_stats, _ = aggregate_nodes(results)
        assert node_stats.mu[1] == 0.5
        assert node_stats.white_freq[1] == 0.5

    @pytest.mark.unit
    def test_persistently_white_excluded_from_mu0(self):
        """Test that always-white nodes are left out of mu_0 and form the isolated fraction."""
        results = [make_result([1, 1, -1, 0], i) for i in range(10)]
        node_stats, summary = aggregate_nodes(results)

        assert summary.mu_0 == pytest.approx(1 / 3)
        assert summary.isolated_fraction == 0.25
        assert node_stats.persistently_white.tolist() == [False, False, False, True]
        np.testing.assert_array_equal(node_stats.delta_mu, node_stats.mu - summary.mu_0)

    @pytest.mark.unit
    def test_fixed_nodes_excluded_from_mu0(self):
        """Test that fixed nodes stay in the per-node table but not in mu_0 or the mu histogram."""
        fixed_mask = np.array([True, False, False, True])
        results = [make_result([1, 1, 0, -1], i) for i in range(10)]
        node_stats, summary = aggregate_nodes(results, fixed_mask=fixed_mask)

        assert summary.mu_0 == 1.0
        assert node_stats.mu.tolist() == [1.0, 1.0, 0.0, -1.0]
        assert node_stats.averaged.tolist() == [False, True, False, False]
        assert sum(summary.mu_histogram.counts) == 1
        assert summary.isolated_fraction == 0.25

    @pytest.mark.unit
    def test_long_runs_use_fine_mu_bins(self):
        """Test that the mu bin width drops to 5e-4 from 100000 realizations on."""
        accumulator = NodeAccumulator(2)
        accumulator.sigma_sum = np.array([100_000, -100_000])
        accumulator.fr_samples = dict.fromkeys(range(100_000), 0.5)
        _, summary = accumulator.finalize()
        assert summary.mu_histogram.width == MU_BIN_WIDTH_LONG

        _, summary = aggregate_nodes([make_result([1, -1], 0)])
        assert summary.mu_histogram.width == MU_BIN_WIDTH

    @pytest.mark.unit
    def test_both_mu0_definitions_agree_without_white(self):
        """Test that node- and realization-averaged mu_0 coincide with no white nodes."""
        rng = np.random.default_rng(3)
        results = [make_result(rng.choice([-1, 1], size=8), i) for i in range(50)]
        _, summary = aggregate_nodes(results)
        assert summary.mu_0 == pytest.approx(summary.mu_0_realization, abs=1e-12)

    @pytest.mark.unit
    def test_fr_samples_and_histogram(self):
        """Test that f_r samples are kept in realization order and binned."""
        results = [make_result([1, -1], 1), make_result([1, 1], 0)]
        _, summary = aggregate_nodes(results)

        assert summary.fr_samples == [1.0, 0.5]
        assert summary.mean_fr == 0.75
        assert sum(summary.fr_histogram.counts) == 2
        assert summary.n_realizations == 2

    @pytest.mark.unit
    def test_empty_stream(self):
        """Test that an empty stream is an error."""
        with pytest.raises(StatsError, match="empty"):
            aggregate_nodes([])

    @pytest.mark.unit
    def test_mixed_slots_rejected(self):
        """Test that results from two slots cannot be aggregated together."""
        with pytest.raises(StatsError, match="mixes slots"):
            aggregate_nodes([make_result([1, -1], 0, 0), make_result([1, -1], 1, 1)])


class TestNodeAccumulator:
    """Unit tests for the integer accumulator."""

    @pytest.mark.unit
    def test_merge_equals_sequential(self):
        """Test that merging two halves equals adding everything to one accumulator."""
        rng = np.random.default_rng(8)
        results = [make_result(rng.choice([-1, 0, 1], size=6), i) for i in range(40)]

        whole = NodeAccumulator(6)
        for result in results:
            whole.add(result)
        left, right = NodeAccumulator(6), NodeAccumulator(6)
        for result in results[:17]:
            left.add(result)
        for result in results[17:]:
            right.add(result)

        merged = right.merge(left)
        np.testing.assert_array_equal(merged.sigma_sum, whole.sigma_sum)
        assert merged.finalize()[1].to_dict() == whole.finalize()[1].to_dict()

    @pytest.mark.unit
    def test_duplicate_realization_rejected(self):
        """Test that the same realization index cannot be added twice."""
        accumulator = NodeAccumulator(2)
        accumulator.add(make_result([1, -1], 0))
        with pytest.raises(StatsError, match="twice"):
            accumulator.add(make_result([1, -1], 0))

    @pytest.mark.unit
    def test_size_mismatch_rejected(self):
        """Test that a state of the wrong size is rejected."""
        with pytest.raises(StatsError):
            NodeAccumulator(3).add(make_result([1, -1], 0))

    @pytest.mark.unit
    def test_fixed_mask_shape_checked(self):
        """Test that a fixed mask of the wrong length is rejected."""
        with pytest.raises(StatsError, match="fixed mask"):
            NodeAccumulator(3, fixed_mask=np.zeros(2, dtype=bool))

    @pytest.mark.unit
    def test_merge_keeps_fixed_mask(self):
        """Test that merging keeps the fixed groups and refuses different ones."""
        fixed_mask = np.array([True, False])
        left, right = NodeAccumulator(2, fixed_mask=fixed_mask), NodeAccumulator(2, fixed_mask=fixed_mask)
        left.add(make_result([1, -1], 0))
        right.add(make_result([1, 1], 1))

        node_stats, summary = left.merge(right).finalize()
        assert node_stats.fixed_mask.tolist() == [True, False]
        assert summary.mu_0 == 0.0

        with pytest.raises(StatsError, match="fixed groups"):
            left.merge(NodeAccumulator(2))
