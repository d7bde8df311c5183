import json

import pytest
from pydantic import ValidationError

from config.experiment import ExperimentConfig, ExperimentFile, MatrixMode
from config.settings import load_settings
from config.storage import OutputLayout


class TestLoadSettings:
    """Unit tests for environment settings."""

    @pytest.mark.unit
    def test_environment_values(self, monkeypatch, tmp_path):
        """Test that INOF_* variables are read."""
        monkeypatch.setenv("INOF_THREADS", "3")
        monkeypatch.setenv("INOF_DEBUG", "true")
        monkeypatch.setenv("INOF_LOG_LEVEL", "debug")
        monkeypatch.setenv("INOF_LOG_FILE", str(tmp_path / "run.log"))
        settings = load_settings()

        assert settings.runtime.threads == 3
        assert settings.runtime.debug is True
        assert settings.logging.log_level == "DEBUG"
        assert settings.logging.log_file == str(tmp_path / "run.log")

    @pytest.mark.unit
    def test_defaults(self, monkeypatch):
        """Test that threads default to the CPU count and debug is off."""
        for name in ("INOF_THREADS", "INOF_DEBUG", "INOF_LOG_LEVEL", "INOF_LOG_FILE"):
            monkeypatch.delenv(name, raising=False)
        monkeypatch.setattr("config.settings.os.cpu_count", lambda: 6)
        settings = load_settings()

        assert settings.runtime.threads == 6
        assert settings.runtime.debug is False
        assert settings.logging.log_level == "INFO"
        assert settings.logging.log_file is None

    @pytest.mark.unit
    def test_invalid_threads(self, monkeypatch):
        """Test that a zero thread count is a configuration error."""
        monkeypatch.setenv("INOF_THREADS", "0")
        with pytest.raises(ValueError, match="Configuration error"):
            load_settings()

    @pytest.mark.unit
    def test_invalid_log_level(self, monkeypatch):
        """Test that an unknown log level is a configuration error."""
        monkeypatch.setenv("INOF_THREADS", "1")
        monkeypatch.setenv("INOF_LOG_LEVEL", "LOUD")
        with pytest.raises(ValueError, match="Configuration error"):
            load_settings()


class TestExperimentConfig:
    """Unit tests for experiment validation."""

    @pytest.mark.unit
    def test_defaults(self):
        """Test the documented defaults."""
        config = ExperimentConfig(red_nodes=[3, 1, 3], blue_nodes=[2])
        assert config.red_nodes == [1, 3]
        assert config.matrix_mode == MatrixMode.ADJACENCY
        assert config.tau_max == 20
        assert config.flip_threshold == 0.0
        assert config.early_stop is False
        assert config.fixed_nodes == [1, 2, 3]

    @pytest.mark.unit
    def test_overlapping_groups(self):
        """Test that a node cannot be both red and blue."""
        with pytest.raises(ValidationError, match="overlap"):
            ExperimentConfig(red_nodes=[1, 2], blue_nodes=[2])

    @pytest.mark.unit
    def test_empty_group(self):
        """Test that both groups must be non-empty."""
        with pytest.raises(ValidationError):
            ExperimentConfig(red_nodes=[], blue_nodes=[1])

    @pytest.mark.unit
    def test_bounds(self):
        """Test tau, N_r, seed and threshold bounds."""
        with pytest.raises(ValidationError):
            ExperimentConfig(red_nodes=[0], blue_nodes=[1], tau_max=0)
        with pytest.raises(ValidationError):
            ExperimentConfig(red_nodes=[0], blue_nodes=[1], n_realizations=0)
        with pytest.raises(ValidationError):
            ExperimentConfig(red_nodes=[0], blue_nodes=[1], master_seed=1 << 64)
        with pytest.raises(ValidationError):
            ExperimentConfig(red_nodes=[0], blue_nodes=[1], flip_threshold=0.5)


class TestExperimentFile:
    """Unit tests for JSON experiment files."""

    @pytest.mark.unit
    def test_flags_override_file(self, tmp_path):
        """Test that non-None overrides replace file values and None keeps them."""
        path = tmp_path / "op2.json"
        path.write_text(
            json.dumps(
                {
                    "graph": "en.bin",
                    "red": ["Socialism", "Communism"],
                    "blue": ["Capitalism", "Imperialism"],
                    "realizations": 1000,
                    "slots": 5,
                }
            ),
            encoding="utf-8",
        )
        merged = ExperimentFile.load(path).merged_with({"slots": 2, "seed": None, "red": None})

        assert merged.slots == 2
        assert merged.seed == 0
        assert merged.red == ["Socialism", "Communism"]
        assert merged.realizations == 1000

    @pytest.mark.unit
    def test_comma_separated_groups(self):
        """Test that a comma-separated string is split into selectors."""
        experiment = ExperimentFile(red="Socialism, Communism", blue=["Capitalism"])
        assert experiment.red == ["Socialism", "Communism"]

    @pytest.mark.unit
    def test_list_items_keep_commas(self):
        """Test that list items, as argparse produces them, are kept whole."""
        experiment = ExperimentFile(red=["Washington, D.C."], blue=["Capitalism"])
        merged = experiment.merged_with({"blue": ["Paris, Texas", "#3"]})

        assert merged.red == ["Washington, D.C."]
        assert merged.blue == ["Paris, Texas", "#3"]

    @pytest.mark.unit
    def test_to_config(self):
        """Test that resolved ids and file values build an ExperimentConfig."""
        experiment = ExperimentFile(matrix="stochastic", tau=40, trace=True, seed=9)
        config = experiment.to_config([5], [6])

        assert config.matrix_mode == MatrixMode.STOCHASTIC
        assert config.tau_max == 40
        assert config.record_trace is True
        assert config.master_seed == 9


class TestOutputLayout:
    """Unit tests for results-directory naming."""

    @pytest.mark.unit
    def test_paths(self, tmp_path):
        """Test artifact names inside a results directory."""
        layout = OutputLayout(results_dir=str(tmp_path / "run"))
        layout.ensure_directories()

        assert layout.slot_summary_path(3).name == "slot_003.json"
        assert layout.node_stats_path(0).name == "nodes_slot_000.csv"
        assert layout.analysis_path("x.csv").parent.is_dir()
        assert layout.slot_summary_paths() == []
