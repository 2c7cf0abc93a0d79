"""Tests for the flat-text experiment configuration."""

import dataclasses
import json

import pytest

from reflectmimo import (
    ConfigError,
    ExperimentConfig,
    config_to_text,
    load_config,
    parse_config,
)


class TestDefaults:
    def test_defaults_validate(self):
        config = ExperimentConfig()
        config.validate()
        assert config.frequency_hz == pytest.approx(57.5e9)
        assert config.equivalent_range_m == pytest.approx(20.0)
        assert config.antennas == 8
        assert config.materials == (
            "perfect_conductor",
            "concrete",
            "floor_board",
            "plaster_board",
        )
        assert config.snr_grid_db[0] == -10.0
        assert config.snr_grid_db[-1] == 40.0
        assert len(config.snr_grid_db) == 26
        assert config.quadrature is None

    def test_explicit_quadrature(self):
        config = ExperimentConfig(n_alpha=128, n_beta=8)
        assert config.quadrature.n_alpha == 128
        assert config.quadrature.n_beta == 8
        assert ExperimentConfig(n_alpha=128).quadrature.n_beta == 4


class TestRoundTrip:
    def test_default_round_trip(self):
        config = ExperimentConfig()
        assert parse_config(config_to_text(config)) == config

    def test_modified_round_trip(self):
        config = ExperimentConfig(
            frequency_ghz=60.0,
            d1_m=12.5,
            range_m=7.25,
            antennas=4,
            materials=("concrete", "vacuum"),
            snr_grid_db=(0.0, 5.5, 11.0),
            spacing_rule="rayleigh_De",
            normalization="SelfSum",
            n_alpha=4096,
            n_beta=64,
        )
        assert parse_config(config_to_text(config)) == config

    def test_text_is_deterministic(self):
        config = ExperimentConfig()
        assert config_to_text(config) == config_to_text(config)


class TestParsing:
    def test_comments_and_blanks(self):
        text = """
        # geometry
        d1_m = 12.0   # surface plane

        range_m = 6.0
        """
        config = parse_config(text)
        assert config.d1_m == 12.0
        assert config.range_m == 6.0
        assert config.frequency_ghz == 57.5

    def test_snr_range_form(self):
        config = parse_config("snr_grid_db = 0:10:5\n")
        assert config.snr_grid_db == (0.0, 5.0, 10.0)

    def test_snr_list_form(self):
        config = parse_config("snr_grid_db = -3, 0, 12.5\n")
        assert config.snr_grid_db == (-3.0, 0.0, 12.5)

    def test_materials_list(self):
        config = parse_config("materials = concrete, plaster_board\n")
        assert config.materials == ("concrete", "plaster_board")

    def test_line_numbered_errors_accumulate(self):
        text = "bogus_key = 1\nantennas = many\nno equals sign\n"
        with pytest.raises(ConfigError) as excinfo:
            parse_config(text)
        violations = excinfo.value.violations
        assert len(violations) == 3
        assert violations[0].startswith("line 1:")
        assert violations[1].startswith("line 2:")
        assert violations[2].startswith("line 3:")

    def test_bad_snr_range(self):
        with pytest.raises(ConfigError, match="step"):
            parse_config("snr_grid_db = 0:10:-2\n")


class TestValidation:
    def test_violations_accumulate(self):
        config = ExperimentConfig(
            frequency_ghz=-1.0, antennas=0, normalization="loud"
        )
        with pytest.raises(ConfigError) as excinfo:
            config.validate()
        assert len(excinfo.value.violations) >= 3

    def test_unknown_material(self):
        with pytest.raises(ConfigError, match="unknown material"):
            ExperimentConfig(materials=("granite",)).validate()

    def test_range_beyond_surface(self):
        with pytest.raises(ConfigError, match="range_m"):
            ExperimentConfig(range_m=20.0, d1_m=15.0).validate()

    def test_surface_clearance_guard(self):
        config = ExperimentConfig(d1_m=0.01, range_m=0.005)
        with pytest.raises(ConfigError, match="wavelength"):
            config.validate()

    def test_bad_spacing_rule(self):
        with pytest.raises(ConfigError, match="spacing_rule"):
            ExperimentConfig(spacing_rule="tight").validate()


class TestLoadConfig:
    def test_flat_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("antennas = 4\nnormalization = SelfSum\n")
        config = load_config(path)
        assert config.antennas == 4
        assert config.normalization == "SelfSum"

    def test_json_results_file(self, tmp_path):
        original = ExperimentConfig(antennas=4)
        payload = {
            "provenance": {"config_text": config_to_text(original)},
            "tables": {},
        }
        path = tmp_path / "results.json"
        path.write_text(json.dumps(payload))
        assert load_config(path) == original

    def test_json_without_provenance(self, tmp_path):
        path = tmp_path / "results.json"
        path.write_text(json.dumps({"tables": {}}))
        with pytest.raises(ConfigError, match="provenance"):
            load_config(path)

    def test_dataclass_is_frozen(self):
        config = ExperimentConfig()
        with pytest.raises(dataclasses.FrozenInstanceError):
            config.antennas = 2
