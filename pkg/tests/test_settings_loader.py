#!/usr/bin/env python3
"""
Tests for SettingsLoader and settings resolution.
"""

from fractions import Fraction
from pathlib import Path

import pytest
import yaml

from polynomial_reducts.config import (
    Settings,
    SettingsLoader,
    default_settings_path,
    default_settings_yaml,
    load_settings,
)
from polynomial_reducts.constants import DEFAULT_MAX_SET_SIZE
from polynomial_reducts.exceptions import (
    ConfigurationError,
    FileLoadError,
    SchemaValidationError,
)


class TestSettings:
    """Test the Settings dataclass"""

    def test_defaults(self):
        """Test built-in defaults"""
        settings = Settings()
        assert settings.max_set_size == DEFAULT_MAX_SET_SIZE
        assert settings.precision == 3
        assert settings.gp_ratio == Fraction(2)
        assert settings.source == "defaults"

    def test_to_dict_layout(self):
        """Test nested document with rationals as strings"""
        document = Settings(ap_step=Fraction(1, 2)).to_dict()
        assert document["version"] == "1.0"
        assert document["expansion"]["ap_step"] == "1/2"
        assert document["guards"]["max_evaluations"] == 10**8
        assert "source" not in document

    def test_rows(self):
        """Test flat rows for display"""
        rows = dict(Settings().rows())
        assert rows["expansion.gp_ratio"] == "2"
        assert rows["report.indent"] == "2"


class TestSettingsLoader:
    """Test SettingsLoader class"""

    @pytest.fixture
    def valid_config(self):
        """Valid settings dict"""
        return {
            "version": "1.0",
            "guards": {"max_set_size": 5000},
            "expansion": {"precision": 4, "ap_start": "1/3", "gp_ratio": 3},
            "specialization": {"seed": 17},
        }

    def test_load_from_dict(self, valid_config):
        """Test loading settings from a dict"""
        loader = SettingsLoader()
        loader.load_from_dict(valid_config)
        settings = loader.get_settings()
        assert settings.max_set_size == 5000
        assert settings.precision == 4
        assert settings.ap_start == Fraction(1, 3)
        assert settings.gp_ratio == Fraction(3)
        assert settings.seed == 17
        assert settings.max_evaluations == Settings().max_evaluations
        assert settings.source == "dict"

    def test_nothing_loaded_gives_defaults(self):
        """Test get_settings before any load"""
        assert SettingsLoader().get_settings() == Settings()

    def test_load_from_file(self, tmp_path, valid_config):
        """Test loading settings from YAML"""
        path = tmp_path / "settings.yaml"
        path.write_text(yaml.safe_dump(valid_config))
        loader = SettingsLoader()
        loader.load_from_file(path)
        assert loader.get_settings().source == str(path)

    def test_missing_file(self, tmp_path):
        """Test loading a file that does not exist"""
        with pytest.raises(FileLoadError, match="not found"):
            SettingsLoader().load_from_file(tmp_path / "missing.yaml")

    def test_invalid_yaml(self, tmp_path):
        """Test loading malformed YAML"""
        path = tmp_path / "settings.yaml"
        path.write_text("version: [1.0\n")
        with pytest.raises(FileLoadError, match="Invalid YAML"):
            SettingsLoader().load_from_file(path)

    def test_missing_version(self):
        """Test schema requires version"""
        with pytest.raises(SchemaValidationError):
            SettingsLoader().load_from_dict({"guards": {"max_set_size": 10}})

    def test_unknown_key(self):
        """Test schema rejects unknown sections"""
        with pytest.raises(SchemaValidationError) as excinfo:
            SettingsLoader().load_from_dict({"version": "1.0", "colors": {}})
        assert "root" in str(excinfo.value)

    @pytest.mark.parametrize("section,key,value", [
        ("guards", "max_set_size", 0),
        ("expansion", "precision", 13),
        ("expansion", "workers", 0),
        ("expansion", "ap_start", "1.5"),
        ("expansion", "ap_start", "1/0"),
        ("report", "indent", -1),
    ])
    def test_out_of_range(self, section, key, value):
        """Test schema bounds"""
        with pytest.raises(SchemaValidationError) as excinfo:
            SettingsLoader().load_from_dict({"version": "1.0", section: {key: value}})
        assert excinfo.value.config_key == f"{section}.{key}"

    @pytest.mark.parametrize("key,value", [
        ("ap_step", 0),
        ("gp_start", "0"),
        ("gp_ratio", 1),
        ("gp_ratio", "-1"),
    ])
    def test_degenerate_progressions(self, key, value):
        """Test value constraints the schema cannot express"""
        with pytest.raises(SchemaValidationError, match="not allowed"):
            SettingsLoader().load_from_dict({"version": "1.0", "expansion": {key: value}})

    def test_bad_schema_path(self, tmp_path):
        """Test custom schema that does not exist"""
        with pytest.raises(ConfigurationError, match="Schema file not found"):
            SettingsLoader(schema_path=tmp_path / "nope.json")


class TestLoadSettings:
    """Test settings resolution order"""

    def test_defaults_without_file(self, tmp_path):
        """Test no file means built-in defaults"""
        assert load_settings(base_dir=tmp_path) == Settings()

    def test_working_directory_file(self, tmp_path):
        """Test .preduct/settings.yaml is picked up"""
        path = default_settings_path(tmp_path)
        assert path == tmp_path / ".preduct" / "settings.yaml"
        path.parent.mkdir()
        path.write_text("version: '1.0'\nreport:\n  indent: 4\n")
        assert load_settings(base_dir=tmp_path).indent == 4

    def test_explicit_path_wins(self, tmp_path):
        """Test --config path takes precedence"""
        default = default_settings_path(tmp_path)
        default.parent.mkdir()
        default.write_text("version: '1.0'\nreport:\n  indent: 4\n")
        explicit = tmp_path / "other.yaml"
        explicit.write_text("version: '1.0'\nreport:\n  indent: 0\n")
        assert load_settings(explicit, base_dir=tmp_path).indent == 0

    def test_explicit_path_missing(self, tmp_path):
        """Test a missing explicit path is an error"""
        with pytest.raises(FileLoadError):
            load_settings(Path(tmp_path / "missing.yaml"))

    def test_default_yaml_round_trips(self):
        """Test config init content validates and reproduces defaults"""
        loader = SettingsLoader()
        loader.load_from_dict(yaml.safe_load(default_settings_yaml()))
        assert loader.get_settings() == Settings(source="dict")
