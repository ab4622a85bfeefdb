"""Tests for the configuration parsing functionality."""

import os

import pytest
import yaml

from dcy.config import (
    DEFAULT_CONFIG_FILE,
    SAMPLE_CONFIG,
    _expand_env_vars,
    find_config_file,
    load_config,
    setting,
)


def test_expand_env_vars():
    """Test that environment variables are correctly expanded in config."""
    os.environ["DCY_TEST_VAR"] = "4"

    assert _expand_env_vars("workers_${DCY_TEST_VAR}") == "workers_4"

    result = _expand_env_vars({"verify": {"workers": "${DCY_TEST_VAR}"}, "list": ["${DCY_TEST_VAR}"]})
    assert result["verify"]["workers"] == "4"
    assert result["list"] == ["4"]

    # Unset variables vanish
    assert _expand_env_vars("${DCY_UNSET_VAR}") == ""
    assert _expand_env_vars(3) == 3


@pytest.fixture
def temp_config_file(tmp_path):
    """Create a temporary configuration file for testing."""
    path = tmp_path / DEFAULT_CONFIG_FILE
    path.write_text(
        """
verify:
  max_n: 4
  workers: ${DCY_WORKERS}
output:
  format: json
""",
        encoding="utf-8",
    )
    return path


def test_load_config(temp_config_file):
    """Test loading a config file merges it over the defaults."""
    os.environ["DCY_WORKERS"] = "3"
    config = load_config(temp_config_file)
    assert config["verify"]["max_n"] == 4
    assert setting(config, "verify", "workers") == 3
    assert setting(config, "output", "format") == "json"


def test_load_config_defaults(tmp_path, monkeypatch):
    """Without a .dcy file the defaults apply."""
    monkeypatch.chdir(tmp_path)
    config = load_config()
    assert setting(config, "verify", "max_n") == 6
    assert setting(config, "verify", "workers") == 1
    assert setting(config, "output", "format") == "text"


def test_load_config_missing_explicit_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "missing.dcy")


def test_load_config_invalid_yaml(tmp_path):
    path = tmp_path / DEFAULT_CONFIG_FILE
    path.write_text("verify: [unclosed", encoding="utf-8")
    with pytest.raises(yaml.YAMLError):
        load_config(path)


def test_setting_falls_back_on_bad_integers(temp_config_file):
    """An unset variable leaves workers empty, so the default is used."""
    config = load_config(temp_config_file)
    assert setting(config, "verify", "workers") == 1


def test_find_config_file_walks_up(tmp_path):
    (tmp_path / DEFAULT_CONFIG_FILE).write_text(SAMPLE_CONFIG, encoding="utf-8")
    nested = tmp_path / "a" / "b"
    nested.mkdir(parents=True)
    assert find_config_file(nested) == tmp_path / DEFAULT_CONFIG_FILE


def test_sample_config_parses():
    loaded = yaml.safe_load(SAMPLE_CONFIG)
    assert loaded["verify"]["max_n"] == 6
    assert loaded["output"]["format"] == "text"
