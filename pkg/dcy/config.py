"""Configuration handling for domino-cycles."""

import copy
import os
import re
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from rich.console import Console

console = Console()

DEFAULT_CONFIG_FILE = ".dcy"

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "verify": {"max_n": 6, "workers": 1},
    "output": {"format": "text"},
}

SAMPLE_CONFIG = """\
# domino-cycles settings; command-line flags override these values.
verify:
  # Largest n accepted by `dcy verify` and `dcy classes`.
  max_n: 6
  # Worker processes for sharded verification, e.g. ${DCY_WORKERS}.
  workers: 1
output:
  # text or json
  format: text
"""

_ENV_REF = re.compile(r"\$\{([^}]+)\}")


def find_config_file(start_dir: Optional[Path] = None) -> Optional[Path]:
    """
    Find the closest .dcy file by walking up directories.

    Args:
        start_dir: The directory to start searching from. Defaults to current directory.

    Returns:
        Path to the .dcy file if found, None otherwise.
    """
    current_dir = (start_dir or Path.cwd()).absolute()
    for directory in (current_dir, *current_dir.parents):
        config_path = directory / DEFAULT_CONFIG_FILE
        if config_path.exists():
            return config_path
    return None


def load_config(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """
    Load settings from a .dcy file merged over the defaults.

    A missing file is not an error; the defaults are returned.

    Args:
        config_path: Path to the .dcy file. If None, will search for one.

    Returns:
        Dictionary with "verify" and "output" sections.

    Raises:
        FileNotFoundError: If an explicit config_path does not exist.
        yaml.YAMLError: If the file is not valid YAML.
    """
    if config_path is not None and not config_path.exists():
        raise FileNotFoundError(f"No {DEFAULT_CONFIG_FILE} file at {config_path}.")
    if config_path is None:
        config_path = find_config_file()
    config = copy.deepcopy(DEFAULTS)
    if config_path is None:
        return config

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        console.print(f"[bold red]Error parsing {config_path}:[/bold red]")
        console.print(f"[red]{str(e)}[/red]")
        raise

    for section, values in _expand_env_vars(loaded).items():
        if isinstance(values, dict) and section in config:
            config[section].update(values)
        else:
            config[section] = values
    return config


def _expand_env_vars(config_item):
    """
    Recursively expand ${VAR_NAME} references from the environment.

    Unset variables expand to the empty string.
    """
    if isinstance(config_item, dict):
        return {k: _expand_env_vars(v) for k, v in config_item.items()}
    if isinstance(config_item, list):
        return [_expand_env_vars(i) for i in config_item]
    if isinstance(config_item, str):
        return _ENV_REF.sub(lambda m: os.environ.get(m.group(1), ""), config_item)
    return config_item


def setting(config: Dict[str, Any], section: str, key: str) -> Any:
    """Read one setting, coercing numeric defaults back to int after env expansion."""
    value = config.get(section, {}).get(key, DEFAULTS[section][key])
    default = DEFAULTS[section][key]
    if isinstance(default, int):
        try:
            return int(value)
        except (TypeError, ValueError):
            console.print(
                f"[yellow]Warning:[/yellow] {section}.{key}={value!r} is not an integer, "
                f"using {default}"
            )
            return default
    return value
