import os
import json
from pathlib import Path
from typing import Dict, Optional, Union
from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel

from affhecke.errors import ConfigurationError

# Define the global config path
CONFIG_DIR = Path.home() / ".affhecke"
CONFIG_FILE = CONFIG_DIR / "config.json"

# Diagnostics go to stderr so machine-readable output stays clean
console = Console(stderr=True)

# Global cache for the loaded config
_config_cache: Optional[Dict[str, Union[str, int]]] = None
_config_sources: Optional[Dict[str, str]] = None

# Mapping from ENV var name (uppercase) to internal config key (lowercase)
ENV_MAP = {
    "AFFHECKE_MAX_GROUP_ORDER": "max_group_order",
    "AFFHECKE_MAX_MATRIX_ENTRIES": "max_matrix_entries",
    "AFFHECKE_BASIS_WINDOW": "basis_window",
    "AFFHECKE_SHIFT_V_POWER": "shift_v_power",
    "AFFHECKE_CONVOLUTION_ORDER": "convolution_order",
    "AFFHECKE_TWIST_SLOTS": "twist_slots",
    "AFFHECKE_MAX_WORKERS": "max_workers",
}

INT_KEYS = ("max_group_order", "max_matrix_entries", "basis_window", "shift_v_power", "max_workers")

ACCEPTED_VALUES = {
    "convolution_order": ("exchanged", "direct"),
    "twist_slots": ("direct", "exchanged"),
}


def _get_default_conventions() -> Dict[str, Union[str, int]]:
    """Built-in defaults, used when the packaged conventions.json cannot be read."""
    return {
        "max_group_order": 1000000,
        "max_matrix_entries": 4000000,
        "basis_window": 8,
        "shift_v_power": -1,
        "convolution_order": "exchanged",
        "twist_slots": "direct",
        "max_workers": 4,
        "eigenvalues": "(v, -v^-1)",
        "semidirect_side": "w*t_lambda",
        "cartan_convention": "A[i][j] = <alpha_j, alpha_i^vee>",
        "weight_basis": "fundamental weights",
        "affine_reflection": "s0 = t_beta*s_beta, beta^vee the highest coroot",
    }


def _load_packaged_conventions() -> Dict[str, Union[str, int]]:
    """Read config/conventions.json shipped with the package."""
    current_dir = os.path.dirname(os.path.abspath(__file__))
    path = os.path.join(current_dir, "config", "conventions.json")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (FileNotFoundError, json.JSONDecodeError):
        return _get_default_conventions()


def load_config() -> Dict[str, Union[str, int]]:
    """
    Load configuration: packaged defaults, then the user config file, then .env
    and environment variables. Keys from the config file are normalized to lowercase.
    """
    global _config_cache, _config_sources
    if _config_cache is not None:
        return _config_cache

    config = dict(_load_packaged_conventions())
    sources = {key: "defaults" for key in config}

    if CONFIG_FILE.exists():
        with open(CONFIG_FILE, "r") as f:
            try:
                file_config = json.load(f)
                for key, value in file_config.items():
                    config[key.lower()] = value
                    sources[key.lower()] = str(CONFIG_FILE)
            except json.JSONDecodeError as e:
                console.print(Panel(f"[bold red]Error parsing config file:[/] {CONFIG_FILE}\n[bold]Reason:[/] {e}",
                                    title="[bold yellow]Configuration Error[/bold yellow]", expand=False, border_style="red"))
                raise ConfigurationError(f"invalid JSON in {CONFIG_FILE}: {e}") from e
            except AttributeError:
                # Handle cases where the file content is not a dictionary
                pass

    # .env in the working directory never overrides variables already exported
    load_dotenv(override=False)
    for env_var, config_key in ENV_MAP.items():
        env_value = os.getenv(env_var)
        if env_value is not None:
            config[config_key] = env_value
            sources[config_key] = f"Environment Variable ({env_var})"

    for key in INT_KEYS:
        try:
            config[key] = int(config[key])
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"{key} must be an integer, got {config[key]!r}") from e

    _config_cache = config
    _config_sources = sources
    return _config_cache


def reset_config_cache() -> None:
    global _config_cache, _config_sources
    _config_cache = None
    _config_sources = None


def validate_config() -> None:
    """Reject convention values outside their accepted sets and non-positive bounds."""
    config = load_config()
    for key, accepted in ACCEPTED_VALUES.items():
        if config.get(key) not in accepted:
            raise ConfigurationError(
                f"{key} must be one of {', '.join(accepted)}, got {config.get(key)!r}"
            )
    for key in ("max_group_order", "max_matrix_entries", "basis_window", "max_workers"):
        if config[key] <= 0:
            raise ConfigurationError(f"{key} must be positive, got {config[key]}")


def get_config_sources() -> Dict[str, str]:
    """Returns the sources of the configuration values."""
    global _config_sources
    if _config_sources is None:
        load_config()
    return _config_sources


def get_bounds_config() -> Dict[str, int]:
    config = load_config()
    return {
        "max_group_order": config["max_group_order"],
        "max_matrix_entries": config["max_matrix_entries"],
        "basis_window": config["basis_window"],
    }


def get_convention_config() -> Dict[str, Union[str, int]]:
    config = load_config()
    return {
        "shift_v_power": config["shift_v_power"],
        "convolution_order": config["convolution_order"],
        "twist_slots": config["twist_slots"],
    }


def get_runtime_config() -> Dict[str, int]:
    config = load_config()
    return {"max_workers": config["max_workers"]}


def conventions_header() -> Dict[str, str]:
    """The conventions block echoed into every command-line artifact."""
    config = load_config()
    return {
        "eigenvalues": str(config["eigenvalues"]),
        "semidirect_side": str(config["semidirect_side"]),
        "cartan_convention": str(config["cartan_convention"]),
        "weight_basis": str(config["weight_basis"]),
        "affine_reflection": str(config["affine_reflection"]),
        "convolution_order": str(config["convolution_order"]),
        "twist_slots": str(config["twist_slots"]),
        "shift": f"<j> -> v^({config['shift_v_power']}*j)",
    }
