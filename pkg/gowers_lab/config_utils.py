"""
Configuration utilities for gowers_lab
"""
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field

MAX_AMPLITUDES_ENV = "GOWERS_LAB_MAX_AMPLITUDES"


class LabSettings(BaseModel):
    """Resolved settings shared by every module"""
    max_amplitudes: int = Field(default=2 ** 24, ge=1)
    max_polynomials: int = Field(default=2 ** 22, ge=1)
    debug_norm_checks: bool = False
    confidence: float = Field(default=0.99, gt=0.0, lt=1.0)
    log_level: str = "INFO"


def find_config_file(filename: str = "config.yaml") -> str:
    """
    Find a config file by looking up the directory tree from the current directory
    and from this module's location

    Args:
        filename: Name of the config file to find

    Returns:
        str: Path to the config file (the most likely location if none exists)
    """
    current_dir = Path.cwd()
    for _ in range(5):  # Don't go up more than 5 levels
        for subdir in ["config", "."]:
            config_path = current_dir / subdir / filename
            if config_path.exists():
                return str(config_path)
        current_dir = current_dir.parent

    module_dir = Path(__file__).parent
    for _ in range(5):
        config_path = module_dir / "config" / filename
        if config_path.exists():
            return str(config_path)
        module_dir = module_dir.parent

    return f"config/{filename}"


def load_config(filename: str = "config.yaml") -> Dict[str, Any]:
    """
    Load configuration from YAML file

    Args:
        filename: Name of the config file to load

    Returns:
        Dict[str, Any]: Configuration dictionary

    Raises:
        FileNotFoundError: If config file cannot be found
        yaml.YAMLError: If config file is invalid YAML
    """
    config_path = find_config_file(filename)

    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f)
            if config is None:
                return {}
            return config
    except FileNotFoundError:
        raise FileNotFoundError(
            f"Configuration file not found. Looked for '{filename}' in:\n"
            f"- Current directory: {Path.cwd()}\n"
            f"- Config subdirectory: {Path.cwd() / 'config'}\n"
            f"- Module directory: {Path(__file__).parent}\n"
            f"Please ensure the config file exists in one of these locations."
        )
    except yaml.YAMLError as e:
        raise yaml.YAMLError(f"Invalid YAML in config file '{config_path}': {e}")


def load_config_safe(filename: str = "config.yaml", default: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Load configuration from YAML file with fallback to default

    Args:
        filename: Name of the config file to load
        default: Default configuration to use if file not found

    Returns:
        Dict[str, Any]: Configuration dictionary
    """
    if default is None:
        default = {}

    try:
        return load_config(filename)
    except (FileNotFoundError, yaml.YAMLError):
        return default


def settings_from_config(config: Dict[str, Any], environ: Optional[Dict[str, str]] = None) -> LabSettings:
    """Flatten the YAML sections into LabSettings, then apply the environment override"""
    environ = os.environ if environ is None else environ
    simulation = config.get('simulation', {}) or {}
    enumeration = config.get('enumeration', {}) or {}
    sampling = config.get('sampling', {}) or {}
    logging_cfg = config.get('logging', {}) or {}

    values: Dict[str, Any] = {}
    if 'max_amplitudes' in simulation:
        values['max_amplitudes'] = simulation['max_amplitudes']
    if 'debug_norm_checks' in simulation:
        values['debug_norm_checks'] = simulation['debug_norm_checks']
    if 'max_polynomials' in enumeration:
        values['max_polynomials'] = enumeration['max_polynomials']
    if 'confidence' in sampling:
        values['confidence'] = sampling['confidence']
    if 'level' in logging_cfg:
        values['log_level'] = logging_cfg['level']

    override = environ.get(MAX_AMPLITUDES_ENV)
    if override:
        values['max_amplitudes'] = int(override)

    return LabSettings(**values)


@lru_cache(maxsize=None)
def get_settings() -> LabSettings:
    """Settings from config/config.yaml plus environment, resolved once per process"""
    return settings_from_config(load_config_safe("config.yaml"))
