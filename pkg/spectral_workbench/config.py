"""Configuration file loading and validation."""

import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .validation import CapValidator, ValidationError
from .audit import get_audit_logger

logger = logging.getLogger(__name__)


class ConfigError(Exception):
    """Raised when configuration loading or validation fails."""
    pass


@dataclass(frozen=True)
class Limits:
    """Typed view of the enumeration caps used by the engines."""

    max_ring: int = 16
    max_poset: int = 5
    max_hom_ring: int = 12
    lattice_cap: int = 64
    subring_cap: int = 36
    subring_exhaustive_limit: int = 16
    subring_max_generators: int = 3
    equational_cap: int = 16
    complete_normality_cap: int = 12
    poset_enum_cap: int = 6
    map_poset_cap: int = 4

    @classmethod
    def from_mapping(cls, values: Dict[str, Any]) -> "Limits":
        """Build limits from a config mapping, ignoring unrelated keys."""
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in values.items() if k in names and v is not None})

    def to_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class Config:
    """
    Configuration loader for YAML config files.

    Loads settings from .specwb.yaml and provides validation and
    default values.
    """

    DEFAULT_CONFIG_FILENAME = ".specwb.yaml"
    CONFIG_ENV_VAR = "SPECWB_CONFIG"

    # Default configuration values
    DEFAULTS = {
        # Enumeration caps
        "max_ring": 16,
        "max_poset": 5,
        "max_hom_ring": 12,
        "lattice_cap": 64,
        "subring_cap": 36,
        "subring_exhaustive_limit": 16,
        "subring_max_generators": 3,
        "equational_cap": 16,
        "complete_normality_cap": 12,
        "poset_enum_cap": 6,
        "map_poset_cap": 4,
        # Run settings
        "workers": 1,
        "time_budget_seconds": 600,
        "seed": 0,
        "record_timings": True,
        "density_mode": "definition",
        # Logging
        "verbose": False,
        "enable_audit_logging": True,
        "audit_log_file": None,
    }

    # Hard bounds for the caps; beyond these the searches stop being practical
    CAP_BOUNDS = {
        "max_ring": (2, 64),
        "max_poset": (1, 6),
        "max_hom_ring": (2, 36),
        "lattice_cap": (2, 128),
        "subring_cap": (2, 64),
        "subring_exhaustive_limit": (2, 36),
        "subring_max_generators": (1, 6),
        "equational_cap": (2, 32),
        "complete_normality_cap": (1, 16),
        "poset_enum_cap": (1, 7),
        "map_poset_cap": (1, 5),
        "workers": (1, 256),
        "time_budget_seconds": (1, 7 * 24 * 3600),
    }

    DENSITY_MODES = ("definition", "primes")

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration loader.

        Args:
            config_path: Path to config file. If None, looks for default file.
        """
        self.config_path = config_path
        self.config_file: Optional[Path] = None
        self.config_data: Dict[str, Any] = {}
        self._load_config()

    def _find_config_file(self) -> Optional[Path]:
        """
        Find configuration file in standard locations.

        Search order:
        1. Explicit path (if provided)
        2. $SPECWB_CONFIG
        3. Current directory (./.specwb.yaml)
        4. Home directory (~/.specwb.yaml)

        Returns:
            Path to config file if found, None otherwise
        """
        if self.config_path:
            path = Path(self.config_path).expanduser()
            if path.exists():
                return path
            raise ConfigError(f"Config file not found: {self.config_path}")

        env_path = os.environ.get(self.CONFIG_ENV_VAR)
        if env_path:
            if "\0" in env_path or len(env_path) > 1000:
                raise ConfigError(f"Environment variable {self.CONFIG_ENV_VAR} is invalid")
            path = Path(env_path).expanduser()
            if path.exists():
                return path
            raise ConfigError(
                f"Config file named by {self.CONFIG_ENV_VAR} not found: {env_path}"
            )

        current_dir_config = Path.cwd() / self.DEFAULT_CONFIG_FILENAME
        if current_dir_config.exists():
            return current_dir_config

        home_config = Path.home() / self.DEFAULT_CONFIG_FILENAME
        if home_config.exists():
            return home_config

        return None

    def _load_config(self) -> None:
        """Load configuration from YAML file."""
        config_file = self._find_config_file()

        if not config_file:
            self.config_data = self.DEFAULTS.copy()
            return

        audit_logger = get_audit_logger()

        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                loaded_config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            error_msg = f"Failed to parse YAML config: {e}"
            if audit_logger:
                audit_logger.log_validation_error('config_yaml', str(config_file), error_msg)
            raise ConfigError(error_msg)
        except OSError as e:
            error_msg = f"Failed to load config file: {e}"
            if audit_logger:
                audit_logger.log_file_error('read', str(config_file), error_msg)
            raise ConfigError(error_msg)

        if loaded_config is None:
            loaded_config = {}

        if not isinstance(loaded_config, dict):
            raise ConfigError(
                f"Invalid config file format: expected dictionary, got {type(loaded_config).__name__}"
            )

        unknown = sorted(set(loaded_config) - set(self.DEFAULTS))
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")

        self.config_data = {**self.DEFAULTS, **loaded_config}
        self.config_file = config_file

        logger.info("Loaded configuration from %s", config_file)

        if audit_logger:
            audit_logger.log_config_loaded(str(config_file), validation_status='pending')

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value.

        Args:
            key: Configuration key
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        return self.config_data.get(key, default)

    def get_all(self) -> Dict[str, Any]:
        """
        Get all configuration values.

        Returns:
            Dictionary of all configuration values
        """
        return self.config_data.copy()

    @property
    def limits(self) -> Limits:
        """Enumeration caps as a typed object."""
        return Limits.from_mapping(self.config_data)

    def validate(self) -> None:
        """
        Validate configuration values.

        Raises:
            ConfigError: If configuration is invalid
        """
        audit_logger = get_audit_logger()

        try:
            for key, (low, high) in self.CAP_BOUNDS.items():
                if key in self.config_data:
                    try:
                        CapValidator.validate_cap(key, self.config_data[key], low, high)
                    except ValidationError as e:
                        raise ConfigError(str(e))

            if self.config_data.get("subring_exhaustive_limit", 0) > self.config_data.get("subring_cap", 0):
                raise ConfigError("subring_exhaustive_limit cannot exceed subring_cap")

            if self.config_data.get("max_poset", 0) > self.config_data.get("poset_enum_cap", 0):
                raise ConfigError("max_poset cannot exceed poset_enum_cap")

            boolean_fields = ["verbose", "record_timings", "enable_audit_logging"]
            for field in boolean_fields:
                if field in self.config_data:
                    value = self.config_data[field]
                    if not isinstance(value, bool):
                        raise ConfigError(f"{field} must be a boolean, got {type(value).__name__}")

            seed = self.config_data.get("seed", 0)
            if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
                raise ConfigError(f"seed must be a non-negative integer, got {seed!r}")

            mode = self.config_data.get("density_mode", "definition")
            if mode not in self.DENSITY_MODES:
                raise ConfigError(
                    f"density_mode must be one of {list(self.DENSITY_MODES)}, got '{mode}'"
                )

            log_file = self.config_data.get("audit_log_file")
            if log_file is not None:
                if not isinstance(log_file, str):
                    raise ConfigError(f"audit_log_file must be a string, got {type(log_file).__name__}")
                if ".." in Path(log_file).parts or "\0" in log_file:
                    raise ConfigError("audit_log_file contains invalid characters")

            if audit_logger:
                audit_logger.log_config_loaded(
                    str(self.config_file or "default"),
                    validation_status='valid'
                )

        except ConfigError as e:
            if audit_logger:
                audit_logger.log_validation_error('config', str(self.config_data), str(e))
            raise

    def merge_with_cli_args(self, cli_args: Dict[str, Any]) -> Dict[str, Any]:
        """
        Merge configuration with CLI arguments.

        CLI arguments take precedence over config file values.

        Args:
            cli_args: Dictionary of CLI arguments

        Returns:
            Merged configuration dictionary
        """
        merged = self.config_data.copy()

        for key, value in cli_args.items():
            if value is not None:
                merged[key] = value

        return merged

    def set(self, key: str, value: Any) -> None:
        """
        Set configuration value and log the change.

        Args:
            key: Configuration key
            value: New value
        """
        audit_logger = get_audit_logger()
        old_value = self.config_data.get(key)

        self.config_data[key] = value

        if audit_logger and old_value != value:
            audit_logger.log_config_changed(key, old_value, value)

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "Config":
        """
        Load configuration from file.

        Args:
            config_path: Optional path to config file

        Returns:
            Config instance

        Raises:
            ConfigError: If config loading or validation fails
        """
        config = cls(config_path)
        config.validate()
        return config


def load_config(config_path: Optional[str] = None) -> Config:
    """
    Convenience function to load configuration.

    Args:
        config_path: Optional path to config file

    Returns:
        Config instance with loaded configuration

    Example:
        >>> config = load_config()
        >>> config.limits.max_ring
        16
    """
    return Config.load(config_path)
