"""Run configuration parsing, validation and emission"""

from .config_manager import (
    CONFIG_SCHEMA,
    ConfigError,
    ConfigManager,
    MissingRequired,
    OutOfRange,
    RunConfig,
    UnknownKey,
    default_manager,
    emit_config,
    flatten,
    parse_config,
)

__all__ = [
    "CONFIG_SCHEMA",
    "ConfigError",
    "ConfigManager",
    "MissingRequired",
    "OutOfRange",
    "RunConfig",
    "UnknownKey",
    "default_manager",
    "emit_config",
    "flatten",
    "parse_config",
]
