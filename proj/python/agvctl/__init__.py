"""Python front end for the agvctl simulator core."""

from agvctl._core import (
    AgvError,
    ConfigError,
    cli,
    compare,
    config_keys,
    plan,
    run,
    sat_eps,
    selftest,
)

__all__ = [
    "AgvError",
    "ConfigError",
    "cli",
    "compare",
    "config_keys",
    "plan",
    "run",
    "sat_eps",
    "selftest",
]
