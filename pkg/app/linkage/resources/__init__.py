"""
Resources package for the tournament linkage toolkit.

Contains configuration settings and benchmark suite definitions.
"""

from .config import (
    DEFAULT_CONFIG,
    ToolkitConfig,
    LinkerConfig,
    OracleConfig,
    BenchConfig,
    ServiceConfig,
    EventType,
    Stage,
)

__all__ = [
    "DEFAULT_CONFIG",
    "ToolkitConfig",
    "LinkerConfig",
    "OracleConfig",
    "BenchConfig",
    "ServiceConfig",
    "EventType",
    "Stage",
]
