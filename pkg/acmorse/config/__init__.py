"""Configuration management for acmorse."""

from .manager import load_config
from .models import (
    ConfigurationModel,
    ContinuationConfig,
    DeflationConfig,
    FlowConfig,
    GridConfig,
    LoggingConfig,
    MetricConfig,
    ObservabilityConfig,
    OutputConfig,
    PotentialConfig,
    RunConfig,
    SolverConfig,
    SpectrumConfig,
    TracingConfig,
)
from .providers import ConfigurationProvider, FileProvider

__all__ = [
    "ConfigurationModel",
    "ConfigurationProvider",
    "ContinuationConfig",
    "DeflationConfig",
    "FileProvider",
    "FlowConfig",
    "GridConfig",
    "LoggingConfig",
    "MetricConfig",
    "ObservabilityConfig",
    "OutputConfig",
    "PotentialConfig",
    "RunConfig",
    "SolverConfig",
    "SpectrumConfig",
    "TracingConfig",
    "load_config",
]
