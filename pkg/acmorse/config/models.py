"""Configuration models for acmorse.

Defines the unified run configuration loaded from a single YAML file.
The Pydantic model hierarchy mirrors the YAML structure exactly; nested
sections play the role of dotted keys (``potential.coeffs``).
"""

import logging
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ConfigurationModel(BaseModel):
    """Base configuration model; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", frozen=True)


# --- Geometry ---


class GridConfig(ConfigurationModel):
    """Periodic grid on a flat torus."""

    dim: int = Field(default=1, ge=1, le=3, description="Torus dimension")
    lengths: list[float] = Field(
        default_factory=lambda: [6.283185307179586],
        description="Period per axis",
    )
    sizes: list[int] = Field(default_factory=lambda: [256], description="Nodes per axis")

    @field_validator("lengths")
    @classmethod
    def validate_lengths(cls, v: list[float]) -> list[float]:
        if any(length <= 0 for length in v):
            raise ValueError("all lengths must be positive")
        return v

    @field_validator("sizes")
    @classmethod
    def validate_sizes(cls, v: list[int]) -> list[int]:
        if any(size < 4 for size in v):
            raise ValueError("every axis needs at least 4 nodes")
        return v

    @model_validator(mode="after")
    def validate_shape(self) -> "GridConfig":
        if len(self.lengths) != self.dim or len(self.sizes) != self.dim:
            raise ValueError(
                f"lengths and sizes must both have {self.dim} entries "
                f"(got {len(self.lengths)} and {len(self.sizes)})"
            )
        return self


class CosinePerturbationConfig(ConfigurationModel):
    """Conformal factor 1 + amplitude * cos(k . x) applied on top of the metric."""

    amplitude: float = Field(default=0.1, gt=-1.0, lt=1.0)
    wavenumbers: list[int] = Field(
        default_factory=lambda: [2], description="Integer wavenumber per axis"
    )


class MetricConfig(ConfigurationModel):
    """Where the metric comes from: flat, a conformal factor file or a tensor file."""

    kind: Literal["euclidean", "conformal", "tensor"] = "euclidean"
    factor_file: str | None = Field(
        default=None, description="CSV conformal factor field (kind=conformal)"
    )
    tensor_file: str | None = Field(
        default=None, description="CSV tensor field, upper triangle per node"
    )
    perturbation: CosinePerturbationConfig | None = None

    @model_validator(mode="after")
    def validate_files(self) -> "MetricConfig":
        required = {"conformal": self.factor_file, "tensor": self.tensor_file}
        if self.kind in required:
            path = required[self.kind]
            if path is None:
                raise ValueError(f"metric kind '{self.kind}' needs a field file")
            if not Path(path).is_file():
                raise ValueError(f"field file not found: {path}")
        return self


class PotentialConfig(ConfigurationModel):
    """Polynomial nonlinearity f; ``potential: cubic`` and ``potential: quintic`` are shorthands."""

    kind: Literal["cubic", "quintic", "polynomial"] = "cubic"
    coeffs: list[float] | None = Field(
        default=None, description="Ascending coefficients a0, a1, ... of f"
    )

    @model_validator(mode="before")
    @classmethod
    def expand_shorthand(cls, data: Any) -> Any:
        if isinstance(data, str):
            return {"kind": data}
        if isinstance(data, dict) and "coeffs" in data and "kind" not in data:
            return {**data, "kind": "polynomial"}
        return data

    @model_validator(mode="after")
    def validate_coeffs(self) -> "PotentialConfig":
        if self.kind == "polynomial" and not self.coeffs:
            raise ValueError("polynomial potential needs coeffs")
        return self


# --- Numerics ---


class SolverConfig(ConfigurationModel):
    """Damped Newton settings."""

    tolerance: float = Field(default=1e-10, gt=0.0)
    max_iterations: int = Field(default=50, ge=1)
    backtrack_factor: float = Field(default=0.5, gt=0.0, lt=1.0)
    armijo: float = Field(default=1e-4, gt=0.0, lt=1.0)
    min_damping: float = Field(default=2.0**-20, gt=0.0)
    regularization: float = Field(default=1e-6, gt=0.0)
    divergence_factor: float = Field(default=10.0, gt=1.0)
    bound_slack: float = Field(default=1e-6, gt=0.0)
    pin_translations: bool = True
    pin_threshold: float = Field(default=1e-3, gt=0.0)


class DeflationConfig(ConfigurationModel):
    """Deflated search settings."""

    seeds: int = Field(default=200, ge=0)
    power: float = Field(default=2.0, gt=0.0)
    shift: float = Field(default=1.0, ge=0.0)
    distinct_threshold: float = Field(default=1e-4, gt=0.0)
    max_wavenumber: int = Field(default=3, ge=0)
    max_iterations: int = Field(default=100, ge=1)
    polish_threshold: float = Field(default=1e-4, gt=0.0)


class ContinuationConfig(ConfigurationModel):
    """Pseudo-arclength step control and branch switching."""

    initial_step: float = Field(default=1e-2, gt=0.0)
    min_step: float = Field(default=1e-8, gt=0.0)
    max_step: float = Field(default=1e-1, gt=0.0)
    max_steps: int = Field(default=500, ge=1)
    growth: float = Field(default=1.5, ge=1.0)
    fast_iterations: int = Field(default=4, ge=1)
    corrector_iterations: int = Field(default=15, ge=1)
    event_tol: float = Field(default=1e-9, gt=0.0)
    direction: Literal[-1, 1] = -1
    switch_amplitude: float = Field(default=0.1, gt=0.0)
    switch_epsilon_offset: float = Field(default=-1e-2)

    @model_validator(mode="after")
    def validate_bounds(self) -> "ContinuationConfig":
        if not self.min_step <= self.initial_step <= self.max_step:
            raise ValueError("need min_step <= initial_step <= max_step")
        return self


class SpectrumConfig(ConfigurationModel):
    """Eigen solver settings."""

    count: int = Field(default=10, ge=1)
    cluster_tol: float = Field(default=1e-6, gt=0.0)
    dense_threshold: int = Field(default=2000, ge=1)
    zero_tol_factor: float = Field(default=1e-8, gt=0.0)
    max_iterations: int = Field(default=10000, ge=1)
    band_tol: float = Field(default=1e-4, gt=0.0)


class FlowConfig(ConfigurationModel):
    """IMEX gradient flow and connection counting settings."""

    dt: float = Field(default=0.1, gt=0.0)
    min_dt: float = Field(default=1e-8, gt=0.0)
    max_dt: float = Field(default=1.0, gt=0.0)
    max_steps: int = Field(default=100_000, ge=1)
    energy_tol: float = Field(default=1e-9, gt=0.0)
    stabilization: float | None = Field(default=None, ge=0.0)
    equilibrium_residual: float = Field(default=1e-8, gt=0.0)
    equilibrium_distance: float = Field(default=1e-3, gt=0.0)
    launch_scale: float = Field(default=1e-3, gt=0.0)
    samples: int = Field(default=2, ge=1)
    modes: int = Field(default=5, ge=0)


class OutputConfig(ConfigurationModel):
    """Where and what to write."""

    directory: str = Field(default="out", description="Output directory")
    svg: bool = Field(default=True, description="Emit the bifurcation diagram")
    field_files: bool = Field(default=True, description="Write per-point field CSVs")


# --- Observability ---


class ContextConfig(ConfigurationModel):
    """Context variable injection into log records."""

    enabled: bool = Field(default=True, description="Enable context injection")


class LoggingConfig(ConfigurationModel):
    """Logging subsystem configuration."""

    enabled: bool = Field(
        default=True, description="When False, no logging handlers are installed"
    )
    level: str = Field(default="INFO", description="Root log level")
    format: Literal["text", "color", "json"] = Field(
        default="text", description="Default format: text | color | json"
    )
    loggers: dict[str, str] = Field(
        default_factory=dict,
        description="Per-logger level overrides, e.g. {'acmorse.solver': 'DEBUG'}",
    )
    context: ContextConfig = Field(default_factory=ContextConfig)

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        if not hasattr(logging, v.upper()) and v.upper() not in (
            "TRACE",
            "EVENT_LOG",
            "METRIC_LOG",
        ):
            raise ValueError(
                f"Unknown log level '{v}'. "
                f"Use one of: TRACE, DEBUG, INFO, WARNING, ERROR, CRITICAL."
            )
        return v


class TracingConfig(ConfigurationModel):
    """Tracing subsystem configuration."""

    enabled: bool = Field(default=False, description="Enable OpenTelemetry spans")
    backend: Literal["otlp_grpc", "otlp_http", "console"] = Field(
        default="console", description="Tracing backend: otlp_grpc | otlp_http | console"
    )
    service_name: str = Field(default="acmorse", description="OTEL service name")
    endpoint: str = Field(default="", description="OTLP collector endpoint")
    sampling_rate: float = Field(
        default=1.0, ge=0.0, le=1.0, description="Trace sampling rate"
    )


class ObservabilityConfig(ConfigurationModel):
    """Combined logging + tracing configuration."""

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    tracing: TracingConfig = Field(default_factory=TracingConfig)


# --- Root ---


class RunConfig(ConfigurationModel):
    """Root configuration, the entire YAML tree.

    Example YAML::

        grid:
          dim: 1
          lengths: [6.283185307179586]
          sizes: [256]
        metric:
          kind: euclidean
        potential: cubic
        epsilon: 0.4
        deflation:
          seeds: 40
        observability:
          logging:
            level: INFO
            format: json
        seed: 7
    """

    grid: GridConfig = Field(default_factory=GridConfig)
    metric: MetricConfig = Field(default_factory=MetricConfig)
    potential: PotentialConfig = Field(default_factory=PotentialConfig)
    epsilon: float | None = Field(default=None, gt=0.0)
    epsilon_window: tuple[float, float] | None = None
    solver: SolverConfig = Field(default_factory=SolverConfig)
    deflation: DeflationConfig = Field(default_factory=DeflationConfig)
    continuation: ContinuationConfig = Field(default_factory=ContinuationConfig)
    spectrum: SpectrumConfig = Field(default_factory=SpectrumConfig)
    flow: FlowConfig = Field(default_factory=FlowConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    observability: ObservabilityConfig = Field(default_factory=ObservabilityConfig)
    sweep_points: int = Field(default=5, ge=1, description="Epsilon values per sweep")
    seed: int = Field(default=0, ge=0, lt=2**64)
    threads: int = Field(default=1, ge=1)

    @field_validator("epsilon_window")
    @classmethod
    def validate_window(
        cls, v: tuple[float, float] | None
    ) -> tuple[float, float] | None:
        if v is not None and not 0.0 < v[0] < v[1]:
            raise ValueError("epsilon_window must satisfy 0 < lower < upper")
        return v
