"""acmorse: Allen-Cahn solution branches, Morse indices and Z2 Morse homology."""

from acmorse.application import Application
from acmorse.config.models import RunConfig
from acmorse.grid import MetricField, ScalarField, SymTensorField, TorusGrid
from acmorse.operator import Problem
from acmorse.potential import Potential

__all__ = [
    "Application",
    "MetricField",
    "Potential",
    "Problem",
    "RunConfig",
    "ScalarField",
    "SymTensorField",
    "TorusGrid",
]
