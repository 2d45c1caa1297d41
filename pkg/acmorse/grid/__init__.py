"""Discrete geometry on flat tori."""

from .io import read_scalar_field, read_tensor_field, write_scalar_field, write_tensor_field
from .laplacian import (
    WeightedOperator,
    apply_perturbed_laplacian,
    assemble_laplace_beltrami,
    assemble_stiffness,
    central_differences,
    conformal_part,
    forward_differences,
    perturbation_stiffness,
    trace_free_part,
    translation_axes,
    weighted_inner,
    weighted_integral,
    weighted_norm,
)
from .models import FloatArray, MetricField, ScalarField, SymTensorField, TorusGrid

__all__ = [
    "FloatArray",
    "MetricField",
    "ScalarField",
    "SymTensorField",
    "TorusGrid",
    "WeightedOperator",
    "apply_perturbed_laplacian",
    "assemble_laplace_beltrami",
    "assemble_stiffness",
    "central_differences",
    "conformal_part",
    "forward_differences",
    "perturbation_stiffness",
    "read_scalar_field",
    "read_tensor_field",
    "trace_free_part",
    "translation_axes",
    "weighted_inner",
    "weighted_integral",
    "weighted_norm",
    "write_scalar_field",
    "write_tensor_field",
]
