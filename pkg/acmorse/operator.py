"""The Allen-Cahn residual, energy and Hessian under one sign convention.

    R(u) = -eps Delta_g u + f(u)                  (W-gradient of E)
    E(u) = (eps/2) <grad u, grad u> + sum_x w F(u)
    H(u) = -eps Delta_g + f'(u)                   (second variation of E)

Solutions minimize or saddle E; the Morse index of u is the number of
negative eigenvalues of H(u).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse as sp

from acmorse.exceptions import GridMismatchError
from acmorse.grid import (
    FloatArray,
    MetricField,
    ScalarField,
    TorusGrid,
    WeightedOperator,
    assemble_laplace_beltrami,
    central_differences,
)
from acmorse.grid.io import read_scalar_field, read_tensor_field
from acmorse.grid.models import cosine_factor
from acmorse.potential import Potential

if TYPE_CHECKING:
    from acmorse.config.models import MetricConfig, RunConfig


def metric_from_config(grid: TorusGrid, config: MetricConfig) -> MetricField:
    if config.kind == "conformal" and config.factor_file:
        metric = MetricField.conformal(
            grid, read_scalar_field(config.factor_file, grid).values
        )
    elif config.kind == "tensor" and config.tensor_file:
        metric = MetricField.from_tensor(grid, read_tensor_field(config.tensor_file, grid))
    else:
        metric = MetricField.euclidean(grid)
    if config.perturbation is not None:
        metric = metric.conformally_scaled(
            cosine_factor(
                grid, config.perturbation.amplitude, config.perturbation.wavenumbers
            )
        )
    return metric


@dataclass(frozen=True, eq=False)
class Problem:
    """The data (eps, g, f) fixing one Allen-Cahn equation on a grid.

    The Laplacian is assembled once and shared by every ``with_epsilon`` copy.
    """

    epsilon: float
    grid: TorusGrid
    metric: MetricField
    potential: Potential
    laplacian: WeightedOperator = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.metric.grid != self.grid:
            raise GridMismatchError("metric and problem grids differ")
        if self.laplacian is None:
            object.__setattr__(
                self, "laplacian", assemble_laplace_beltrami(self.grid, self.metric)
            )

    @classmethod
    def from_config(cls, config: RunConfig, epsilon: float | None = None) -> Problem:
        grid = TorusGrid.from_config(config.grid)
        eps = epsilon if epsilon is not None else config.epsilon
        if eps is None:
            eps = config.epsilon_window[1] if config.epsilon_window else 1.0
        return cls(
            eps,
            grid,
            metric_from_config(grid, config.metric),
            Potential.from_config(config.potential),
        )

    def with_epsilon(self, epsilon: float) -> Problem:
        return replace(self, epsilon=float(epsilon))

    @property
    def weights(self) -> FloatArray:
        return self.laplacian.weights

    @cached_property
    def stiffness(self) -> sp.csr_matrix:
        """Symmetric positive semidefinite A with Delta_g = -W^-1 A."""
        return sp.csr_matrix(-self.laplacian.stiffness)

    @cached_property
    def laplacian_bound(self) -> float:
        return self.laplacian.row_sum_bound()

    @cached_property
    def translation_differences(self) -> list[sp.csr_matrix]:
        """Central differences along the axes the metric is shift invariant on."""
        differences = central_differences(self.grid)
        return [differences[axis] for axis in self.metric.translation_axes()]

    def translation_directions(self, u: FloatArray) -> FloatArray:
        """Columns D_i u for the translation axes along which u is not constant."""
        scale = 1e-8 * (1.0 + float(np.abs(u).max(initial=0.0)))
        columns = [d @ u for d in self.translation_differences]
        kept = [c for c in columns if np.abs(c).max(initial=0.0) > scale]
        if not kept:
            return np.zeros((u.size, 0))
        return np.stack(kept, axis=1)

    def as_field(self, values: FloatArray) -> ScalarField:
        return ScalarField(self.grid, values)

    def values(self, u: ScalarField | FloatArray) -> FloatArray:
        if isinstance(u, ScalarField):
            if u.grid != self.grid:
                raise GridMismatchError(f"field lives on {u.grid}, expected {self.grid}")
            return u.values
        return np.asarray(u, dtype=np.float64)

    # --- vector kernels used by the solvers ---

    def residual_values(self, u: FloatArray) -> FloatArray:
        result: FloatArray = self.epsilon * (self.stiffness @ u) / self.weights + self.potential.f(u)
        return result

    def energy_value(self, u: FloatArray) -> float:
        gradient = 0.5 * self.epsilon * float(u @ (self.stiffness @ u))
        return gradient + float(self.weights @ self.potential.primitive(u))

    def hessian_stiffness(self, u: FloatArray) -> sp.csr_matrix:
        """Symmetric S_H = eps A + diag(w f'(u)); H = W^-1 S_H."""
        return sp.csr_matrix(
            self.epsilon * self.stiffness + sp.diags(self.weights * self.potential.fprime(u))
        )

    def epsilon_derivative(self, u: FloatArray) -> FloatArray:
        """dR/d eps = -Delta_g u."""
        result: FloatArray = (self.stiffness @ u) / self.weights
        return result

    def norm(self, values: FloatArray) -> float:
        return float(np.sqrt(np.sum(values * values * self.weights)))

    def inner(self, u: FloatArray, v: FloatArray) -> float:
        return float(np.sum(u * v * self.weights))

    def zero_tolerance(self, u: FloatArray, factor: float = 1e-8) -> float:
        """Eigenvalues of H(u) with |lambda| <= this count as zero."""
        slope = float(np.max(np.abs(self.potential.fprime(u)), initial=0.0))
        return factor * (1.0 + self.epsilon * self.laplacian_bound + slope)

    # --- field-level operations ---

    def residual(self, u: ScalarField | FloatArray) -> ScalarField:
        return self.as_field(self.residual_values(self.values(u)))

    def energy(self, u: ScalarField | FloatArray) -> float:
        return self.energy_value(self.values(u))

    def hessian(self, u: ScalarField | FloatArray) -> WeightedOperator:
        return WeightedOperator(
            self.hessian_stiffness(self.values(u)), self.weights, self.grid
        )

    def residual_norm(self, u: ScalarField | FloatArray) -> float:
        return self.norm(self.residual_values(self.values(u)))


def residual(prob: Problem, u: ScalarField) -> ScalarField:
    return prob.residual(u)


def energy(prob: Problem, u: ScalarField) -> float:
    return prob.energy(u)


def hessian(prob: Problem, u: ScalarField) -> WeightedOperator:
    return prob.hessian(u)
