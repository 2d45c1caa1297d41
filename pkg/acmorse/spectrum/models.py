"""Result types for eigenvalue and inertia computations."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, Field

from acmorse.grid import FloatArray, ScalarField, TorusGrid


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """The m algebraically smallest eigenpairs of a W-self-adjoint operator.

    ``eigenvectors`` has one W-orthonormal column per eigenvalue.
    ``next_eigenvalue`` is the (m+1)-th eigenvalue, or +inf when the whole
    spectrum was computed; counts that reach past it are incomplete.
    """

    grid: TorusGrid
    eigenvalues: FloatArray
    eigenvectors: FloatArray
    weights: FloatArray
    cluster_tol: float = 1e-6
    next_eigenvalue: float = float("inf")
    method: str = "dense"
    residuals: FloatArray = field(default_factory=lambda: np.zeros(0))

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def eigenfields(self) -> list[ScalarField]:
        return [ScalarField(self.grid, self.eigenvectors[:, k]) for k in range(len(self))]

    def eigenfield(self, k: int) -> ScalarField:
        return ScalarField(self.grid, self.eigenvectors[:, k])

    def _same_cluster(self, a: float, b: float) -> bool:
        return abs(b - a) <= self.cluster_tol * max(1.0, abs(a), abs(b))

    def cluster_ids(self) -> list[int]:
        """Cluster id per eigenvalue; numerically equal eigenvalues share an id."""
        ids: list[int] = []
        for k, value in enumerate(self.eigenvalues):
            if k and self._same_cluster(float(self.eigenvalues[k - 1]), float(value)):
                ids.append(ids[-1])
            else:
                ids.append(ids[-1] + 1 if ids else 0)
        return ids

    def clusters(self) -> list[tuple[float, int]]:
        """(mean eigenvalue, multiplicity) per cluster, ascending."""
        ids = np.asarray(self.cluster_ids())
        return [
            (float(self.eigenvalues[ids == cid].mean()), int(np.sum(ids == cid)))
            for cid in range(int(ids.max(initial=-1)) + 1)
        ]

    def last_cluster_complete(self) -> bool:
        """False when the next eigenvalue belongs to the last computed cluster."""
        if not len(self) or not np.isfinite(self.next_eigenvalue):
            return True
        return not self._same_cluster(float(self.eigenvalues[-1]), self.next_eigenvalue)

    def multiplicity(self, k: int) -> int:
        ids = self.cluster_ids()
        count = ids.count(ids[k])
        if ids[k] == ids[-1] and not self.last_cluster_complete():
            count += 1
        return count

    def is_simple(self, k: int) -> bool:
        return self.multiplicity(k) == 1


class Inertia(BaseModel):
    """Negative and zero eigenvalue counts of a self-adjoint operator."""

    index: int = Field(ge=0)
    nullity: int = Field(ge=0)
    zero_tol: float
    method: str = "ldl"
    warnings: list[str] = Field(default_factory=list)

    def as_tuple(self) -> tuple[int, int]:
        return (self.index, self.nullity)


class SingularParameter(BaseModel):
    """An epsilon at which the constant solution c degenerates: eps * lam = -f'(c)."""

    epsilon: float
    zero: float
    eigenvalue: float
    multiplicity: int = 1
