"""Trajectories of the gradient flow and connection counting results."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, Field

from acmorse.grid import FloatArray, ScalarField
from acmorse.solver.models import SolutionPoint


@dataclass(eq=False)
class Trajectory:
    """Sampled solution of u_t = -R(u).

    ``times``, ``states``, ``energies``, ``sup_norms`` and ``distances`` are
    aligned; ``distances`` holds the W-distance to the nearest known
    solution (inf when none were supplied).
    """

    times: list[float] = field(default_factory=list)
    states: list[ScalarField] = field(default_factory=list)
    energies: list[float] = field(default_factory=list)
    sup_norms: list[float] = field(default_factory=list)
    distances: list[float] = field(default_factory=list)
    start: SolutionPoint | None = None
    end: SolutionPoint | None = None
    steps: int = 0
    rejected_steps: int = 0
    equilibrated: bool = False

    def record(
        self, t: float, state: ScalarField, energy: float, distance: float
    ) -> None:
        self.times.append(t)
        self.states.append(state)
        self.energies.append(energy)
        self.sup_norms.append(state.sup_norm)
        self.distances.append(distance)

    @property
    def final(self) -> ScalarField:
        return self.states[-1]


@dataclass(frozen=True, eq=False)
class ScalarTrajectory:
    """Space-constant trajectory w(t) of w' = -f(w) from c_minus to c_plus."""

    c_minus: float
    c_plus: float
    times: FloatArray
    values: FloatArray
    interpolant: Callable[[FloatArray], FloatArray]

    def __call__(self, t: FloatArray) -> FloatArray:
        return self.interpolant(np.asarray(t))

    def dense(self, samples: int = 2001) -> tuple[FloatArray, FloatArray]:
        """Times and values on a fine grid over the integration interval."""
        times = np.unique(
            np.concatenate(
                [self.times, np.linspace(self.times[0], self.times[-1], samples)]
            )
        )
        return times, self(times)


class ModeMargin(BaseModel):
    """Growth margin of one spatial mode along a space-constant trajectory."""

    mode: int
    eigenvalue: float
    margin: float
    monotone: bool
    discrete_eigenvalue: float
    discrete_margin: float


class ModeDecayReport(BaseModel):
    """Whether nonconstant modes are excluded from the kernel along w(t)."""

    epsilon: float
    bound: float
    status: str
    eigenvalue_source: str = "discrete"
    margins: list[ModeMargin] = Field(default_factory=list)
    min_margin: float | None = None
    passed: bool | None = None


class LaunchRecord(BaseModel):
    """One flow launched from a source along an unstable direction."""

    direction: int
    sign: int
    limit: str | None
    time: float
    steps: int
    resolved: bool
    sensitive: bool = False


class ConnectionResult(BaseModel):
    """Mod-2 count of flow lines from ``source`` to ``target``."""

    source: str
    target: str
    count: int
    parity: int
    exact: bool
    reliable: bool
    launches: list[LaunchRecord] = Field(default_factory=list)
