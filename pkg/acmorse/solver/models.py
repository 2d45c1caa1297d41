"""Solution points, branches and branch events."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from acmorse.grid import ScalarField


class EventKind(StrEnum):
    """Kinds of events recorded along a branch."""

    FOLD = "fold"
    BRANCH_POINT = "branch-point"
    INDEX_CHANGE = "index-change"
    STALL = "stall"


@dataclass(frozen=True, eq=False)
class SolutionPoint:
    """A discrete solution (eps, u) with its diagnostics."""

    epsilon: float
    u: ScalarField
    residual_norm: float
    index: int
    nullity: int
    energy: float
    tag: str
    iterations: int = 0
    regularized_steps: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def sup_norm(self) -> float:
        return self.u.sup_norm

    @property
    def is_nondegenerate(self) -> bool:
        return self.nullity == 0

    @property
    def is_constant(self) -> bool:
        values = self.u.values
        return bool(np.ptp(values) <= 1e-10 * (1.0 + np.abs(values).max()))

    def summary(self, orbit: int | None = None) -> SolutionSummary:
        return SolutionSummary(
            tag=self.tag,
            epsilon=self.epsilon,
            sup_norm=self.sup_norm,
            mean=float(self.u.values.mean()),
            energy=self.energy,
            index=self.index,
            nullity=self.nullity,
            residual_norm=self.residual_norm,
            orbit=orbit,
        )


class SolutionSummary(BaseModel):
    """Serializable digest of a SolutionPoint."""

    tag: str
    epsilon: float
    sup_norm: float
    mean: float
    energy: float
    index: int
    nullity: int
    residual_norm: float
    orbit: int | None = None


class BranchEvent(BaseModel):
    """An event located along a branch."""

    kind: EventKind
    arclength: float
    epsilon: float
    data: dict[str, Any] = Field(default_factory=dict)


@dataclass(eq=False)
class Branch:
    """Arclength-ordered solution points traced by continuation."""

    branch_id: str
    points: list[SolutionPoint] = field(default_factory=list)
    arclengths: list[float] = field(default_factory=list)
    events: list[BranchEvent] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def epsilons(self) -> list[float]:
        return [p.epsilon for p in self.points]

    @property
    def stalled(self) -> bool:
        return any(e.kind is EventKind.STALL for e in self.events)

    def events_of(self, kind: EventKind) -> list[BranchEvent]:
        return [e for e in self.events if e.kind is kind]


@dataclass(frozen=True, eq=False)
class BranchSeed:
    """A predictor state near a degenerate point, to be corrected by Newton."""

    epsilon: float
    u: ScalarField
    direction: int
    kernel_index: int
    tag: str
