"""Z2 Morse chain complexes and the reports computed from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from acmorse.solver.models import SolutionPoint
from acmorse.solver.verification import Verdict

from .gf2 import BinaryMatrix


class Reliability(StrEnum):
    """How a boundary matrix was obtained."""

    EXACT = "exact"
    HEURISTIC = "heuristic"
    INCOMPLETE = "incomplete"


@dataclass(eq=False)
class ChainComplex:
    """Generators bucketed by Morse index and boundary maps over Z2.

    ``boundaries[k]`` maps degree k to degree k - 1 and has shape
    (len(generators[k - 1]), len(generators[k])).
    """

    generators: dict[int, list[SolutionPoint]] = field(default_factory=dict)
    boundaries: dict[int, BinaryMatrix] = field(default_factory=dict)
    reliability: dict[int, Reliability] = field(default_factory=dict)
    missing: dict[int, list[tuple[str, str]]] = field(default_factory=dict)

    @property
    def top_degree(self) -> int:
        return max(self.generators, default=-1)

    def dimension(self, k: int) -> int:
        return len(self.generators.get(k, []))

    def boundary(self, k: int) -> BinaryMatrix:
        """The matrix of d_k, zero-filled for degrees with no recorded map."""
        if k in self.boundaries:
            return self.boundaries[k]
        return np.zeros((self.dimension(k - 1), self.dimension(k)), dtype=np.uint8)

    @property
    def is_complete(self) -> bool:
        return all(r is not Reliability.INCOMPLETE for r in self.reliability.values())

    @property
    def is_exact(self) -> bool:
        return all(r is Reliability.EXACT for r in self.reliability.values())

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready dump: generator tags per degree and 0/1 boundary arrays."""
        return {
            "generators": {
                str(k): [p.tag for p in points] for k, points in sorted(self.generators.items())
            },
            "boundaries": {
                str(k): matrix.astype(int).tolist() for k, matrix in sorted(self.boundaries.items())
            },
            "reliability": {str(k): r.value for k, r in sorted(self.reliability.items())},
            "missing": {
                str(k): [list(pair) for pair in pairs] for k, pairs in sorted(self.missing.items())
            },
        }


class HomologyResult(BaseModel):
    """Z2 Betti numbers per degree and how trustworthy they are."""

    ranks: list[int]
    dimensions: list[int]
    boundary_ranks: list[int]
    reliability: Reliability


class ParityReport(BaseModel):
    """Cardinality parities of index classes against the odd-at-zero-index pattern."""

    zero_index: int
    counts: dict[int, int] = Field(default_factory=dict)
    verdict: Verdict
    unpaired: str | None = None
    mismatched: list[int] = Field(default_factory=list)
