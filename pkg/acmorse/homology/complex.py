"""Assembling the Morse complex from solutions and connection counts."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from acmorse.exceptions import (
    BoundaryMismatchError,
    DegenerateGeneratorError,
    IncompleteComplexError,
)
from acmorse.flow.models import ConnectionResult
from acmorse.solver.models import SolutionPoint

from . import gf2
from .models import ChainComplex, HomologyResult, Reliability

logger = logging.getLogger(__name__)


def assemble_complex(
    solutions: Sequence[SolutionPoint], counts: Sequence[ConnectionResult]
) -> ChainComplex:
    """Bucket generators by index and fill d_k with mod-2 connection counts.

    Generators within a degree are ordered by tag. A pair with no count makes
    its matrix incomplete; a count that is not exact makes it heuristic.
    """
    for point in solutions:
        if not point.is_nondegenerate:
            raise DegenerateGeneratorError(
                f"{point.tag} has nullity {point.nullity} and cannot be a generator"
            )
    tags = [p.tag for p in solutions]
    if len(set(tags)) != len(tags):
        raise ValueError("solution tags must be unique")

    cx = ChainComplex()
    for point in sorted(solutions, key=lambda p: p.tag):
        cx.generators.setdefault(point.index, []).append(point)
    by_pair = {(c.source, c.target): c for c in counts}

    for k in range(1, cx.top_degree + 1):
        sources, targets = cx.generators.get(k, []), cx.generators.get(k - 1, [])
        if not sources or not targets:
            continue
        matrix = np.zeros((len(targets), len(sources)), dtype=np.uint8)
        reliability = Reliability.EXACT
        missing: list[tuple[str, str]] = []
        for j, source in enumerate(sources):
            for i, target in enumerate(targets):
                result = by_pair.get((source.tag, target.tag))
                if result is None:
                    missing.append((source.tag, target.tag))
                    continue
                matrix[i, j] = result.parity
                if not result.reliable:
                    reliability = Reliability.HEURISTIC
        if missing:
            reliability = Reliability.INCOMPLETE
            cx.missing[k] = missing
        cx.boundaries[k] = matrix
        cx.reliability[k] = reliability
    logger.debug(
        "Assembled chain complex",
        extra={
            "dimensions": {k: len(v) for k, v in cx.generators.items()},
            "reliability": {k: r.value for k, r in cx.reliability.items()},
        },
    )
    return cx


def check_boundary_squared(cx: ChainComplex) -> None:
    """Raise BoundaryMismatchError unless d_k d_{k+1} = 0 over Z2 for every k."""
    for k in range(1, cx.top_degree):
        composed = gf2.multiply(cx.boundary(k), cx.boundary(k + 1))
        if composed.any():
            i, j = (int(x) for x in np.argwhere(composed)[0])
            raise BoundaryMismatchError(
                f"d_{k} d_{k + 1} != 0: entry ({cx.generators[k - 1][i].tag}, "
                f"{cx.generators[k + 1][j].tag}) is 1"
            )


def homology_ranks(cx: ChainComplex, *, allow_heuristic: bool = False) -> HomologyResult:
    """Z2 Betti numbers dim Ker d_k - rank d_{k+1} for k = 0..top degree.

    Incomplete complexes are always refused; heuristic ones only when
    ``allow_heuristic`` is set, and the result is then labelled heuristic.
    """
    if not cx.is_complete:
        pairs = [pair for pairs in cx.missing.values() for pair in pairs]
        raise IncompleteComplexError(
            f"{len(pairs)} connection counts missing, first {pairs[0][0]} -> {pairs[0][1]}"
        )
    if not cx.is_exact and not allow_heuristic:
        heuristic = sorted(k for k, r in cx.reliability.items() if r is Reliability.HEURISTIC)
        raise IncompleteComplexError(
            f"boundary maps in degrees {heuristic} are heuristic; "
            "pass allow_heuristic to compute anyway"
        )
    check_boundary_squared(cx)

    top = max(cx.top_degree, 0)
    dimensions = [cx.dimension(k) for k in range(top + 1)]
    boundary_ranks = [0] + [gf2.rank(cx.boundary(k)) for k in range(1, top + 1)]
    ranks = [
        dimensions[k]
        - boundary_ranks[k]
        - (boundary_ranks[k + 1] if k + 1 <= top else 0)
        for k in range(top + 1)
    ]
    return HomologyResult(
        ranks=ranks,
        dimensions=dimensions,
        boundary_ranks=boundary_ranks,
        reliability=Reliability.EXACT if cx.is_exact else Reliability.HEURISTIC,
    )
