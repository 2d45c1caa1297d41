"""Solution collection and table rows shared by several commands."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from acmorse.config.models import RunConfig
from acmorse.operator import Problem
from acmorse.solver import (
    SolutionPoint,
    close_under_negation,
    constant_solutions,
    deflated_search,
    group_orbits,
)

SOLUTION_HEADER = [
    "tag",
    "epsilon",
    "sup_norm",
    "mean",
    "energy",
    "index",
    "nullity",
    "residual_norm",
    "orbit",
]


def collect_solutions(
    prob: Problem, config: RunConfig, *, rng_seed: int | None = None
) -> list[SolutionPoint]:
    """Constants, then deflated search, closed under u -> -u for odd f."""
    zero_tol_factor = config.spectrum.zero_tol_factor
    constants = constant_solutions(prob, config.solver, zero_tol_factor=zero_tol_factor)
    found = deflated_search(
        prob,
        constants,
        config.deflation.seeds,
        config.seed if rng_seed is None else rng_seed,
        settings=config.deflation,
        solver=config.solver,
        zero_tol_factor=zero_tol_factor,
    )
    solutions = [*constants, *found]
    if prob.potential.is_odd:
        solutions = close_under_negation(
            prob,
            solutions,
            config.solver,
            threshold=config.deflation.distinct_threshold,
            zero_tol_factor=zero_tol_factor,
        )
    return sorted(solutions, key=lambda p: (p.index, p.energy, p.tag))


def solution_rows(
    prob: Problem, solutions: Sequence[SolutionPoint]
) -> list[list[Any]]:
    orbits = group_orbits(prob, solutions)
    orbit_of = {tag: orbit.orbit_id for orbit in orbits for tag in orbit.tags}
    rows = []
    for point in solutions:
        s = point.summary(orbit_of.get(point.tag))
        rows.append(
            [
                s.tag,
                s.epsilon,
                s.sup_norm,
                s.mean,
                s.energy,
                s.index,
                s.nullity,
                s.residual_norm,
                s.orbit,
            ]
        )
    return rows


def field_name(point: SolutionPoint) -> str:
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in point.tag)
    return f"fields/{safe}.csv"
