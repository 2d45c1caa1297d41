"""Deflated Newton search for all solutions at fixed epsilon."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel

from acmorse.config.models import DeflationConfig, SolverConfig
from acmorse.exceptions import AcMorseError
from acmorse.grid import FloatArray
from acmorse.observability.logging import TRACE
from acmorse.observability.tracing import trace_action
from acmorse.operator import Problem

from .models import SolutionPoint
from .newton import Deflation, accept_solution, newton_iterate, newton_solve
from .registry import SolutionRegistry

logger = logging.getLogger(__name__)


def band_limited_seed(
    prob: Problem, rng: np.random.Generator, max_wavenumber: int
) -> FloatArray:
    """A random trigonometric polynomial with |k_i| <= max_wavenumber per axis."""
    t0 = max(prob.potential.t0, 1e-3)
    coordinates = prob.grid.coordinates()
    field = np.zeros(prob.grid.node_count)
    ranges = [range(-max_wavenumber, max_wavenumber + 1)] * prob.grid.dim
    for wavevector in np.array(np.meshgrid(*ranges, indexing="ij")).reshape(prob.grid.dim, -1).T:
        if not np.any(wavevector):
            continue
        phase = sum(
            2 * math.pi * k * x / length
            for k, x, length in zip(wavevector, coordinates, prob.grid.lengths)
        )
        scale = 1.0 / (1.0 + float(wavevector @ wavevector))
        field += scale * (rng.normal() * np.cos(phase) + rng.normal() * np.sin(phase))
    peak = np.abs(field).max()
    if peak > 0:
        field *= rng.uniform(0.0, 1.2 * t0) / peak
    return field + rng.uniform(-t0, t0)


@trace_action("deflated_search", extract_attrs={"seeds": "seeds", "rng_seed": "rng_seed"})
def deflated_search(
    prob: Problem,
    known: Sequence[SolutionPoint],
    seeds: int,
    rng_seed: int,
    *,
    settings: DeflationConfig | None = None,
    solver: SolverConfig | None = None,
    zero_tol_factor: float = 1e-8,
) -> list[SolutionPoint]:
    """New solutions, distinct from ``known``, found from random seeds.

    Every accepted root is deflated for all later seeds, so the search only
    reconverges to a known solution when deflation fails numerically; those
    are discarded by the distinctness check. Seeds whose deflated iteration
    stops within ``polish_threshold`` of a root are finished by plain Newton.
    """
    settings = settings or DeflationConfig()
    solver = solver or SolverConfig()
    rng = np.random.default_rng(rng_seed)
    registry = SolutionRegistry(prob.weights, settings.distinct_threshold)
    registry.extend(list(known))
    found: list[SolutionPoint] = []
    for seed_id in range(seeds):
        start = band_limited_seed(prob, rng, settings.max_wavenumber)
        deflation = Deflation(
            [p.u.values for p in registry.points],
            prob.weights,
            settings.power,
            settings.shift,
        )
        outcome = newton_iterate(
            prob,
            start,
            solver,
            deflation=deflation if len(registry) else None,
            max_iterations=settings.max_iterations,
        )
        if not outcome.converged and outcome.residual_norm <= settings.polish_threshold:
            outcome = newton_iterate(prob, outcome.u, solver)
            logger.log(
                TRACE,
                "Polished a deflated near miss",
                extra={"seed": seed_id, "converged": outcome.converged},
            )
        if not outcome.converged or registry.contains(outcome.u):
            logger.log(TRACE, "Seed rejected", extra={"seed": seed_id, "reason": outcome.reason})
            continue
        try:
            point = accept_solution(
                prob, outcome, f"seed-{seed_id}", solver, zero_tol_factor=zero_tol_factor
            )
        except AcMorseError as e:
            logger.log(TRACE, "Seed rejected", extra={"seed": seed_id, "reason": str(e)})
            continue
        if registry.add(point):
            found.append(point)
            logger.debug(
                "Deflation found a solution",
                extra={"seed": seed_id, "index": point.index, "energy": point.energy},
            )
    logger.info(
        "Deflated search finished",
        extra={"epsilon": prob.epsilon, "seeds": seeds, "found": len(found)},
    )
    return found


def constant_solutions(
    prob: Problem, solver: SolverConfig | None = None, *, zero_tol_factor: float = 1e-8
) -> list[SolutionPoint]:
    """The constant solutions u = c_k, one per zero of f."""
    return [
        newton_solve(
            prob,
            np.full(prob.grid.node_count, zero.value),
            solver,
            tag=f"constant({zero.value:+.6g})",
            zero_tol_factor=zero_tol_factor,
        )
        for zero in prob.potential.zeros
    ]


def close_under_negation(
    prob: Problem,
    solutions: Sequence[SolutionPoint],
    solver: SolverConfig | None = None,
    *,
    threshold: float = 1e-4,
    zero_tol_factor: float = 1e-8,
) -> list[SolutionPoint]:
    """``solutions`` plus a Newton-polished -u for every u whose negative is missing."""
    registry = SolutionRegistry(prob.weights, threshold)
    registry.extend(list(solutions))
    for point in list(solutions):
        mirror = -point.u.values
        if registry.contains(mirror):
            continue
        try:
            negated = newton_solve(
                prob, mirror, solver, tag=f"-{point.tag}", zero_tol_factor=zero_tol_factor
            )
        except AcMorseError as e:
            logger.warning("Negation closure failed", extra={"tag": point.tag, "error": str(e)})
            continue
        registry.add(negated)
    return list(registry.points)


class Orbit(BaseModel):
    """Solutions related by a symmetry: equal energy, index and nullity."""

    orbit_id: int
    tags: list[str]
    energy: float
    index: int
    nullity: int
    generators: int
    constant: bool

    @property
    def is_morse_bott(self) -> bool:
        """Degeneracy fully explained by the translation generators."""
        return not self.constant and self.generators > 0 and self.nullity == self.generators


def translation_generators(prob: Problem, point: SolutionPoint) -> int:
    """Number of metric translation axes along which u is not constant."""
    shaped = point.u.values.reshape(prob.grid.shape)
    scale = 1e-8 * (1.0 + np.abs(shaped).max())
    return sum(
        1
        for axis in prob.metric.translation_axes()
        if np.abs(np.roll(shaped, 1, axis=axis) - shaped).max() > scale
    )


def group_orbits(
    prob: Problem, solutions: Sequence[SolutionPoint], energy_tol: float = 1e-8
) -> list[Orbit]:
    """Group solutions whose energy, index, nullity and sup norm agree."""
    orbits: list[tuple[SolutionPoint, list[SolutionPoint]]] = []
    for point in sorted(solutions, key=lambda p: (p.energy, p.index, p.tag)):
        for representative, members in orbits:
            if (
                representative.index == point.index
                and representative.nullity == point.nullity
                and abs(representative.energy - point.energy)
                <= energy_tol * (1.0 + abs(point.energy))
                and abs(representative.sup_norm - point.sup_norm) <= 1e-6
            ):
                members.append(point)
                break
        else:
            orbits.append((point, [point]))
    return [
        Orbit(
            orbit_id=i,
            tags=[m.tag for m in members],
            energy=representative.energy,
            index=representative.index,
            nullity=representative.nullity,
            generators=translation_generators(prob, representative),
            constant=representative.is_constant,
        )
        for i, (representative, members) in enumerate(orbits)
    ]
