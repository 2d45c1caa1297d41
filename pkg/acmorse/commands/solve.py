"""``solve`` and ``sweep``: all solutions found at fixed epsilon."""

from __future__ import annotations

import numpy as np

from acmorse.solver import group_orbits
from acmorse.spectrum import (
    laplacian_spectrum_reaching,
    singular_band_distance,
    singular_epsilons,
)

from .base import Command, CommandContext
from .common import SOLUTION_HEADER, collect_solutions, field_name, solution_rows
from .models import CommandResult
from .registry import register_command


@register_command
class SolveCommand(Command):
    description = "Constants plus deflated search at one epsilon"

    def run(self, context: CommandContext) -> CommandResult:
        prob = context.problem(context.epsilon())
        solutions = collect_solutions(prob, context.config)
        rows = solution_rows(prob, solutions)
        context.writer.write_csv("solutions.csv", SOLUTION_HEADER, rows)
        if context.config.output.field_files:
            for point in solutions:
                context.writer.write_field(field_name(point), point.u)
        orbits = group_orbits(prob, solutions)
        context.writer.write_json(
            "solutions.json",
            {
                "epsilon": prob.epsilon,
                "solutions": [p.summary().model_dump() for p in solutions],
                "orbits": [o.model_dump() for o in orbits],
            },
        )
        by_index: dict[int, int] = {}
        for point in solutions:
            by_index[point.index] = by_index.get(point.index, 0) + 1
        return self.result(
            message=f"{len(solutions)} solutions in {len(orbits)} orbits",
            counts={str(k): v for k, v in sorted(by_index.items())},
        )


@register_command
class SweepCommand(Command):
    description = "Deflated search at evenly spaced epsilon values in the window"

    def run(self, context: CommandContext) -> CommandResult:
        config = context.config
        lower, upper = context.window()
        prob = context.problem(upper)
        slopes = [-z.slope for z in prob.potential.unstable_zeros] or [1.0]
        spectrum = laplacian_spectrum_reaching(
            prob.metric,
            2.5 * max(slopes) / lower,
            operator=prob.laplacian,
            cluster_tol=config.spectrum.cluster_tol,
        )
        singular = singular_epsilons(
            spectrum, prob.potential, (0.5 * lower, 2.0 * upper)
        )
        rows = []
        for i, epsilon in enumerate(np.linspace(lower, upper, config.sweep_points)):
            at = prob.with_epsilon(float(epsilon))
            distance = singular_band_distance(at.epsilon, singular)
            solutions = collect_solutions(at, config, rng_seed=config.seed + i)
            for row in solution_rows(at, solutions):
                rows.append([*row, distance < config.spectrum.band_tol])
            self.logger.info(
                "Sweep point done",
                extra={"epsilon": at.epsilon, "solutions": len(solutions)},
            )
        context.writer.write_csv("sweep.csv", [*SOLUTION_HEADER, "near_singular"], rows)
        return self.result(message=f"{len(rows)} solutions over {config.sweep_points} values")
