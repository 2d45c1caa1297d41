"""``continue``: the trivial branch, its branch points and the bifurcated branches."""

from __future__ import annotations

import json
from dataclasses import replace

import numpy as np

from acmorse.environment.system import parallel_map
from acmorse.exceptions import AcMorseError
from acmorse.grid import ScalarField
from acmorse.operator import Problem
from acmorse.output import bifurcation_figure, close_figure, signed_amplitude
from acmorse.solver import (
    Branch,
    EventKind,
    SolutionPoint,
    branch_switch,
    continue_branch,
    correct_seed,
    newton_solve,
)
from acmorse.spectrum import laplacian_spectrum

from .base import Command, CommandContext
from .models import CommandResult
from .registry import register_command


def _mirrored(branch: Branch) -> Branch:
    """The image of a branch under u -> -u, a branch again when f is odd."""
    points = [
        replace(p, u=ScalarField(p.u.grid, -p.u.values), tag=f"-{p.tag}")
        for p in branch.points
    ]
    return Branch(
        f"-{branch.branch_id}",
        points,
        list(branch.arclengths),
        [e.model_copy() for e in branch.events],
    )


def _same_orbit(a: SolutionPoint, b: SolutionPoint) -> bool:
    return (
        abs(a.epsilon - b.epsilon) <= 1e-12
        and abs(a.energy - b.energy) <= 1e-8 * (1.0 + abs(a.energy))
        and abs(a.sup_norm - b.sup_norm) <= 1e-6
    )


@register_command
class ContinueCommand(Command):
    description = "Trace the trivial branch and switch onto every bifurcating branch"

    def run(self, context: CommandContext) -> CommandResult:
        config = context.config
        settings = config.continuation
        zero_tol_factor = config.spectrum.zero_tol_factor
        lower, upper = context.window()
        start_eps = upper if settings.direction < 0 else lower
        prob = context.problem(start_eps)

        unstable = prob.potential.unstable_zeros or prob.potential.zeros
        trivial_value = min(unstable, key=lambda z: abs(z.value)).value
        start = newton_solve(
            prob,
            np.full(prob.grid.node_count, trivial_value),
            config.solver,
            tag="trivial",
            zero_tol_factor=zero_tol_factor,
        )
        trivial = continue_branch(
            prob,
            start,
            settings.direction,
            (lower, upper),
            settings,
            solver=config.solver,
            zero_tol_factor=zero_tol_factor,
            branch_id="trivial",
        )
        branches = [trivial, *self._bifurcated(context, prob, trivial, trivial_value)]
        self._write(context, prob, branches)
        events = sum(len(b.events) for b in branches)
        branch_points = len(trivial.events_of(EventKind.BRANCH_POINT))
        return self.result(
            message=f"{len(branches)} branches, {branch_points} branch points on the trivial branch",
            branches=len(branches),
            events=events,
            stalled=[b.branch_id for b in branches if b.stalled],
        )

    def _bifurcated(
        self,
        context: CommandContext,
        prob: Problem,
        trivial: Branch,
        trivial_value: float,
    ) -> list[Branch]:
        config = context.config
        settings = config.continuation
        zero_tol_factor = config.spectrum.zero_tol_factor
        lower, upper = context.window()
        seeds: list[SolutionPoint] = []
        for n, event in enumerate(trivial.events_of(EventKind.BRANCH_POINT)):
            try:
                at = newton_solve(
                    prob.with_epsilon(event.epsilon),
                    np.full(prob.grid.node_count, trivial_value),
                    config.solver,
                    tag=f"bp{n}",
                    zero_tol_factor=zero_tol_factor,
                )
                for seed in branch_switch(prob, at, settings, zero_tol_factor=zero_tol_factor):
                    if not lower <= seed.epsilon <= upper:
                        continue
                    point = correct_seed(
                        prob, seed, config.solver, zero_tol_factor=zero_tol_factor
                    )
                    if point.is_constant or any(_same_orbit(point, s) for s in seeds):
                        continue
                    if prob.potential.is_odd and any(
                        _same_orbit(replace(point, u=-point.u), s) for s in seeds
                    ):
                        continue
                    seeds.append(point)
            except AcMorseError as e:
                self.logger.warning(
                    "Branch switching failed",
                    extra={"epsilon": event.epsilon, "error": str(e)},
                )

        def trace(item: tuple[int, SolutionPoint]) -> Branch | None:
            n, seed = item
            try:
                return continue_branch(
                    prob.with_epsilon(seed.epsilon),
                    seed,
                    settings.direction,
                    (lower, upper),
                    settings,
                    solver=config.solver,
                    zero_tol_factor=zero_tol_factor,
                    branch_id=f"b{n}",
                )
            except AcMorseError as e:
                self.logger.warning(
                    "Continuation failed", extra={"branch": f"b{n}", "error": str(e)}
                )
                return None

        traced = [
            b for b in parallel_map(trace, list(enumerate(seeds)), context.threads) if b
        ]
        if prob.potential.is_odd:
            traced = [b for branch in traced for b in (branch, _mirrored(branch))]
        return traced

    def _write(self, context: CommandContext, prob: Problem, branches: list[Branch]) -> None:
        phi = laplacian_spectrum(prob.metric, 2, operator=prob.laplacian).eigenvectors[:, 1]
        rows = []
        for branch in branches:
            for point, s in zip(branch.points, branch.arclengths):
                rows.append(
                    [
                        branch.branch_id,
                        s,
                        point.epsilon,
                        point.sup_norm,
                        signed_amplitude(point, phi, prob.weights),
                        point.energy,
                        point.index,
                        point.nullity,
                    ]
                )
        context.writer.write_csv(
            "branches.csv",
            ["branch", "arclength", "epsilon", "sup_norm", "signed_amplitude", "energy", "index", "nullity"],
            rows,
        )
        event_rows = [
            [b.branch_id, e.kind.value, e.arclength, e.epsilon, json.dumps(e.data, sort_keys=True)]
            for b in branches
            for e in b.events
        ]
        context.writer.write_csv(
            "events.csv", ["branch", "kind", "arclength", "epsilon", "data"], event_rows
        )
        context.writer.write_json(
            "continue.json",
            {
                "branches": [
                    {
                        "branch": b.branch_id,
                        "points": len(b),
                        "stalled": b.stalled,
                        "events": [e.model_dump(mode="json") for e in b.events],
                    }
                    for b in branches
                ]
            },
        )
        if context.config.output.svg:
            fig = bifurcation_figure(branches, phi, prob.weights, title="Allen-Cahn branches")
            try:
                context.writer.write_svg("bifurcation.svg", fig)
            finally:
                close_figure(fig)

