"""``flow``: space-constant trajectories, mode decay and one field trajectory."""

from __future__ import annotations

import numpy as np

from acmorse.exceptions import FlowError
from acmorse.flow import mode_decay_check, run_flow, space_constant_trajectory
from acmorse.solver import band_limited_seed

from .base import Command, CommandContext
from .common import collect_solutions
from .models import CommandResult
from .registry import register_command


@register_command
class FlowCommand(Command):
    description = "Gradient flow trajectories and the mode decay check"

    def run(self, context: CommandContext) -> CommandResult:
        config = context.config
        prob = context.problem(context.epsilon())
        potential = prob.potential
        zeros = [z.value for z in potential.zeros]

        scalar_rows = []
        reports = []
        for i, source in enumerate(potential.zeros):
            if source.slope > 0:
                continue
            for j in (i - 1, i + 1):
                trajectory = space_constant_trajectory(potential, source.value, zeros[j])
                pair = f"{source.value:+g}->{zeros[j]:+g}"
                scalar_rows.extend(
                    [pair, float(t), float(w)]
                    for t, w in zip(trajectory.times, trajectory.values)
                )
                report = mode_decay_check(
                    prob, trajectory, config.flow.modes, cluster_tol=config.spectrum.cluster_tol
                )
                reports.append({"pair": pair, **report.model_dump()})
        context.writer.write_csv("scalar_trajectories.csv", ["pair", "t", "w"], scalar_rows)
        context.writer.write_json("mode_decay.json", {"reports": reports})

        known = collect_solutions(prob, config)
        rng = np.random.default_rng(config.seed)
        start = np.clip(
            band_limited_seed(prob, rng, config.deflation.max_wavenumber),
            -potential.t0,
            potential.t0,
        )
        trajectory = run_flow(prob, start, config.flow, known=known)
        context.writer.write_csv(
            "trajectory.csv",
            ["t", "energy", "sup_norm", "distance"],
            zip(trajectory.times, trajectory.energies, trajectory.sup_norms, trajectory.distances),
        )
        end = trajectory.end.tag if trajectory.end is not None else None
        context.writer.write_json(
            "flow.json",
            {
                "epsilon": prob.epsilon,
                "steps": trajectory.steps,
                "rejected_steps": trajectory.rejected_steps,
                "equilibrated": trajectory.equilibrated,
                "end": end,
                "final_energy": trajectory.energies[-1],
            },
        )
        if not trajectory.equilibrated:
            raise FlowError(
                f"flow did not equilibrate within {config.flow.max_steps} steps"
            )
        return self.result(message=f"flow equilibrated at {end}", end=end)
