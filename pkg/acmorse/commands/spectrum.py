"""``spectrum``: eigenvalues of -Delta_g, constant indices and the singular set."""

from __future__ import annotations

from acmorse.exceptions import SpectrumTruncatedError
from acmorse.spectrum import (
    constant_index,
    laplacian_spectrum,
    laplacian_spectrum_reaching,
    singular_epsilons,
)

from .base import Command, CommandContext
from .models import CommandResult
from .registry import register_command


@register_command
class SpectrumCommand(Command):
    description = "Eigenvalues of -Delta_g, Morse indices of the constants and Sing_g"

    def run(self, context: CommandContext) -> CommandResult:
        config = context.config
        prob = context.problem()
        settings = config.spectrum
        spectrum = laplacian_spectrum(
            prob.metric,
            min(settings.count, prob.grid.node_count),
            operator=prob.laplacian,
            cluster_tol=settings.cluster_tol,
            dense_threshold=settings.dense_threshold,
            max_iterations=settings.max_iterations,
        )
        cluster_ids = spectrum.cluster_ids()
        context.writer.write_csv(
            "spectrum.csv",
            ["k", "eigenvalue", "cluster", "multiplicity", "residual"],
            [
                [k, float(value), cluster_ids[k], spectrum.multiplicity(k), float(res)]
                for k, (value, res) in enumerate(zip(spectrum.eigenvalues, spectrum.residuals))
            ],
        )
        summary: dict[str, object] = {
            "method": spectrum.method,
            "count": len(spectrum),
            "next_eigenvalue": spectrum.next_eigenvalue,
            "clusters": [[float(v), m] for v, m in spectrum.clusters()],
        }

        slopes = [-z.slope for z in prob.potential.unstable_zeros]
        if config.epsilon is not None:
            reach = laplacian_spectrum_reaching(
                prob.metric,
                1.5 * max(slopes, default=1.0) / prob.epsilon,
                operator=prob.laplacian,
                cluster_tol=settings.cluster_tol,
            )
            rows = []
            for zero in prob.potential.zeros:
                inertia = constant_index(
                    prob, zero.value, reach, zero_tol_factor=settings.zero_tol_factor
                )
                rows.append([zero.value, zero.slope, inertia.index, inertia.nullity])
            context.writer.write_csv(
                "constants.csv", ["zero", "slope", "index", "nullity"], rows
            )
            summary["constants"] = rows

        if config.epsilon_window is not None and slopes:
            lower, upper = config.epsilon_window
            reach = laplacian_spectrum_reaching(
                prob.metric,
                1.5 * max(slopes) / lower,
                operator=prob.laplacian,
                cluster_tol=settings.cluster_tol,
            )
            try:
                singular = singular_epsilons(reach, prob.potential, (lower, upper))
            except SpectrumTruncatedError as e:
                self.logger.warning("Singular set truncated", extra={"error": str(e)})
                singular = []
            context.writer.write_csv(
                "singular.csv",
                ["epsilon", "zero", "eigenvalue", "multiplicity"],
                [[s.epsilon, s.zero, s.eigenvalue, s.multiplicity] for s in singular],
            )
            summary["singular"] = [s.model_dump() for s in singular]

        context.writer.write_json("spectrum.json", summary)
        return self.result(
            message=f"{len(spectrum)} eigenvalues ({spectrum.method})",
            smallest=[float(v) for v in spectrum.eigenvalues[: min(5, len(spectrum))]],
        )
