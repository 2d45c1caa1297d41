"""``verify``: the bifurcation theorem check at one epsilon."""

from __future__ import annotations

from acmorse.homology import parity_report
from acmorse.solver import Verdict, verify_bifurcation_theorem

from .base import Command, CommandContext
from .common import SOLUTION_HEADER, collect_solutions, solution_rows
from .models import CommandResult, CommandStatus
from .registry import register_command


@register_command
class VerifyCommand(Command):
    description = "Count paired solutions of each index below Index(0)"

    def run(self, context: CommandContext) -> CommandResult:
        config = context.config
        prob = context.problem(context.epsilon())
        solutions = collect_solutions(prob, config)
        report = verify_bifurcation_theorem(
            prob,
            solutions,
            threshold=config.deflation.distinct_threshold,
            band_tol=config.spectrum.band_tol,
            bound_slack=config.solver.bound_slack,
            zero_tol_factor=config.spectrum.zero_tol_factor,
            cluster_tol=config.spectrum.cluster_tol,
        )
        context.writer.write_csv("solutions.csv", SOLUTION_HEADER, solution_rows(prob, solutions))
        context.writer.write_json("verify.json", report)
        context.writer.write_text("verify.txt", report.text())
        if report.zero_index is not None:
            context.writer.write_json(
                "parity.json", parity_report(solutions, report.zero_index)
            )

        status = {
            Verdict.PASS: CommandStatus.PASS,
            Verdict.FAIL: CommandStatus.FAIL,
            Verdict.NOT_APPLICABLE: CommandStatus.SUCCESS,
        }[report.verdict]
        counts = {str(d.degree): d.symmetry_reduced for d in report.degrees}
        return self.result(
            status,
            f"{report.verdict}: {report.reason}" if report.reason else str(report.verdict),
            zero_index=report.zero_index,
            counts=counts,
        )
