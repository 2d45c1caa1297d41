"""``homology``: Morse complex over Z2 from flow-line counts."""

from __future__ import annotations

from acmorse.exceptions import IncompleteComplexError
from acmorse.flow import count_connections, launch_flows
from acmorse.homology import assemble_complex, homology_ranks, parity_report

from .base import Command, CommandContext
from .common import collect_solutions
from .models import CommandResult, CommandStatus
from .registry import register_command


@register_command
class HomologyCommand(Command):
    description = "Assemble the Z2 Morse complex and compute its homology"

    def run(self, context: CommandContext) -> CommandResult:
        config = context.config
        prob = context.problem(context.epsilon())
        solutions = collect_solutions(prob, config)
        # fails early on degenerate generators, before any flow is launched
        assemble_complex(solutions, [])

        counts = []
        for source in solutions:
            if source.index == 0:
                continue
            targets = [p for p in solutions if p.index == source.index - 1]
            if not targets:
                continue
            records = launch_flows(
                prob,
                source,
                solutions,
                config.flow,
                rng_seed=config.seed,
                threads=context.threads,
            )
            counts.extend(count_connections(source, target, records) for target in targets)

        cx = assemble_complex(solutions, counts)
        context.writer.write_json("complex.json", cx.to_dict())
        context.writer.write_json(
            "connections.json", {"connections": [c.model_dump() for c in counts]}
        )

        payload: dict[str, object] = {"epsilon": prob.epsilon}
        zero = next((p for p in solutions if p.is_constant and p.sup_norm <= 1e-12), None)
        if prob.potential.is_odd and zero is not None:
            payload["parity"] = parity_report(solutions, zero.index).model_dump()
        try:
            result = homology_ranks(cx)
        except IncompleteComplexError as e:
            payload["refused"] = str(e)
            context.writer.write_json("homology.json", payload)
            return self.result(CommandStatus.ERROR, f"homology refused: {e}")
        payload["homology"] = result.model_dump()
        context.writer.write_json("homology.json", payload)
        return self.result(
            message="ranks " + " ".join(str(r) for r in result.ranks),
            ranks=result.ranks,
        )
