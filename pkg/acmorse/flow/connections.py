"""Counting gradient flow lines between critical points, modulo 2.

Flows are launched from a nondegenerate source of index k along its unstable
eigenfields and classified by the known solution they equilibrate at. For
k = 1 the unstable manifold is a curve with two branches, so the two launches
+phi and -phi enumerate every flow line and the count is exact. For k >= 2
the unstable sphere is sampled and the count is only a heuristic.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from acmorse.config.models import FlowConfig
from acmorse.environment.system import parallel_map
from acmorse.exceptions import FlowError
from acmorse.grid import FloatArray
from acmorse.observability.logging import EVENT_LOG
from acmorse.observability.tracing import trace_action
from acmorse.operator import Problem
from acmorse.solver.models import SolutionPoint
from acmorse.spectrum import eigen_solve

from .imex import run_flow
from .models import ConnectionResult, LaunchRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Launch:
    direction: int
    sign: int
    vector: FloatArray


def _check_generator(point: SolutionPoint, role: str) -> None:
    if not point.is_nondegenerate:
        raise FlowError(
            f"{role} {point.tag} is degenerate (nullity {point.nullity}); "
            "connections need nondegenerate endpoints"
        )


def unstable_directions(
    prob: Problem, source: SolutionPoint, samples: int, rng_seed: int
) -> list[_Launch]:
    """Unit sup-norm launch directions spanning the unstable eigenspace."""
    k = source.index
    fields = eigen_solve(prob.hessian(source.u), k).eigenvectors
    if k == 1:
        bases = [fields[:, 0]]
    else:
        rng = np.random.default_rng(rng_seed)
        coefficients = rng.standard_normal((samples, k))
        bases = [fields @ (c / np.linalg.norm(c)) for c in coefficients]
    launches = []
    for i, base in enumerate(bases):
        unit = base / np.abs(base).max()
        launches.extend(_Launch(i, sign, sign * unit) for sign in (1, -1))
    return launches


def _fly(
    prob: Problem,
    source: SolutionPoint,
    launch: _Launch,
    delta: float,
    known: Sequence[SolutionPoint],
    settings: FlowConfig,
) -> LaunchRecord:
    trajectory = run_flow(
        prob,
        source.u.values + delta * launch.vector,
        settings,
        known=known,
        record_every=max(settings.max_steps, 1),
        start=source,
    )
    end = trajectory.end if trajectory.equilibrated else None
    return LaunchRecord(
        direction=launch.direction,
        sign=launch.sign,
        limit=end.tag if end is not None else None,
        time=trajectory.times[-1],
        steps=trajectory.steps,
        resolved=end is not None,
    )


@trace_action("launch_flows")
def launch_flows(
    prob: Problem,
    source: SolutionPoint,
    known: Sequence[SolutionPoint],
    settings: FlowConfig | None = None,
    *,
    rng_seed: int = 0,
    threads: int = 1,
    check_sensitivity: bool = True,
) -> list[LaunchRecord]:
    """Flow from ``source`` along each unstable launch direction.

    Each launch is repeated with half the offset; when the two limits differ
    the half-offset result is kept and the record is marked sensitive.
    """
    settings = settings or FlowConfig()
    _check_generator(source, "source")
    if source.index == 0:
        raise FlowError(f"source {source.tag} has index 0; no flow line leaves it")
    delta = settings.launch_scale * max(prob.potential.t0, 1.0)
    launches = unstable_directions(prob, source, settings.samples, rng_seed)

    def fly(launch: _Launch) -> LaunchRecord:
        record = _fly(prob, source, launch, delta, known, settings)
        if not check_sensitivity:
            return record
        halved = _fly(prob, source, launch, 0.5 * delta, known, settings)
        if halved.limit != record.limit:
            return halved.model_copy(update={"sensitive": True})
        return record

    records = parallel_map(fly, launches, threads)
    for record in records:
        logger.log(
            EVENT_LOG,
            "Flow launch classified",
            extra={
                "source": source.tag,
                "direction": record.direction,
                "sign": record.sign,
                "limit": record.limit,
            },
        )
    return records


def count_connections(
    source: SolutionPoint,
    target: SolutionPoint,
    records: Sequence[LaunchRecord],
) -> ConnectionResult:
    """Tally launches from ``source`` that end at ``target``."""
    _check_generator(target, "target")
    count = sum(1 for r in records if r.limit == target.tag)
    exact = source.index == 1
    reliable = exact and all(r.resolved and not r.sensitive for r in records)
    return ConnectionResult(
        source=source.tag,
        target=target.tag,
        count=count,
        parity=count % 2,
        exact=exact,
        reliable=reliable,
        launches=list(records),
    )


def connection_count_mod2(
    prob: Problem,
    source: SolutionPoint,
    target: SolutionPoint,
    samples: int,
    rng_seed: int,
    *,
    known: Sequence[SolutionPoint],
    settings: FlowConfig | None = None,
    threads: int = 1,
) -> ConnectionResult:
    """Parity of the number of flow lines from ``source`` to ``target``.

    ``target`` must have index one less than ``source``. Launches that
    never equilibrate near a known solution make the result unreliable.
    """
    settings = (settings or FlowConfig()).model_copy(update={"samples": samples})
    _check_generator(target, "target")
    if target.index != source.index - 1:
        raise FlowError(
            f"target {target.tag} has index {target.index}, "
            f"expected {source.index - 1}"
        )
    records = launch_flows(
        prob, source, known, settings, rng_seed=rng_seed, threads=threads
    )
    return count_connections(source, target, records)
