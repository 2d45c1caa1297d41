"""Stabilized IMEX time stepping of the Allen-Cahn gradient flow.

One step solves

    (W + dt (eps A + S W)) u' = W (u + dt S u - dt f(u))

implicit in the diffusion and the stabilization S u, explicit in f. Fixed
points are exactly the zeros of the residual for every dt and S. With
S >= max f' / 2 on [-T0, T0] and dt (max f' - S) <= 1 the step preserves
the box |u| <= T0 on diagonal metrics.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from acmorse.config.models import FlowConfig
from acmorse.exceptions import FlowError
from acmorse.grid import FloatArray, ScalarField
from acmorse.observability.logging import TRACE
from acmorse.observability.tracing import trace_action
from acmorse.operator import Problem
from acmorse.solver.models import SolutionPoint
from acmorse.solver.registry import SolutionRegistry

from .models import Trajectory

logger = logging.getLogger(__name__)


def default_stabilization(prob: Problem) -> float:
    return 0.5 * prob.potential.max_abs_fprime()


class ImexStepper:
    """Caches one factorization per time step size."""

    def __init__(self, prob: Problem, stabilization: float | None = None) -> None:
        self.prob = prob
        self.stabilization = (
            default_stabilization(prob) if stabilization is None else stabilization
        )
        self._factors: dict[float, object] = {}

    def stable_dt(self) -> float:
        """Largest dt keeping the explicit part monotone on [-T0, T0]."""
        excess = self.prob.potential.max_abs_fprime() - self.stabilization
        return float("inf") if excess <= 0 else 1.0 / excess

    def _factor(self, dt: float):  # type: ignore[no-untyped-def]
        if dt not in self._factors:
            prob = self.prob
            matrix = sp.csc_matrix(
                sp.diags(prob.weights * (1.0 + dt * self.stabilization))
                + dt * prob.epsilon * prob.stiffness
            )
            if len(self._factors) > 8:
                self._factors.clear()
            self._factors[dt] = splu(matrix)
        return self._factors[dt]

    def step(self, u: FloatArray, dt: float) -> FloatArray:
        prob = self.prob
        rhs = prob.weights * ((1.0 + dt * self.stabilization) * u - dt * prob.potential.f(u))
        result: FloatArray = self._factor(dt).solve(rhs)
        return result


def flow_step(
    prob: Problem,
    u: ScalarField | FloatArray,
    dt: float,
    *,
    stabilization: float | None = None,
) -> ScalarField:
    """One IMEX step of u_t = eps Delta_g u - f(u).

    A failed linear solve is retried once with dt / 2 before FlowError.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    stepper = ImexStepper(prob, stabilization)
    values = prob.values(u)
    for attempt_dt in (dt, 0.5 * dt):
        try:
            result = stepper.step(values, attempt_dt)
        except RuntimeError:
            continue
        if np.all(np.isfinite(result)):
            return ScalarField(prob.grid, result)
    raise FlowError(f"IMEX linear solve failed at dt={dt:g} and dt={dt / 2:g}")


@trace_action("run_flow")
def run_flow(
    prob: Problem,
    u0: ScalarField | FloatArray,
    settings: FlowConfig | None = None,
    *,
    known: Sequence[SolutionPoint] = (),
    record_every: int = 1,
    start: SolutionPoint | None = None,
) -> Trajectory:
    """Integrate the flow until it equilibrates or the step budget runs out.

    Steps that raise the energy by more than ``energy_tol (1 + |E|)`` are
    rejected and retried with half the step. With ``known`` solutions,
    equilibration also requires the state to be within
    ``equilibrium_distance`` of one of them, which becomes ``end``.
    """
    settings = settings or FlowConfig()
    stepper = ImexStepper(prob, settings.stabilization)
    max_dt = min(settings.max_dt, stepper.stable_dt())
    registry = SolutionRegistry(prob.weights, settings.equilibrium_distance)
    registry.extend(list(known))

    u = np.array(prob.values(u0), dtype=np.float64)
    energy = prob.energy_value(u)
    dt = min(settings.dt, max_dt)
    t = 0.0
    trajectory = Trajectory(start=start)

    def nearest(values: FloatArray) -> tuple[SolutionPoint | None, float]:
        return registry.nearest(values) if len(registry) else (None, float("inf"))

    trajectory.record(t, ScalarField(prob.grid, u), energy, nearest(u)[1])
    while trajectory.steps < settings.max_steps:
        candidate = stepper.step(u, dt)
        candidate_energy = prob.energy_value(candidate)
        if not np.all(np.isfinite(candidate)) or candidate_energy > energy + settings.energy_tol * (
            1.0 + abs(energy)
        ):
            trajectory.rejected_steps += 1
            dt *= 0.5
            if dt < settings.min_dt:
                raise FlowError(f"time step underflow at t={t:.6g}")
            continue
        u, energy, t = candidate, candidate_energy, t + dt
        trajectory.steps += 1
        dt = min(1.1 * dt, max_dt)

        residual = prob.norm(prob.residual_values(u))
        if residual <= settings.equilibrium_residual:
            match, distance = nearest(u)
            if not len(registry) or distance <= settings.equilibrium_distance:
                trajectory.record(t, ScalarField(prob.grid, u), energy, distance)
                trajectory.end = match
                trajectory.equilibrated = True
                break
        if trajectory.steps % record_every == 0:
            trajectory.record(t, ScalarField(prob.grid, u), energy, nearest(u)[1])
            logger.log(TRACE, "Flow step", extra={"t": t, "energy": energy, "dt": dt})
    else:
        trajectory.record(t, ScalarField(prob.grid, u), energy, nearest(u)[1])
    return trajectory
