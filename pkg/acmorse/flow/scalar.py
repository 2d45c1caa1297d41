"""Space-constant trajectories w(t) of w' = -f(w) between adjacent zeros."""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

from acmorse.exceptions import FlowError
from acmorse.potential import Potential

from .models import ScalarTrajectory

ARRIVAL_TOL = 1e-10


def cubic_heteroclinic(t: np.ndarray, delta: float) -> np.ndarray:
    """Closed form from 0 to 1 for f(u) = u^3 - u, with w(0) = delta."""
    t_shift = 0.5 * math.log(1.0 / delta**2 - 1.0)
    return 1.0 / np.sqrt(1.0 + np.exp(-2.0 * (np.asarray(t) - t_shift)))


def space_constant_trajectory(
    potential: Potential,
    c_minus: float,
    c_plus: float,
    *,
    delta: float = 1e-6,
    rtol: float = 1e-12,
) -> ScalarTrajectory:
    """Integrate w' = -f(w) from c_minus + sign * delta until w is within 1e-10 of c_plus.

    c_minus must be a zero with f' < 0 and c_plus a zero adjacent to it.
    """
    source = potential.zero_at(c_minus)
    target = potential.zero_at(c_plus)
    if source.slope > 0:
        raise FlowError(
            f"{c_minus:.6g} is a stable zero (f' = {source.slope:.3g}); "
            "no flow line leaves it"
        )
    values = [z.value for z in potential.zeros]
    i, j = values.index(source.value), values.index(target.value)
    if abs(i - j) != 1:
        raise FlowError(f"zeros {c_minus:.6g} and {c_plus:.6g} are not adjacent")

    sign = 1.0 if target.value > source.value else -1.0
    start = source.value + sign * delta
    # escape time from the source plus the approach time to the target
    horizon = 10.0 * (
        math.log(max(abs(target.value - source.value), 1.0) / delta) / abs(source.slope)
        + math.log(1.0 / ARRIVAL_TOL) / target.slope
    )

    def arrival(_: float, w: np.ndarray) -> float:
        return float(abs(w[0] - target.value) - ARRIVAL_TOL)

    arrival.terminal = True  # type: ignore[attr-defined]
    arrival.direction = -1  # type: ignore[attr-defined]

    solution = solve_ivp(
        lambda _, w: -potential.f(w),
        (0.0, horizon),
        [start],
        method="DOP853",
        rtol=rtol,
        atol=rtol * ARRIVAL_TOL,
        events=arrival,
        dense_output=True,
    )
    if solution.status == -1:
        raise FlowError(f"scalar integration failed: {solution.message}")
    if solution.status != 1:
        raise FlowError(
            f"w did not reach {c_plus:.6g} within t = {horizon:.3g} "
            f"(final value {solution.y[0, -1]:.12g})"
        )
    dense = solution.sol

    def interpolant(t: np.ndarray) -> np.ndarray:
        result: np.ndarray = dense(np.asarray(t, dtype=np.float64))[0]
        return result

    return ScalarTrajectory(
        c_minus=source.value,
        c_plus=target.value,
        times=np.asarray(solution.t),
        values=np.asarray(solution.y[0]),
        interpolant=interpolant,
    )
