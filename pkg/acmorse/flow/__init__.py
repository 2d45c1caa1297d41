"""Gradient flow, space-constant trajectories and connection counting."""

from .connections import (
    connection_count_mod2,
    count_connections,
    launch_flows,
    unstable_directions,
)
from .imex import ImexStepper, default_stabilization, flow_step, run_flow
from .models import (
    ConnectionResult,
    LaunchRecord,
    ModeDecayReport,
    ModeMargin,
    ScalarTrajectory,
    Trajectory,
)
from .modes import BOUND_NOT_SATISFIED, mode_decay_check
from .scalar import cubic_heteroclinic, space_constant_trajectory

__all__ = [
    "BOUND_NOT_SATISFIED",
    "ConnectionResult",
    "ImexStepper",
    "LaunchRecord",
    "ModeDecayReport",
    "ModeMargin",
    "ScalarTrajectory",
    "Trajectory",
    "connection_count_mod2",
    "count_connections",
    "cubic_heteroclinic",
    "default_stabilization",
    "flow_step",
    "launch_flows",
    "mode_decay_check",
    "run_flow",
    "space_constant_trajectory",
    "unstable_directions",
]
