"""Branch switching at degenerate points along kernel directions."""

from __future__ import annotations

import logging

import numpy as np

from acmorse.config.models import ContinuationConfig, SolverConfig
from acmorse.exceptions import NoKernelError
from acmorse.grid import FloatArray, ScalarField
from acmorse.operator import Problem
from acmorse.spectrum.eigen import eigen_solve

from .models import BranchSeed, SolutionPoint
from .newton import newton_solve

logger = logging.getLogger(__name__)


def kernel_fields(
    prob: Problem, at: SolutionPoint, *, zero_tol_factor: float = 1e-8
) -> list[FloatArray]:
    """W-orthonormal basis of the numerical kernel of H(u) at ``at``."""
    u = at.u.values
    zero_tol = prob.zero_tolerance(u, zero_tol_factor)
    count = min(at.index + at.nullity + 2, prob.grid.node_count - 1)
    spectrum = eigen_solve(prob.hessian(u), count)
    return [
        spectrum.eigenvectors[:, k]
        for k in range(len(spectrum))
        if abs(spectrum.eigenvalues[k]) <= zero_tol
    ]


def branch_switch(
    prob: Problem,
    at: SolutionPoint,
    step_ctrl: ContinuationConfig | None = None,
    *,
    zero_tol_factor: float = 1e-8,
) -> list[BranchSeed]:
    """Predictor states u +- delta * phi for every kernel direction phi.

    Each kernel field is scaled to unit sup norm; seeds sit at epsilon
    shifted by ``switch_epsilon_offset`` and still need a Newton correction.
    """
    step_ctrl = step_ctrl or ContinuationConfig()
    if at.nullity == 0:
        raise NoKernelError(
            f"solution {at.tag} at eps={at.epsilon:.6g} is nondegenerate; nothing to switch to"
        )
    prob = prob.with_epsilon(at.epsilon)
    kernel = kernel_fields(prob, at, zero_tol_factor=zero_tol_factor)
    if not kernel:
        raise NoKernelError(f"no kernel fields found at {at.tag}")
    seeds: list[BranchSeed] = []
    epsilon = at.epsilon + step_ctrl.switch_epsilon_offset
    for k, phi in enumerate(kernel):
        direction = phi / np.abs(phi).max()
        for sign in (1, -1):
            seeds.append(
                BranchSeed(
                    epsilon=epsilon,
                    u=ScalarField(
                        prob.grid,
                        at.u.values + sign * step_ctrl.switch_amplitude * direction,
                    ),
                    direction=sign,
                    kernel_index=k,
                    tag=f"{at.tag}:k{k}{'+' if sign > 0 else '-'}",
                )
            )
    logger.debug("Branch switch seeds", extra={"tag": at.tag, "seeds": len(seeds)})
    return seeds


def correct_seed(
    prob: Problem,
    seed: BranchSeed,
    solver: SolverConfig | None = None,
    *,
    zero_tol_factor: float = 1e-8,
) -> SolutionPoint:
    """Newton-correct a switching seed at its own epsilon."""
    return newton_solve(
        prob.with_epsilon(seed.epsilon),
        seed.u,
        solver,
        tag=seed.tag,
        zero_tol_factor=zero_tol_factor,
    )
