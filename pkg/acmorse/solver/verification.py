"""Numerical check of the bifurcation theorem at one epsilon.

For odd f and eps^-1 outside Spec(-Delta_g), with l = Index(0), there should
be at least two nondegenerate solutions u, -u of every index k < l. On tori
with exact translation symmetry the nonconstant solutions come in
Morse-Bott orbits instead; an orbit of index i with r translation generators
stands in for 2 * C(r, j) nondegenerate critical points of index i + j, and
the report keeps that symmetry-reduced count next to the direct one.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from enum import StrEnum
from math import comb

from pydantic import BaseModel, Field

from acmorse.exceptions import NotAZeroError
from acmorse.observability.logging import METRIC_LOG
from acmorse.observability.tracing import trace_action
from acmorse.operator import Problem
from acmorse.spectrum import (
    index_of_zero,
    laplacian_spectrum_reaching,
    singular_band_distance,
    singular_epsilons,
)

from .deflation import Orbit, group_orbits
from .models import SolutionPoint, SolutionSummary
from .registry import SolutionRegistry

logger = logging.getLogger(__name__)


class Verdict(StrEnum):
    PASS = "PASS"
    FAIL = "FAIL"
    NOT_APPLICABLE = "NOT_APPLICABLE"


class DegreeCount(BaseModel):
    """Solutions of one Morse index."""

    degree: int
    nondegenerate: int
    paired: int
    symmetry_reduced: int
    satisfied: bool


class BifurcationReport(BaseModel):
    """Outcome of the bifurcation check."""

    epsilon: float
    zero_index: int | None = None
    singular_distance: float
    verdict: Verdict
    reason: str = ""
    degrees: list[DegreeCount] = Field(default_factory=list)
    orbits: list[Orbit] = Field(default_factory=list)
    unpaired: list[str] = Field(default_factory=list)
    bound_violations: list[str] = Field(default_factory=list)
    solutions: list[SolutionSummary] = Field(default_factory=list)

    def text(self) -> str:
        lines = [
            f"epsilon            {self.epsilon:.10g}",
            f"Index(0)           {self.zero_index}",
            f"distance to Sing   {self.singular_distance:.3e}",
            f"verdict            {self.verdict}",
        ]
        if self.reason:
            lines.append(f"reason             {self.reason}")
        lines.append("")
        lines.append("index  nondegenerate  paired  symmetry-reduced  ok")
        for d in self.degrees:
            lines.append(
                f"{d.degree:>5}  {d.nondegenerate:>13}  {d.paired:>6}  "
                f"{d.symmetry_reduced:>16}  {'yes' if d.satisfied else 'no'}"
            )
        bott = [o for o in self.orbits if o.is_morse_bott]
        if bott:
            lines.append("")
            lines.append("Morse-Bott orbits (index, nullity, members):")
            for orbit in bott:
                lines.append(f"  #{orbit.orbit_id}: {orbit.index}, {orbit.nullity}, {len(orbit.tags)}")
        if self.unpaired:
            lines.append("")
            lines.append("unpaired: " + ", ".join(self.unpaired))
        if self.bound_violations:
            lines.append("a-priori bound violated: " + ", ".join(self.bound_violations))
        return "\n".join(lines) + "\n"


def _summaries(solutions: Sequence[SolutionPoint], orbits: list[Orbit]) -> list[SolutionSummary]:
    orbit_of = {tag: orbit.orbit_id for orbit in orbits for tag in orbit.tags}
    return [p.summary(orbit_of.get(p.tag)) for p in solutions]


@trace_action("verify_bifurcation_theorem")
def verify_bifurcation_theorem(
    prob: Problem,
    solutions: Sequence[SolutionPoint],
    *,
    threshold: float = 1e-4,
    band_tol: float = 1e-4,
    bound_slack: float = 1e-6,
    zero_tol_factor: float = 1e-8,
    cluster_tol: float = 1e-6,
) -> BifurcationReport:
    """Count paired nondegenerate solutions of each index below Index(0).

    The solution list is taken as given; completing it under u -> -u is the
    caller's job (see ``close_under_negation``).
    """
    slopes = [-z.slope for z in prob.potential.unstable_zeros] or [1.0]
    spectrum = laplacian_spectrum_reaching(
        prob.metric,
        2.5 * max(slopes) / prob.epsilon,
        operator=prob.laplacian,
        cluster_tol=cluster_tol,
    )
    singular = singular_epsilons(
        spectrum, prob.potential, (0.5 * prob.epsilon, 2.0 * prob.epsilon)
    )
    distance = singular_band_distance(prob.epsilon, singular)
    if distance < band_tol:
        return BifurcationReport(
            epsilon=prob.epsilon,
            singular_distance=distance,
            verdict=Verdict.NOT_APPLICABLE,
            reason=f"epsilon lies within {band_tol:g} (relative) of the singular set",
            solutions=[p.summary() for p in solutions],
        )
    try:
        prob.potential.zero_at(0.0)
    except NotAZeroError as e:
        logger.info("Bifurcation check not applicable", extra={"reason": str(e)})
        return BifurcationReport(
            epsilon=prob.epsilon,
            singular_distance=distance,
            verdict=Verdict.NOT_APPLICABLE,
            reason=f"Index(0) is undefined: {e}",
            solutions=[p.summary() for p in solutions],
        )

    zero_index = index_of_zero(prob, spectrum, zero_tol_factor=zero_tol_factor)
    registry = SolutionRegistry(prob.weights, threshold)
    registry.extend(list(solutions))
    points = registry.points

    def mirror(point: SolutionPoint) -> SolutionPoint | None:
        match, d = registry.nearest(-point.u.values)
        return match if d <= threshold else None

    unpaired = [
        p.tag for p in points if p.u.sup_norm > threshold and mirror(p) is None
    ]
    limit = prob.potential.t0 + bound_slack
    violations = [p.tag for p in points if p.u.sup_norm > limit]

    orbits = group_orbits(prob, points)
    by_tag = {p.tag: p for p in points}
    reduced_extra = [0] * zero_index
    for orbit in orbits:
        if not orbit.is_morse_bott:
            continue
        if not any(mirror(by_tag[tag]) is not None for tag in orbit.tags):
            continue
        for j in range(orbit.generators + 1):
            degree = orbit.index + j
            if degree < zero_index:
                reduced_extra[degree] += 2 * comb(orbit.generators, j)

    degrees: list[DegreeCount] = []
    for k in range(zero_index):
        nondegenerate = [p for p in points if p.index == k and p.nullity == 0]
        paired = 0
        for p in nondegenerate:
            partner = mirror(p)
            if partner is not None and partner.index == k and partner.nullity == 0:
                paired += 1
        reduced = paired + reduced_extra[k]
        degrees.append(
            DegreeCount(
                degree=k,
                nondegenerate=len(nondegenerate),
                paired=paired,
                symmetry_reduced=reduced,
                satisfied=paired >= 2 or reduced >= 2,
            )
        )

    passed = all(d.satisfied for d in degrees) and not unpaired and not violations
    reason = ""
    if unpaired:
        reason = f"{len(unpaired)} solutions without their negative"
    elif violations:
        reason = f"{len(violations)} solutions violate ||u||_inf <= T0"
    elif not passed:
        missing = [str(d.degree) for d in degrees if not d.satisfied]
        reason = "fewer than two paired solutions in degrees " + ", ".join(missing)
    report = BifurcationReport(
        epsilon=prob.epsilon,
        zero_index=zero_index,
        singular_distance=distance,
        verdict=Verdict.PASS if passed else Verdict.FAIL,
        reason=reason,
        degrees=degrees,
        orbits=orbits,
        unpaired=unpaired,
        bound_violations=violations,
        solutions=_summaries(points, orbits),
    )
    logger.log(
        METRIC_LOG,
        "Bifurcation check",
        extra={"epsilon": prob.epsilon, "zero_index": zero_index, "verdict": str(report.verdict)},
    )
    return report
