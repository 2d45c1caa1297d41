"""Parity of solution counts per Morse index for odd nonlinearities."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence

import numpy as np

from acmorse.solver.models import SolutionPoint
from acmorse.solver.verification import Verdict

from .models import ParityReport


def _unpaired(solutions: Sequence[SolutionPoint], tol: float) -> SolutionPoint | None:
    values = [p.u.values for p in solutions]
    for point in solutions:
        mirror = -point.u.values
        if not any(np.abs(mirror - v).max() <= tol for v in values):
            return point
    return None


def parity_report(
    solutions: Sequence[SolutionPoint], zero_index: int, *, tol: float = 1e-6
) -> ParityReport:
    """Check that exactly the degree ``zero_index`` has an odd number of solutions.

    Solutions must come in pairs u, -u apart from u = 0, which sits in degree
    ``zero_index``; a solution whose negative is missing fails the check.
    """
    counts = Counter(p.index for p in solutions)
    degrees = range(max([*counts, zero_index]) + 1)
    table = {k: counts.get(k, 0) for k in degrees}
    witness = _unpaired(solutions, tol)
    if witness is not None:
        return ParityReport(
            zero_index=zero_index,
            counts=table,
            verdict=Verdict.FAIL,
            unpaired=witness.tag,
        )
    mismatched = [k for k, n in table.items() if (n % 2 == 1) != (k == zero_index)]
    return ParityReport(
        zero_index=zero_index,
        counts=table,
        verdict=Verdict.FAIL if mismatched else Verdict.PASS,
        mismatched=mismatched,
    )
