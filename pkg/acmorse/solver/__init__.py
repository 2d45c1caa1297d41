"""Newton, deflation, continuation, branch switching and verification."""

from .continuation import continue_branch
from .deflation import (
    Orbit,
    band_limited_seed,
    close_under_negation,
    constant_solutions,
    deflated_search,
    group_orbits,
    translation_generators,
)
from .models import (
    Branch,
    BranchEvent,
    BranchSeed,
    EventKind,
    SolutionPoint,
    SolutionSummary,
)
from .newton import Deflation, accept_solution, newton_iterate, newton_solve
from .registry import SolutionRegistry
from .switching import branch_switch, correct_seed, kernel_fields
from .verification import BifurcationReport, DegreeCount, Verdict, verify_bifurcation_theorem

__all__ = [
    "BifurcationReport",
    "Branch",
    "BranchEvent",
    "BranchSeed",
    "Deflation",
    "DegreeCount",
    "EventKind",
    "Orbit",
    "SolutionPoint",
    "SolutionRegistry",
    "SolutionSummary",
    "Verdict",
    "accept_solution",
    "band_limited_seed",
    "branch_switch",
    "close_under_negation",
    "constant_solutions",
    "continue_branch",
    "correct_seed",
    "deflated_search",
    "group_orbits",
    "kernel_fields",
    "newton_iterate",
    "newton_solve",
    "translation_generators",
    "verify_bifurcation_theorem",
]
