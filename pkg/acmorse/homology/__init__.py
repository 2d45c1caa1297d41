"""Z2 Morse chain complexes and their homology."""

from . import gf2
from .complex import assemble_complex, check_boundary_squared, homology_ranks
from .models import ChainComplex, HomologyResult, ParityReport, Reliability
from .parity import parity_report

__all__ = [
    "ChainComplex",
    "HomologyResult",
    "ParityReport",
    "Reliability",
    "assemble_complex",
    "check_boundary_squared",
    "gf2",
    "homology_ranks",
    "parity_report",
]
