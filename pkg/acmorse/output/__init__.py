"""Output files: CSV and JSON writers and SVG diagrams."""

from .plots import bifurcation_figure, close_figure, signed_amplitude
from .writers import OutputWriter, format_cell

__all__ = [
    "OutputWriter",
    "bifurcation_figure",
    "close_figure",
    "format_cell",
    "signed_amplitude",
]
