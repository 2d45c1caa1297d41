"""Spectra of -Delta_g and of Hessians, Morse indices and the singular set."""

from .eigen import (
    eigen_solve,
    flat_torus_eigenvalues,
    gershgorin_lower_bound,
    laplacian_spectrum,
    laplacian_spectrum_reaching,
)
from .models import Inertia, SingularParameter, SpectrumResult
from .morse import (
    constant_index,
    hessian_inertia,
    index_of_zero,
    morse_index,
    singular_band_distance,
    singular_epsilons,
    within_singular_band,
)
from .perturbation import eigenvalue_derivative, eigenvalue_derivative_fd

__all__ = [
    "Inertia",
    "SingularParameter",
    "SpectrumResult",
    "constant_index",
    "eigen_solve",
    "eigenvalue_derivative",
    "eigenvalue_derivative_fd",
    "flat_torus_eigenvalues",
    "gershgorin_lower_bound",
    "hessian_inertia",
    "index_of_zero",
    "laplacian_spectrum",
    "laplacian_spectrum_reaching",
    "morse_index",
    "singular_band_distance",
    "singular_epsilons",
    "within_singular_band",
]
