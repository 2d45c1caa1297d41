"""Polynomial nonlinearities f, their primitives F, and the zero structure of f.

Admissible potentials are real polynomials of odd degree with positive
leading coefficient whose real zeros are all simple. Such an f grows like
t|t| at infinity, has an odd number of zeros, and f' alternates in sign
along them, starting and ending positive.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, overload

import numpy as np
from numpy.polynomial import Polynomial

from acmorse.exceptions import InadmissiblePotentialError, NotAZeroError

if TYPE_CHECKING:
    from acmorse.config.models import PotentialConfig
    from acmorse.grid.models import FloatArray

DEGENERACY_TOL = 1e-8
ZERO_TOL = 1e-12

CUBIC = (0.0, -1.0, 0.0, 1.0)
QUINTIC = (0.0, 1.0, 0.0, -1.25, 0.0, 0.25)


@dataclass(frozen=True)
class Zero:
    """A zero c of f together with the slope f'(c)."""

    value: float
    slope: float

    @property
    def sign(self) -> int:
        return 1 if self.slope > 0 else -1

    @property
    def is_stable(self) -> bool:
        """Local minimum of F; the constant solution has index 0 for every epsilon."""
        return self.slope > 0


def _real_roots(poly: Polynomial) -> list[float]:
    roots = poly.roots()
    scale = 1.0 + np.abs(roots)
    real = np.sort(roots[np.abs(roots.imag) <= 1e-7 * scale].real)
    fprime = poly.deriv()
    polished = []
    for root in real:
        # a few Newton steps; skipped near double roots where f' vanishes
        for _ in range(3):
            slope = fprime(root)
            if abs(slope) <= DEGENERACY_TOL:
                break
            root = root - poly(root) / slope
        polished.append(float(root))
    return polished


def classify_zeros(
    potential: Potential | Polynomial | Sequence[float],
) -> tuple[Zero, ...]:
    """Ordered zeros c_1 < ... < c_{2n+1} of f with the sign of f' at each.

    Raises InadmissiblePotentialError for degenerate zeros, an even number of
    zeros, or slopes that do not alternate starting from a positive one.
    """
    if isinstance(potential, Potential):
        return potential.zeros
    poly = potential if isinstance(potential, Polynomial) else Polynomial(potential)
    fprime = poly.deriv()
    zeros: list[Zero] = []
    for root in _real_roots(poly):
        slope = float(fprime(root))
        if abs(slope) <= DEGENERACY_TOL:
            raise InadmissiblePotentialError(
                f"degenerate zero at {root:.6g}: |f'| = {abs(slope):.3e} <= {DEGENERACY_TOL}"
            )
        if zeros and abs(root - zeros[-1].value) <= 1e-9 * (1.0 + abs(root)):
            raise InadmissiblePotentialError(f"repeated zero at {root:.6g}")
        zeros.append(Zero(root, slope))
    if len(zeros) % 2 == 0:
        raise InadmissiblePotentialError(
            f"f must have an odd number of zeros, found {len(zeros)}"
        )
    for k, zero in enumerate(zeros):
        expected = 1 if k % 2 == 0 else -1
        if zero.sign != expected:
            raise InadmissiblePotentialError(
                f"slopes of f do not alternate at zero {zero.value:.6g}"
            )
    return tuple(zeros)


@dataclass(frozen=True, eq=False)
class Potential:
    """Admissible polynomial nonlinearity f with derived f', F, zeros and T0."""

    coefficients: tuple[float, ...]
    name: str = "polynomial"
    f: Polynomial = field(init=False, repr=False)
    fprime: Polynomial = field(init=False, repr=False)
    primitive: Polynomial = field(init=False, repr=False)
    zeros: tuple[Zero, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        coefficients = tuple(float(a) for a in self.coefficients)
        poly = Polynomial(coefficients).trim()
        degree = poly.degree()
        if degree < 1 or degree % 2 == 0:
            raise InadmissiblePotentialError(
                f"f must have odd degree, got degree {degree}"
            )
        if poly.coef[-1] <= 0:
            raise InadmissiblePotentialError("leading coefficient of f must be positive")
        zeros = classify_zeros(poly)
        primitive = poly.integ()
        primitive = primitive - min(primitive(z.value) for z in zeros)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "f", poly)
        object.__setattr__(self, "fprime", poly.deriv())
        object.__setattr__(self, "primitive", primitive)
        object.__setattr__(self, "zeros", zeros)
        self._check_growth()

    def _check_growth(self) -> None:
        reach = 2.0 * max(self.t0, 1.0)
        samples = np.linspace(self.t0, reach, 257)[1:]
        if np.any(self.f(samples) <= 0) or np.any(self.f(-samples) >= 0):
            raise InadmissiblePotentialError(
                f"f(t) sign(t) must be positive for |t| > T0 = {self.t0:.6g}"
            )

    @classmethod
    def cubic(cls) -> Potential:
        """f(u) = u^3 - u, F(u) = (u^2 - 1)^2 / 4."""
        return cls(CUBIC, name="cubic")

    @classmethod
    def quintic(cls) -> Potential:
        """f(u) = u (u^2 - 1)(u^2 - 4) / 4 with zeros -2, -1, 0, 1, 2."""
        return cls(QUINTIC, name="quintic")

    @classmethod
    def from_config(cls, config: PotentialConfig) -> Potential:
        if config.kind == "cubic":
            return cls.cubic()
        if config.kind == "quintic":
            return cls.quintic()
        return cls(tuple(config.coeffs or ()))

    @property
    def t0(self) -> float:
        """A-priori bound T0 = max_k |c_k|."""
        return max(abs(z.value) for z in self.zeros)

    @property
    def is_odd(self) -> bool:
        """f(-t) = -f(t); solutions then come in pairs u, -u."""
        even = self.f.coef[0::2]
        return bool(np.all(np.abs(even) <= ZERO_TOL * np.abs(self.f.coef).max()))

    @property
    def unstable_zeros(self) -> tuple[Zero, ...]:
        return tuple(z for z in self.zeros if z.slope < 0)

    def zero_at(self, c: float, tol: float = 1e-8) -> Zero:
        """The zero equal to c, or NotAZeroError."""
        for zero in self.zeros:
            if abs(zero.value - c) <= tol * (1.0 + abs(c)):
                return zero
        raise NotAZeroError(f"{c:.6g} is not a zero of f (f(c) = {self.f(c):.3e})")

    def max_abs_fprime(self, lower: float | None = None, upper: float | None = None) -> float:
        """max |f'| on [lower, upper], default [-T0, T0]."""
        lower = -self.t0 if lower is None else lower
        upper = self.t0 if upper is None else upper
        candidates = [lower, upper]
        for root in self.fprime.deriv().roots():
            if abs(root.imag) <= 1e-12 and lower <= root.real <= upper:
                candidates.append(float(root.real))
        return float(np.max(np.abs(self.fprime(np.array(candidates)))))


@overload
def eval_f(p: Potential, t: float) -> float: ...
@overload
def eval_f(p: Potential, t: FloatArray) -> FloatArray: ...
def eval_f(p: Potential, t: float | FloatArray) -> float | FloatArray:
    return p.f(t)  # type: ignore[no-any-return]


@overload
def eval_fprime(p: Potential, t: float) -> float: ...
@overload
def eval_fprime(p: Potential, t: FloatArray) -> FloatArray: ...
def eval_fprime(p: Potential, t: float | FloatArray) -> float | FloatArray:
    return p.fprime(t)  # type: ignore[no-any-return]


@overload
def eval_F(p: Potential, t: float) -> float: ...
@overload
def eval_F(p: Potential, t: FloatArray) -> FloatArray: ...
def eval_F(p: Potential, t: float | FloatArray) -> float | FloatArray:  # noqa: N802
    """Primitive of f, normalized to vanish at its lowest zero."""
    return p.primitive(t)  # type: ignore[no-any-return]
