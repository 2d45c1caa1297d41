"""Tests for polynomial potentials."""

import numpy as np
import pytest

from acmorse.config.models import PotentialConfig
from acmorse.exceptions import InadmissiblePotentialError, NotAZeroError
from acmorse.potential import Potential, classify_zeros, eval_F, eval_f, eval_fprime


class TestCubic:
    def test_zeros_and_slopes(self, cubic: Potential) -> None:
        values = [z.value for z in cubic.zeros]
        slopes = [z.slope for z in cubic.zeros]
        assert values == pytest.approx([-1.0, 0.0, 1.0], abs=1e-12)
        assert slopes == pytest.approx([2.0, -1.0, 2.0])
        assert cubic.t0 == pytest.approx(1.0)
        assert cubic.is_odd

    def test_primitive_is_double_well(self, cubic: Potential) -> None:
        t = np.linspace(-2, 2, 41)
        assert np.allclose(eval_F(cubic, t), (t**2 - 1) ** 2 / 4)
        assert eval_f(cubic, 2.0) == pytest.approx(6.0)
        assert eval_fprime(cubic, 0.0) == pytest.approx(-1.0)

    def test_max_abs_fprime(self, cubic: Potential) -> None:
        assert cubic.max_abs_fprime() == pytest.approx(2.0)
        assert cubic.max_abs_fprime(-0.5, 0.5) == pytest.approx(1.0)

    def test_zero_at(self, cubic: Potential) -> None:
        assert cubic.zero_at(1.0).is_stable
        with pytest.raises(NotAZeroError):
            cubic.zero_at(0.5)


class TestQuintic:
    def test_five_zeros(self, quintic: Potential) -> None:
        values = [z.value for z in quintic.zeros]
        assert values == pytest.approx([-2, -1, 0, 1, 2], abs=1e-10)
        assert [z.sign for z in quintic.zeros] == [1, -1, 1, -1, 1]
        assert quintic.t0 == pytest.approx(2.0)

    def test_unstable_zeros(self, quintic: Potential) -> None:
        assert [z.value for z in quintic.unstable_zeros] == pytest.approx([-1, 1])

    def test_primitive_vanishes_at_lowest_zero(self, quintic: Potential) -> None:
        values = [float(quintic.primitive(z.value)) for z in quintic.zeros]
        assert min(values) == pytest.approx(0.0, abs=1e-12)


class TestAdmissibility:
    @pytest.mark.parametrize(
        "coeffs,match",
        [
            ((0.0, 0.0, 1.0), "odd degree"),
            ((0.0, 1.0, 0.0, -1.0), "leading coefficient"),
            ((0.0, 0.0, 0.0, 1.0), "degenerate"),
        ],
    )
    def test_rejected(self, coeffs, match) -> None:
        with pytest.raises(InadmissiblePotentialError, match=match):
            Potential(coeffs)

    def test_single_zero_is_admissible(self) -> None:
        p = Potential((0.0, 1.0, 0.0, 1.0))
        assert len(p.zeros) == 1
        assert p.t0 == pytest.approx(0.0, abs=1e-12)

    def test_classify_from_coefficients(self) -> None:
        zeros = classify_zeros((0.0, -1.0, 0.0, 1.0))
        assert len(zeros) == 3

    def test_from_config(self) -> None:
        assert Potential.from_config(PotentialConfig(kind="quintic")).name == "quintic"
        custom = Potential.from_config(PotentialConfig(coeffs=[0.0, -4.0, 0.0, 1.0]))
        assert custom.t0 == pytest.approx(2.0)
