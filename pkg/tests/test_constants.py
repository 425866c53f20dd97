from fractions import Fraction

import mpmath
import pytest

from cmfield.constants import BUILTINS, HighPrecisionConstant, UnknownConstantError
from cmfield.exact import ContractViolation, Mat2

REFERENCE = {
    "zeta3": lambda: mpmath.zeta(3),
    "e": lambda: mpmath.e,
    "ln2": lambda: mpmath.log(2),
    "pi": lambda: mpmath.pi,
    "pi^2/12": lambda: mpmath.pi ** 2 / 12,
    "zeta3-1": lambda: mpmath.zeta(3) - 1,
    "e-1": lambda: mpmath.e - 1,
    "(1-ln2)/ln2": lambda: (1 - mpmath.log(2)) / mpmath.log(2),
    "1/(e-1)": lambda: 1 / (mpmath.e - 1),
}


def test_every_builtin_has_a_reference():
    assert set(BUILTINS) == set(REFERENCE)


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_builtin_interval_contains_the_constant(name):
    L = HighPrecisionConstant.builtin(name, 256)
    assert L.source == "builtin"
    assert 0 < L.radius < Fraction(1, 2 ** 240)
    with mpmath.workdps(120):
        reference = REFERENCE[name]()
        assert abs(L.to_mpf(120) - reference) <= mpmath.mpf(L.radius.numerator) / L.radius.denominator


def test_refine():
    L = HighPrecisionConstant.builtin("zeta3", 128)
    finer = L.refine(512)
    assert finer.bits == 512
    assert finer.radius < L.radius
    assert abs(finer.value - L.value) <= L.radius + finer.radius
    assert L.refine(64) is L


def test_unknown_builtin():
    with pytest.raises(UnknownConstantError):
        HighPrecisionConstant.builtin("zeta5")


def test_resolve():
    assert HighPrecisionConstant.resolve("1/3").is_exact
    assert HighPrecisionConstant.resolve("1/3").value == Fraction(1, 3)
    assert HighPrecisionConstant.resolve("ln2").name == "ln2"
    decimal = HighPrecisionConstant.resolve("1.2020")
    assert decimal.source == "decimal"
    assert decimal.radius == Fraction(1, 20000)
    assert decimal.refine(4096) is decimal
    with pytest.raises(ContractViolation):
        HighPrecisionConstant.resolve("zeta5")


def test_mobius_image():
    third = HighPrecisionConstant.exact("1/3", Fraction(1, 3))
    assert third.mobius(Mat2(0, 1, 1, 0)).value == 3
    assert third.shifted(-1).value == Fraction(-2, 3)
    with pytest.raises(ContractViolation):
        third.mobius(Mat2(1, 0, 3, -1))


def test_mobius_widens_the_radius():
    L = HighPrecisionConstant.from_decimal("c", "0.5")
    image = L.mobius(Mat2(0, 1, 1, 0))
    assert image.lower <= 2 <= image.upper
    assert image.upper - image.lower >= Fraction(2, 11)


def test_metadata():
    L = HighPrecisionConstant.builtin("ln2", 128)
    meta = L.metadata()
    assert meta["bits"] == 128
    assert meta["digest"] == HighPrecisionConstant.builtin("ln2", 128).digest()
    assert meta["radius_log2"] < -120
    assert HighPrecisionConstant.exact("0", 0).metadata()["radius_log2"] is None
