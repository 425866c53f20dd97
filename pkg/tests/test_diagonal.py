from fractions import Fraction

import mpmath
import pytest

from cmfield.cf import INCONCLUSIVE, NO_SUPPORT, SUPPORTS
from cmfield.constants import HighPrecisionConstant
from cmfield.diagonal import (apery_form_matches, certificate, diagonal_digits, diagonal_pcf, diagonal_pq,
                              v_sequence)
from cmfield.exact import BiPoly, ContractViolation, Mat2

X = BiPoly.x()


@pytest.fixture(scope="module")
def pcf(zeta3):
    return diagonal_pcf(zeta3)


def test_apery_recurrence(pcf):
    assert pcf.F == X ** 3 * 34 + X ** 2 * 51 + X * 27 + 5
    assert apery_form_matches(pcf.F)
    assert pcf.B == -X ** 6
    assert pcf.g == X ** 3
    assert pcf.prefix == Mat2(0, 6, 1, 5)
    assert pcf.F.eval(1) == 117


def test_conjugation_identity(pcf):
    left, right = pcf.conjugation()
    assert left == right


def test_values_follow_the_lattice(zeta3, pcf):
    values = pcf.values(15)
    assert values[0] == Fraction(6, 5)
    assert values[1] == Fraction(351, 292)
    for n, value in enumerate(values, start=1):
        P, Q = zeta3.pq(n, n + 1)
        assert value == Fraction(P, Q)


def test_diagonal_pq(zeta3):
    for n, (P, Q) in enumerate(diagonal_pq(zeta3, 15)):
        assert (P, Q) == tuple(zeta3.pq(n, n + 1))


def test_golden_sequence(zeta3, pcf):
    seq = v_sequence(zeta3, 4, pcf=pcf)
    assert seq.v == [1, 5, 73, 1445, 33001]
    assert seq.recurrence_ok
    assert seq.exponent == 3


def test_growth_rate(zeta3, pcf):
    seq = v_sequence(zeta3, 31, pcf=pcf)
    # the plain ratio still carries (30/31)^(3/2)
    assert float(Fraction(seq.v[31], seq.v[30])) == pytest.approx(33.97056 * (30 / 31) ** 1.5, rel=0.01)
    assert seq.growth.lambda_corrected == pytest.approx(33.97056, rel=0.01)
    assert seq.growth.power == pytest.approx(-1.5, abs=0.25)
    assert seq.tenfold_from_3
    assert seq.growth.lambda_values[0] == pytest.approx(33.97056, rel=1e-5)
    assert 32 < seq.growth.lambda_hat < 34.5


def test_v_sequence_needs_an_exponent(ln2):
    with pytest.raises(ContractViolation):
        v_sequence(ln2, 4)


def test_apery_value(pcf):
    L = HighPrecisionConstant.builtin("zeta3", 160)
    assert L.radius < Fraction(1, 10 ** 40)
    with mpmath.workdps(60):
        assert abs(diagonal_digits(pcf, 60) - L.to_mpf(60)) < mpmath.mpf(10) ** -30


def test_certificate_supports_zeta3(zeta3):
    report = certificate(zeta3, HighPrecisionConstant.builtin("zeta3"), 40)
    assert report.verdict == SUPPORTS
    assert 0.4 < report.decay < 0.8
    assert report.audit_ok
    assert not report.low_confidence
    assert report.lambda_hat == pytest.approx(33.97, rel=0.05)
    assert "supports-irrationality" in report.to_text()


def test_short_certificate_is_low_confidence(zeta3):
    report = certificate(zeta3, HighPrecisionConstant.builtin("zeta3"), 5)
    assert report.low_confidence
    assert report.to_dict()["low_confidence"]


def test_certificate_without_exponent(ln2):
    report = certificate(ln2, HighPrecisionConstant.builtin("ln2"), 20)
    assert report.verdict == INCONCLUSIVE
    assert "no factorial reduction exponent claimed" in report.notes


def test_rational_target_has_no_support(zeta3):
    report = certificate(zeta3, HighPrecisionConstant.exact("6/5", Fraction(6, 5)), 20)
    assert report.verdict == NO_SUPPORT


def test_unknown_line(zeta3):
    with pytest.raises(ContractViolation):
        certificate(zeta3, HighPrecisionConstant.builtin("zeta3"), 10, line="column")
