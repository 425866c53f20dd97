from fractions import Fraction

import mpmath
import pytest

from cmfield.constants import HighPrecisionConstant
from cmfield.exact import BiPoly, ContractViolation, Vec2, factorial
from cmfield.field import validate_pair
from cmfield.lattice import (BOUNDED, NEEDS_ANALYSIS, POWER_GROWTH, Lattice, column_path, diagonal_path,
                             lattice_for, product_ratio, records_frame, row_path)

X = BiPoly.x()
Y = BiPoly.y()


def _close(value, name, tol):
    L = HighPrecisionConstant.builtin(name)
    with mpmath.workdps(50):
        return abs(value - L.to_mpf(50)) < tol


def test_first_row_is_the_zeta3_partial_sum(zeta3):
    for n in range(1, 13):
        P, Q = zeta3.pq(n, 1)
        assert Fraction(P, Q) == sum(Fraction(1, k ** 3) for k in range(1, n + 1))
        assert Q == factorial(n) ** 3


def test_first_diagonal_entries(zeta3):
    assert zeta3.pq(1, 2) == Vec2(6, 5)
    record = zeta3.record(1, 2)
    assert (record.p_red, record.q_red, record.g) == (6, 5, 1)


def test_row_polynomials(zeta3):
    assert zeta3.row_polys(1, with_dual=False).q == Y * (Y - 1) * 2 + 1
    for n in range(1, 9):
        row = zeta3.row_polys(n, with_dual=False)
        assert row.q.compose(X, 1 - Y) == row.q
        assert row.p.compose(X, 1 - Y) == row.p
        assert row.q.eval(0, 1) == factorial(n) ** 3


def test_row_polynomials_with_dual(ln2):
    row = ln2.row_polys(3)
    assert row.hat_q is not None
    for m in range(1, 4):
        assert row.q.eval(0, m) == ln2.row_value(3, m).bottom


@pytest.mark.parametrize("n", range(1, 11))
def test_additive_form(zeta3, n):
    for m in range(1, 11):
        result = zeta3.additive_form_check(n, m)
        assert result["applicable"]
        assert result["ok"], (n, m)


def test_table_matches_row_polynomials(zeta3):
    table = zeta3.pq_table(12, 12)
    for n in range(1, 13):
        row = zeta3.row_polys(n, with_dual=False)
        for m in range(1, 13):
            P, Q = zeta3.column_prefix(m) @ Vec2(row.p.eval(0, m), row.q.eval(0, m))
            assert (table[(n, m)].P, table[(n, m)].Q) == (P, Q)


def test_additive_form_needs_zero_offset():
    lattice = Lattice(validate_pair(X + Y, X - Y, 3))
    result = lattice.additive_form_check(2, 1)
    assert not result["applicable"]
    assert "split offset" in result["reason"]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_vertical_step(zeta3, m):
    for n in range(0, 7):
        assert zeta3.vertical_step(n, m) == zeta3.row_value(n, m + 1)


def test_factorial_reduction(zeta3):
    report = zeta3.factorial_reduction_audit(25)
    kinds = {v["kind"] for v in report.violations}
    assert kinds == set()
    assert report.ok
    assert report.to_dict()["ok"]
    assert report.exponent == 3
    assert report.checks > 0


def test_ln2_rows_share_a_limit(ln2):
    estimates = [ln2.line_limit(m, 3000)["cf_estimate"] for m in range(1, 5)]
    for est in estimates:
        assert _close(est, "(1-ln2)/ln2", 1e-4)
    assert max(estimates) - min(estimates) < 1e-4


def test_e_row(e_field):
    assert _close(e_field.line_limit(1, 40)["cf_estimate"], "1/(e-1)", 1e-6)


def test_zeta3_second_row(zeta3):
    limit = zeta3.line_limit(2, 200)
    assert _close(limit["row_estimate"], "zeta3-1", 1e-4)
    assert _close(limit["estimate"], "zeta3", 1e-4)


def test_line_limit_depth(zeta3):
    with pytest.raises(ContractViolation):
        zeta3.line_limit(1, 2)


def test_product_ratio():
    assert product_ratio(X + 1, X + 1).kind == BOUNDED
    assert product_ratio(X ** 3, X ** 3).kind == BOUNDED
    growth = product_ratio(X, X + 2)
    assert growth.kind == POWER_GROWTH
    assert growth.exponent == 2
    assert growth.partial_products[10] == pytest.approx(66, rel=1e-9)
    fast = product_ratio(X ** 2, X)
    assert fast.kind == NEEDS_ANALYSIS
    assert fast.exponent == float("-inf")
    with pytest.raises(ContractViolation):
        product_ratio(X, 0)


def test_diagonal_probe(zeta3):
    L = HighPrecisionConstant.builtin("zeta3")
    result, = zeta3.any_path_limit_probe([diagonal_path(20)], L)
    assert result["start"] == (1, 2)
    assert result["end"] == (20, 21)
    assert result["bound_ok"]
    assert result["error"] < 1e-25


def test_column_path_limit(zeta3):
    result, = zeta3.any_path_limit_probe([column_path(5, 20)], HighPrecisionConstant.builtin("zeta3"))
    assert result["start"] == (5, 1)
    assert result["end"] == (5, 20)
    assert result["points"] == 20
    assert result["bound_ok"]
    assert result["estimate"] is not None


def test_row_probe(ln2):
    result, = ln2.any_path_limit_probe([row_path(2, 30)])
    assert result["points"] == 30
    assert result["error"] is None


def test_pq_table(ln2):
    table = ln2.pq_table(3, 2)
    assert set(table) == {(n, m) for n in range(4) for m in (1, 2)}
    assert table[(0, 1)].P == 0
    frame = records_frame(table.values())
    assert list(frame.columns) == ["n", "m", "P", "Q", "p_reduced", "q_reduced", "gcd", "delta"]
    with pytest.raises(ContractViolation):
        ln2.pq_table(3, 0)


def test_lattice_for():
    lattice = lattice_for((X + Y, X - Y))
    assert lattice.pair.bX == X ** 2
    assert lattice_for(lattice) is lattice
    with pytest.raises(ContractViolation):
        Lattice((X + Y, X - Y))
