import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cmfield.exact import (BiPoly, ContractViolation, INF, Mat2, MixedMonomialError, PolyParseError,
                           SingularMatrixError, binomial_basis, binomial_divisible, binomial_synthesis,
                           divisibility_test, factorial, is_integer_valued, lcm_upto, mobius_apply,
                           rational, split_additive)
from cmfield.exact.linalg import nullspace, rank, solve_affine
from cmfield.exact.scalars import decimal_digits, int_log, log_abs

X = BiPoly.x()
Y = BiPoly.y()
ZETA3_F = X ** 3 + X ** 2 * Y * 2 + X * Y ** 2 * 2 + Y ** 3
ZETA3_FBAR = ZETA3_F.compose(-X, Y)

small_ints = st.integers(min_value=-5, max_value=5)
small_polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small_ints, max_size=5).map(BiPoly)


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2


def test_zeta3_product_is_additive():
    assert ZETA3_F * ZETA3_FBAR == Y ** 6 - X ** 6


def test_additive_identity_and_zero_terms():
    p = X * 3 + Y ** 2
    assert BiPoly() + p == p
    assert (p - p).is_zero()
    assert (p - p).terms == {}


def test_eval():
    assert (Y ** 6 - X ** 6).eval(1, 1) == 0
    a = X ** 3 + (X + 1) ** 3 + Y * (Y - 1) * (X * 2 + 1) * 2
    assert a.eval(1, 1) == 9
    assert ZETA3_F.eval(2, 1) == 21
    assert (X / 2).eval(Fraction(1, 3)) == Fraction(1, 6)


def test_shift():
    assert X.shift(1, 0) == X + 1
    assert (Y ** 6 - X ** 6).shift(0, 0) == Y ** 6 - X ** 6
    assert (X ** 2).shift(1, 0) == X ** 2 + X * 2 + 1


def test_mixed_part():
    assert (Y ** 6 - X ** 6).mixed_part().is_zero()
    assert (X * Y).mixed_part() == X * Y
    assert (X ** 2 + X * Y * 2 + Y ** 2 * 2).mixed_part() == X * Y * 2


def test_split_additive():
    split = split_additive(Y ** 6 - X ** 6)
    assert split.bX == -X ** 6
    assert split.bY == Y ** 6
    zero = split_additive(BiPoly())
    assert zero.bX.is_zero() and zero.bY.is_zero()
    split = split_additive(X ** 2 + Y ** 2 + 3)
    assert split.bX == X ** 2
    assert split.bY == Y ** 2 + 3
    shifted = split_additive(X ** 2 + Y ** 2 + 3, 1)
    assert shifted.bX == X ** 2 + 1
    assert shifted.bY == Y ** 2 + 2


def test_split_rejects_mixed_terms():
    with pytest.raises(MixedMonomialError) as err:
        split_additive(X * Y + X)
    assert err.value.monomials == [X * Y]


@given(small_polys, small_polys, small_polys)
def test_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p


@given(small_polys, small_ints, small_ints)
def test_shift_is_a_substitution(p, alpha, beta):
    shifted = p.shift(alpha, beta)
    assert shifted.eval(2, 3) == p.eval(2 + alpha, 3 + beta)


@given(small_polys)
def test_split_recombines(p):
    p = p - p.mixed_part()
    split = split_additive(p)
    assert split.bX + split.bY == p
    assert split.bX.eval(0) == 0


def test_parse():
    assert BiPoly.parse("x^2 + 2*x*y - 3") == X ** 2 + X * Y * 2 - 3
    assert BiPoly.parse("(2*n-1)^2", {"n": "x"}) == (X * 2 - 1) ** 2
    assert BiPoly.parse("x/2") == X / 2


def test_parse_errors_carry_positions():
    with pytest.raises(PolyParseError) as err:
        BiPoly.parse("x+*y")
    assert err.value.column == 3
    with pytest.raises(PolyParseError):
        BiPoly.parse("x + z")
    with pytest.raises(PolyParseError):
        BiPoly.parse("2x")
    with pytest.raises(PolyParseError):
        BiPoly.parse("(x + y")


def test_str_round_trip():
    for p in (ZETA3_F, ZETA3_FBAR, X / 2 - Y ** 3 * 7 + 1, BiPoly()):
        assert BiPoly.parse(str(p)) == p


def test_rational_normalizes():
    assert rational("6/3") == 2
    assert isinstance(rational("6/3"), int)
    assert rational(Fraction(4, 6)) == Fraction(2, 3)
    with pytest.raises(TypeError):
        rational(True)


def test_matrix_ops():
    b = -X ** 6
    a = X ** 3 + (X + 1) ** 3 + Y * (Y - 1) * (X * 2 + 1) * 2
    MX = Mat2(0, b, 1, a)
    assert MX.det() == X ** 6
    A = Mat2(1, 2, 3, 4)
    assert Mat2.identity() @ A == A
    assert A @ A.inverse() == Mat2.identity()
    with pytest.raises(SingularMatrixError):
        Mat2(1, 2, 2, 4).inverse()


def test_matrix_product_against_stepwise():
    mats = [Mat2(0, 1, k ** 3, 2 * k + 1) for k in (1, 2)]
    prod = mats[0] @ mats[1]
    a11 = mats[0].a11 * mats[1].a11 + mats[0].a12 * mats[1].a21
    a22 = mats[0].a21 * mats[1].a12 + mats[0].a22 * mats[1].a22
    assert prod.a11 == a11 and prod.a22 == a22
    assert prod.det() == mats[0].det() * mats[1].det()


def test_mobius():
    assert mobius_apply(Mat2.tau(), Fraction(3, 4)) == Fraction(4, 3)
    assert mobius_apply(Mat2(0, 5, 1, 7), 0) == Fraction(5, 7)
    assert mobius_apply(Mat2(1, 2, 3, 4), Fraction(-4, 3)) is INF
    assert mobius_apply(Mat2(1, 2, 3, 4), INF) == Fraction(1, 3)
    assert mobius_apply(Mat2(1, 2, 0, 4), INF) is INF


nonsingular = st.tuples(small_ints, small_ints, small_ints, small_ints).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0).map(lambda t: Mat2(*t))
points = st.one_of(st.just(INF), st.fractions(min_value=-10, max_value=10, max_denominator=7))


@given(nonsingular, nonsingular, points)
def test_mobius_composes(A, B, z):
    assert mobius_apply(A @ B, z) == mobius_apply(A, mobius_apply(B, z))


def test_factorial_and_lcm():
    assert factorial(0) == 1
    assert factorial(5) == 120
    assert lcm_upto(0) == 1
    assert lcm_upto(3) == 6
    assert lcm_upto(10) == 2520
    with pytest.raises(ContractViolation):
        factorial(-1)


def test_logs_of_big_numbers():
    n = 10 ** 400
    assert abs(int_log(n) - 400 * 2.302585092994046) < 1e-9
    assert abs(log_abs(Fraction(1, n)) + int_log(n)) < 1e-12
    assert decimal_digits(n) == 401
    assert decimal_digits(999) == 3
    assert decimal_digits(0) == 1


def test_binomial_basis():
    assert binomial_basis(X * (X + 1) / 2) == [0, 1, 1]
    assert binomial_basis(BiPoly.const(1)) == [1]
    assert binomial_basis(X ** 2) == [0, 1, 2]


@settings(max_examples=50)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=1, max_size=13))
def test_binomial_round_trip(coeffs):
    p = BiPoly.univariate(coeffs)
    assert binomial_synthesis(binomial_basis(p)) == p


def test_divisibility_examples():
    assert divisibility_test(X * (X + 1), 2, [0, 1, 2])
    assert not divisibility_test(X, 2, [0, 1])
    assert divisibility_test(X ** 3 - X, 6, [0, 1, 2, 3])
    with pytest.raises(ContractViolation):
        divisibility_test(X ** 3 - X, 6, [0, 1])


def test_binomial_equivalence_brute_force():
    rng = random.Random(20240611)
    for _ in range(200):
        degree = rng.randint(0, 6)
        p = binomial_synthesis([rng.randint(-30, 30) for _ in range(degree + 1)])
        k = rng.randint(1, 50)
        everywhere = all(Fraction(p.eval(m)) % k == 0 for m in range(-50, 51))
        start = rng.randint(-10, 10)
        window = divisibility_test(p, k, range(start, start + degree + 1))
        coefficients = binomial_divisible(p, k)
        quotient = is_integer_valued(p / k)
        assert everywhere == window == coefficients == quotient


def test_linear_algebra():
    rows = [[1, 2, 3], [2, 4, 6]]
    basis = nullspace(rows, 3)
    assert len(basis) == 2
    for v in basis:
        assert sum(r * c for r, c in zip(rows[0], v)) == 0
    assert rank(rows) == 1
    particular, null = solve_affine([[1, 1], [1, -1]], [3, 1], 2)
    assert particular == [2, 1]
    assert null == []
    assert solve_affine([[1, 1], [1, 1]], [1, 2], 2) is None
