import pytest

from cmfield.exact import BiPoly, ContractViolation, Mat2
from cmfield.field import build_cf_field, is_degenerate, validate_pair
from cmfield.filters import IntegralBoxFilter, NonDegenerateFilter, NonZeroBFilter
from cmfield.presets import deg2_family, preset
from cmfield.search import (SearchSpace, SearchSpaceTooLarge, canonical_pair, complete_MY, degeneracy_stats,
                            enumerate_pairs)

X = BiPoly.x()
Y = BiPoly.y()


def _keys(pairs):
    return {pair.key() for pair in pairs}


@pytest.fixture(scope="module")
def degree_two():
    return enumerate_pairs(SearchSpace.for_degree(2, 2), jobs=1)


@pytest.fixture(scope="module")
def degree_one():
    return enumerate_pairs(SearchSpace.for_degree(1, 1), jobs=1)


@pytest.mark.parametrize("row", [1, 2, 3, 4])
def test_degree_two_table_is_recovered(degree_two, row):
    f, fbar = canonical_pair(*deg2_family(row, 0))
    assert (str(f), str(fbar)) in _keys(degree_two)


def test_degree_two_canonical_forms():
    assert canonical_pair(*deg2_family(1, 0)) == canonical_pair(*deg2_family(4, 0))
    assert canonical_pair(*deg2_family(1, 0)) == (X ** 2 * 2 + X * Y * 2 + Y ** 2, -X ** 2 * 2 + X * Y * 2 - Y ** 2)
    assert canonical_pair(*deg2_family(2, 0)) == canonical_pair(*deg2_family(3, 0))


def test_results_are_valid_and_canonical(degree_two):
    assert degree_two
    assert len(_keys(degree_two)) == len(degree_two)
    for pair in degree_two:
        validate_pair(pair.f, pair.fbar)
        assert canonical_pair(pair.f, pair.fbar) == (pair.f, pair.fbar)
        assert not pair.bX.is_zero() and not pair.bY.is_zero()


def test_degree_one(degree_one):
    keys = _keys(degree_one)
    assert ("x + y", "x - y") in keys
    assert ("x + y", "1") in keys


def test_degree_one_in_parallel(degree_one):
    assert _keys(enumerate_pairs(SearchSpace.for_degree(1, 1), jobs=2)) == _keys(degree_one)


def test_non_degenerate_filter(degree_one):
    filters = [NonZeroBFilter(), IntegralBoxFilter(1), NonDegenerateFilter()]
    pairs = enumerate_pairs(SearchSpace.for_degree(1, 1), filters=filters, jobs=1)
    assert pairs
    assert _keys(pairs) == {pair.key() for pair in degree_one if not is_degenerate(pair)}
    stats = degeneracy_stats(degree_one)
    assert stats["non_degenerate"] == len(pairs)
    assert stats["pairs"] == stats["degenerate"] + stats["non_degenerate"]


def test_empty_box():
    assert enumerate_pairs(SearchSpace(1, 1, 0), jobs=1) == []


def test_space_too_large():
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_pairs(SearchSpace.for_degree(3, 2))
    with pytest.raises(SearchSpaceTooLarge) as info:
        enumerate_pairs(SearchSpace.for_degree(2, 2), cap=10)
    assert info.value.size == 5 ** 6


def test_search_space():
    assert SearchSpace.for_degree(2, 1).f_monomials == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert SearchSpace(1, 1, mode="complete_MY").size() == 16
    with pytest.raises(ContractViolation):
        SearchSpace(1, 1, 1, "guess")
    with pytest.raises(ContractViolation):
        SearchSpace(-1, 1)
    with pytest.raises(ContractViolation):
        enumerate_pairs(SearchSpace(1, 1, mode="complete_MY"))


def test_canonical_pair():
    assert canonical_pair(X * -2, X * 4) == (X, X * -2)
    assert canonical_pair(X / 2 + Y, BiPoly.const(1)) == (X + Y * 2, BiPoly.const(2))


def test_completion_contains_zeta3():
    field = build_cf_field(preset("zeta3").pair())
    result = complete_MY(field.MX, 6, 3)
    assert len(result.unknowns) == 112
    assert result.contains(field.MY)
    assert not result.contains(Mat2(X ** 7, 0, 0, 0))


def test_completion_of_the_identity():
    result = complete_MY(Mat2.identity(), 1, 1)
    assert len(result) == 8
    for M in result.basis:
        assert all(BiPoly.coerce(e).deg_x() <= 0 for e in M.entries())
    assert result.contains(Mat2(Y, 1, 0, 2))
    assert not result.contains(Mat2(X, 0, 0, 0))
