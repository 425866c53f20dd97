from cmfield.exact import BiPoly
from cmfield.field import ConjugatePair
from cmfield.filters import IntegralBoxFilter, NonDegenerateFilter, NonZeroBFilter, PairFilter, passes_filters
from cmfield.presets import preset


def pair_of(name):
    return preset(name).pair()


def test_base_filter_accepts():
    assert PairFilter().check(pair_of("ln2"))


def test_nonzero_b():
    assert NonZeroBFilter().check(pair_of("zeta3"))
    # e: f fbar = x + y splits into bX = x, bY = y
    assert NonZeroBFilter().check(pair_of("e"))
    e = pair_of("e")
    assert not NonZeroBFilter().check(ConjugatePair(e.f, e.fbar, e.a, e.bX, BiPoly()))


def test_non_degenerate():
    assert NonDegenerateFilter().check(pair_of("ln2"))
    assert not NonDegenerateFilter().check(pair_of("degenerate"))


def test_integral_box():
    zeta3 = pair_of("zeta3")
    assert IntegralBoxFilter(2).check(zeta3)
    assert not IntegralBoxFilter(1).check(zeta3)
    halves = pair_of("deg2-1:0")
    assert not IntegralBoxFilter(5).check(halves)


def test_passes_filters():
    pair = pair_of("degenerate")
    assert passes_filters(pair, None)
    assert passes_filters(pair, [NonZeroBFilter()])
    assert not passes_filters(pair, [NonZeroBFilter(), NonDegenerateFilter()])


def test_filter_names():
    assert NonZeroBFilter().name == "nonzero-b"
    assert IntegralBoxFilter(3, name="box3").name == "box3"
