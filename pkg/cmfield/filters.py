import logging
from fractions import Fraction

from cmfield.field import is_degenerate

logger = logging.getLogger(__name__)


class PairFilter():
    ''' Base class for filters with required functions '''
    name = "pair-filter"

    def check(self, pair):
        return True


class NonZeroBFilter(PairFilter):
    ''' both halves of the additive split are nonzero polynomials '''

    def __init__(self, name='nonzero-b'):
        self.name = name

    def check(self, pair):
        return not pair.bX.is_zero() and not pair.bY.is_zero()


class NonDegenerateFilter(PairFilter):

    def __init__(self, name='non-degenerate'):
        self.name = name

    def check(self, pair):
        return not is_degenerate(pair)


class IntegralBoxFilter(PairFilter):
    ''' f and fbar have integer coefficients in [-box, box] '''

    def __init__(self, box, name='integral-box'):
        self.box = box
        self.name = name

    def check(self, pair):
        for poly in (pair.f, pair.fbar):
            for _, c in poly.items():
                c = Fraction(c)
                if c.denominator != 1 or abs(c) > self.box:
                    return False
        return True


def passes_filters(pair, filters):
    for f in filters or []:
        if not f.check(pair):
            logger.debug("%s rejected by %s", pair.key(), f.name)
            return False
    return True
