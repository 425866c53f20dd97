from cmfield.exact.scalars import (ContractViolation, rational, normalize, factorial, lcm_upto,
                                   is_integral, log_abs, int_log, decimal_digits)
from cmfield.exact.poly import (BiPoly, AdditiveSplit, PolyParseError, MixedMonomialError,
                                mixed_part, split_additive, NEG_INF)
from cmfield.exact.matrix import Mat2, Vec2, INF, SingularMatrixError, mobius_apply, product
from cmfield.exact.intvalued import (binomial_poly, binomial_basis, binomial_synthesis,
                                     divisibility_test, is_integer_valued, binomial_divisible)
