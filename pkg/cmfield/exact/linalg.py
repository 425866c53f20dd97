''' Exact linear algebra over the rationals on top of sympy's DomainMatrix '''
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from cmfield.exact.scalars import normalize


def _entry(value):
    value = Fraction(value)
    return (value.numerator, value.denominator)


def _back(value):
    return normalize(Fraction(int(value.numerator), int(value.denominator)))


def domain_matrix(rows, ncols=None):
    if not rows:
        return DomainMatrix([], (0, ncols or 0), QQ)
    return DomainMatrix.from_list([[_entry(v) for v in row] for row in rows], QQ)


def nullspace(rows, ncols):
    ''' basis of {v : rows * v = 0} as lists of exact scalars '''
    if not rows:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    basis = domain_matrix(rows).nullspace()
    return [[_back(v) for v in row] for row in basis.to_list()]


def rank(rows):
    if not rows:
        return 0
    return domain_matrix(rows).rank()


def solve_affine(rows, rhs, ncols):
    ''' (particular, null basis) of rows * v = rhs, or None when inconsistent '''
    if not rows:
        return [0] * ncols, nullspace(rows, ncols)
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = domain_matrix(augmented).rref()
    if ncols in pivots:
        return None
    values = reduced.to_list()
    particular = [0] * ncols
    for r, c in enumerate(pivots):
        particular[c] = _back(values[r][ncols])
    return particular, nullspace(rows, ncols)
