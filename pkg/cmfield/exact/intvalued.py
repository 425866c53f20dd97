''' Integer-valued polynomials through the binomial basis binom(x, n) '''
from fractions import Fraction

from cmfield.exact.poly import BiPoly
from cmfield.exact.scalars import ContractViolation, factorial, normalize, is_integral


def binomial_poly(n, var="x"):
    ''' binom(x, n) = x (x-1) ... (x-n+1) / n! '''
    t = BiPoly.x() if var == "x" else BiPoly.y()
    result = BiPoly.const(1)
    for k in range(n):
        result = result * (t - k)
    return result / factorial(n)


def _univariate(p):
    var, coeffs = p.univariate_coeffs()
    degree = len(coeffs) - 1
    if var == "x":
        return var, degree, lambda m: p.eval(m, 0)
    return var, degree, lambda m: p.eval(0, m)


def binomial_basis(p):
    ''' coefficients a_0..a_d with p = sum a_n binom(x, n) '''
    var, degree, value = _univariate(p)
    coeffs = []
    for m in range(degree + 1):
        # binom(m, n) for n <= m, built incrementally
        acc, binom = 0, 1
        for n in range(m):
            acc += coeffs[n] * binom
            binom = binom * (m - n) // (n + 1)
        coeffs.append(normalize(Fraction(value(m)) - acc))
    return coeffs


def binomial_synthesis(coeffs, var="x"):
    result = BiPoly()
    for n, a in enumerate(coeffs):
        if a != 0:
            result = result + binomial_poly(n, var) * a
    return result


def is_integer_valued(p):
    return all(is_integral(a) for a in binomial_basis(p))


def binomial_divisible(p, k):
    ''' k divides every binomial coefficient a_n of p '''
    return all(is_integral(Fraction(a) / k) for a in binomial_basis(p))


def divisibility_test(p, k, window):
    ''' k | p(m) for every integer m, decided on deg(p)+1 consecutive points '''
    var, degree, value = _univariate(p)
    window = list(window)
    if len(window) < max(degree, 0) + 1:
        raise ContractViolation("window of %d points is too short for degree %d" % (len(window), degree))
    if any(b - a != 1 for a, b in zip(window, window[1:])):
        raise ContractViolation("window points must be consecutive integers")
    return all(is_integral(Fraction(value(m)) / k) for m in window)
