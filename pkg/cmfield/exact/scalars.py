import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

LN2 = math.log(2)


class ContractViolation(Exception):
    pass


def rational(value):
    ''' coerce int, str ("3/2", "-4") or Fraction into an exact scalar '''
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, str)):
        return normalize(Fraction(value))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return normalize(Fraction(int(value.numerator), int(value.denominator)))
    raise TypeError("not an exact scalar: %r" % (value,))


def normalize(value):
    ''' Fractions with denominator 1 collapse to int '''
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def is_integral(value):
    return isinstance(value, int) or value.denominator == 1


def factorial(n):
    if n < 0:
        raise ContractViolation("factorial of negative %d" % n)
    return math.factorial(n)


@lru_cache(maxsize=64)
def primes_upto(n):
    if n < 2:
        return ()
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


@lru_cache(maxsize=256)
def lcm_upto(n):
    ''' lcm(1, ..., n) with lcm_upto(0) = 1 '''
    result = 1
    for p in primes_upto(n):
        power = p
        while power * p <= n:
            power *= p
        result *= power
    return result


def int_log(n):
    ''' natural log of a positive big integer from its leading 53 bits '''
    if n <= 0:
        raise ContractViolation("log of non-positive integer")
    shift = n.bit_length() - 53
    if shift <= 0:
        return math.log(n)
    return math.log(n >> shift) + shift * LN2


def log_abs(value):
    ''' natural log of |value| for ints and Fractions of any size '''
    value = Fraction(value)
    return int_log(abs(value.numerator)) - int_log(value.denominator)


def decimal_digits(n):
    n = abs(n)
    if n == 0:
        return 1
    digits = int((n.bit_length() - 1) * 0.30102999566398120) + 1
    if n >= 10 ** digits:
        digits += 1
    elif n < 10 ** (digits - 1):
        digits -= 1
    return digits
