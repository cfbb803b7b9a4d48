"""Integer building blocks: product trees, powmod, Jacobi symbol, exact power floors.

gmpy2 (GMP) is used for the heavy multiplications when importable: at the
3,400-digit scale of the n=1000 searches its modular arithmetic is roughly an
order of magnitude faster than built-in int. Every routine falls back to pure
Python ints, and results are always returned as plain ``int``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

try:
    import gmpy2

    _mpz = gmpy2.mpz
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - environment dependent
    gmpy2 = None
    _mpz = int
    HAVE_GMPY2 = False


def as_fast_int(n: int):
    """The fastest available big-integer representation for modular loops."""
    return _mpz(n)


def product_tree(values: Sequence[int]) -> int:
    """Exact product by balanced pairwise multiplication (empty product = 1)."""
    if not values:
        return 1
    level = [_mpz(v) for v in values]
    while len(level) > 1:
        nxt = [level[i] * level[i + 1] for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return int(level[0])


def powmod(base: int, exponent: int, modulus: int) -> int:
    if HAVE_GMPY2:
        return int(gmpy2.powmod(_mpz(base), _mpz(exponent), _mpz(modulus)))
    return pow(base, exponent, modulus)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol requires odd positive n")
    if HAVE_GMPY2:
        return gmpy2.jacobi(_mpz(a), _mpz(n))
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def floor_power(x: int, c: float) -> int:
    """floor(x**c) for x >= 1, exact at the integer boundary.

    c = 1 and c = 1/2 (the defaults throughout) are handled with exact integer
    arithmetic. Rational c with a small denominator uses an exact integer k-th
    root; anything else (e.g. c = e^-gamma) is evaluated with mpmath at a
    precision comfortably beyond the float boundary ambiguity.
    """
    if x < 1:
        raise ValueError("floor_power requires x >= 1")
    if c == 1.0:
        return x
    if c == 0.5:
        return math.isqrt(x)
    frac = Fraction(c).limit_denominator(64)
    if abs(float(frac) - c) < 1e-15 and frac.denominator <= 64:
        return _iroot(x ** frac.numerator, frac.denominator)
    import mpmath

    with mpmath.workprec(x.bit_length() + 80):
        return int(mpmath.floor(mpmath.power(x, c)))


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) by Newton iteration on integers."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    if HAVE_GMPY2:
        return int(gmpy2.iroot(_mpz(n), k)[0])
    guess = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        nxt = ((k - 1) * guess + n // guess ** (k - 1)) // k
        if nxt >= guess:
            break
        guess = nxt
    while guess**k > n:
        guess -= 1
    return guess


def exact_ratio(num: int, den: int) -> Fraction:
    """num/den as a reduced Fraction, with the gcd taken in GMP when available."""
    if HAVE_GMPY2:
        q = gmpy2.mpq(_mpz(num), _mpz(den))
        return Fraction(int(q.numerator), int(q.denominator))
    return Fraction(num, den)


def decimal_digest(n: int) -> str:
    """sha256 hex digest of the decimal expansion (cache integrity key)."""
    import hashlib

    return hashlib.sha256(str(n).encode("ascii")).hexdigest()
