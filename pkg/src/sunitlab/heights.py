"""Weil heights, places of Q, nearest-integer distance and S-integrality.

The absolute Weil height is computed from the primitive integer minimal
polynomial f = c (x - r_1)...(x - r_d) as (|c| prod max(1, |r_i|))^(1/d),
which equals the product of max(1, |x|_w) over all normalized places w of
any number field containing x.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

import mpmath

from .certify import (
    DEFAULT_START_BITS,
    CertifiedValue,
    Verdict,
    _raw_to_fraction,
    absval,
    isolate_roots,
    pow_rational,
    sub,
)
from .errors import NeedsRefinement, ZeroInput
from .field import FieldElement, minimal_polynomial
from .polynomials import IntPolynomial, is_cyclotomic


@dataclass(frozen=True)
class HeightValue:
    value: CertifiedValue
    log_value: CertifiedValue
    source_poly: IntPolynomial

    @property
    def is_exact(self) -> bool:
        return self.value.is_exact

    def __float__(self):
        return float(self.value)


def _log_enclosure(lo: Fraction, hi: Fraction, bits: int) -> CertifiedValue:
    # reporting only; never feeds a decision
    if lo == hi == 1:
        return CertifiedValue.exact(0, bits)
    with mpmath.workprec(bits + 24):
        slack = mpmath.mpf(2) ** (-(bits + 8))
        llo = mpmath.log(mpmath.mpf(lo.numerator) / lo.denominator)
        lhi = mpmath.log(mpmath.mpf(hi.numerator) / hi.denominator)
        a = _raw_to_fraction((llo - slack * max(1, abs(llo)))._mpf_)
        b = _raw_to_fraction((lhi + slack * max(1, abs(lhi)))._mpf_)
    return CertifiedValue.real_interval(a, b, bits)


def _exact_height(value: Fraction, poly: IntPolynomial, bits: int) -> HeightValue:
    v = CertifiedValue.exact(value, bits)
    return HeightValue(v, _log_enclosure(Fraction(value), Fraction(value), bits), poly)


def mahler_measure_bounds(poly: IntPolynomial, bits: int) -> tuple[Fraction, Fraction]:
    """Rigorous (lo, hi) bounds on the Mahler measure of a squarefree polynomial."""
    rs = isolate_roots(poly, bits)
    lo = hi = Fraction(abs(poly.leading))
    for root in rs.roots:
        m = absval(root)
        lo *= max(Fraction(1), m.lo)
        hi *= max(Fraction(1), m.hi)
    return lo, hi


@lru_cache(maxsize=65536)
def weil_height(a: FieldElement, bits: int = DEFAULT_START_BITS) -> HeightValue:
    """Absolute multiplicative Weil height of a nonzero element."""
    if a.is_zero():
        raise ZeroInput("height of zero is undefined")
    poly = minimal_polynomial(a)
    if a.is_rational():
        x = a.rational_value()
        return _exact_height(Fraction(max(abs(x.numerator), x.denominator)), poly, bits)
    if is_cyclotomic(poly):
        return _exact_height(Fraction(1), poly, bits)
    d = poly.degree
    lo, hi = mahler_measure_bounds(poly, bits + 8 + d)
    measure = CertifiedValue.real_interval(lo, hi, bits + 8)
    value = pow_rational(measure, Fraction(1, d)).with_bits(bits)
    # H >= 1 always; clamp the enclosure rather than let rounding dip below
    if value.lo < 1:
        value = CertifiedValue.real_interval(Fraction(1), max(value.hi, Fraction(1)), bits)
    return HeightValue(value, _log_enclosure(value.lo, value.hi, bits), poly)


def mahler_measure(poly: IntPolynomial, bits: int = DEFAULT_START_BITS) -> CertifiedValue:
    lo, hi = mahler_measure_bounds(poly, bits)
    return CertifiedValue.real_interval(lo, hi, bits)


def projective_height(v: Iterable) -> int:
    """H(x) of a rational vector: clear to coprime integers, take the max."""
    coords = []
    for x in v:
        if isinstance(x, FieldElement):
            x = x.rational_value()
        coords.append(Fraction(x))
    if not any(coords):
        raise ZeroInput("projective height of the zero vector")
    den = 1
    for c in coords:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coords]
    g = 0
    for k in ints:
        g = math.gcd(g, k)
    return max(abs(k) // g for k in ints)


# ---------------------------------------------------------------------------
# places of Q


@dataclass(frozen=True)
class RationalPlace:
    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @property
    def archimedean(self) -> bool:
        return self.prime is None

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


ARCHIMEDEAN = RationalPlace(None)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list:
    n = abs(n)
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def p_adic_valuation(x: Fraction, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def rational_abs(x, place: RationalPlace) -> Fraction:
    """|x|_v for a rational x: the usual absolute value, or p^(-v_p(x))."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("absolute value of zero at a place")
    if place.archimedean:
        return abs(x)
    return Fraction(place.prime) ** (-p_adic_valuation(x, place.prime))


def support_places(x) -> list:
    """The archimedean place plus every prime dividing numerator or denominator."""
    x = Fraction(x)
    primes = sorted(set(prime_factors(x.numerator)) | set(prime_factors(x.denominator)))
    return [ARCHIMEDEAN] + [RationalPlace(p) for p in primes]


# ---------------------------------------------------------------------------
# nearest-integer distance


@dataclass(frozen=True)
class NearestInt:
    p: int
    distance: CertifiedValue
    verdict: Verdict  # TRUE when p is provably a nearest integer


def nearest_int_distance(x: CertifiedValue,
                         exact_fallback: Optional[Callable[[], Optional[Fraction]]] = None
                         ) -> NearestInt:
    """||x|| and the nearest integer p for a real enclosure of width < 1/4.

    ``exact_fallback`` returns the exact rational value of x, or None when x
    is irrational; it is only consulted when the enclosure meets a
    half-integer.
    """
    if not x.is_real:
        raise ValueError("nearest-integer distance needs a real enclosure")
    if 2 * x.rad >= Fraction(1, 4):
        raise NeedsRefinement(f"enclosure width {float(2 * x.rad):.3g} >= 1/4")
    lo, hi = x.lo, x.hi
    half_lo = math.ceil(lo - Fraction(1, 2))
    meets_half = half_lo + Fraction(1, 2) <= hi
    if not meets_half:
        p = math.floor(x.re + Fraction(1, 2))
        return NearestInt(p, absval(sub(x, CertifiedValue.exact(p, x.bits))), Verdict.TRUE)
    exact = exact_fallback() if exact_fallback is not None else None
    if exact is not None:
        exact = Fraction(exact)
        p = math.floor(exact + Fraction(1, 2))
        return NearestInt(p, CertifiedValue.exact(abs(exact - p), x.bits), Verdict.TRUE)
    p = half_lo + 1
    dist = absval(sub(x, CertifiedValue.exact(p, x.bits)))
    return NearestInt(p, dist, Verdict.UNDECIDED)


def exact_nearest_int(x: Fraction) -> tuple[int, Fraction]:
    """Nearest integer and distance for an exact rational (ties go up)."""
    x = Fraction(x)
    p = math.floor(x + Fraction(1, 2))
    return p, abs(x - p)


# ---------------------------------------------------------------------------
# integrality


def is_algebraic_integer(a: FieldElement) -> bool:
    return minimal_polynomial(a).leading == 1


def _supported_on(n: int, primes) -> bool:
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


def is_s_integer(a: FieldElement, primes=()) -> bool:
    """Every coefficient of the monic minimal polynomial is a p-integer off S."""
    primes = tuple(primes)
    return all(_supported_on(c.denominator, primes)
               for c in minimal_polynomial(a).monic_rationals())


def is_s_unit(a: FieldElement, primes=()) -> bool:
    if a.is_zero():
        raise ZeroInput("zero is never an S-unit")
    return is_s_integer(a, primes) and is_s_integer(a.inverse(), primes)
