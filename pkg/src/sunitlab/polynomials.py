"""Dense univariate polynomials over Z and Q.

Coefficients are stored in ascending degree order.  Integer polynomials are
immutable and hashable so they can key caches of root systems and heights;
rational polynomials are plain lists of :class:`fractions.Fraction` handled by
the module-level helpers.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        coeffs = _strip(int(c) for c in coeffs)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    def __reduce__(self):
        return (IntPolynomial, (self.coeffs,))

    @classmethod
    def from_rationals(cls, coeffs: Iterable) -> "IntPolynomial":
        """Scale a rational polynomial to a primitive integer one (sign kept)."""
        coeffs = [Fraction(c) for c in coeffs]
        den = reduce(_lcm, (c.denominator for c in coeffs), 1)
        return cls(int(c * den) for c in coeffs).primitive(normalize_sign=False)

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return cls.from_rationals(parse_rational_poly(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self, normalize_sign: bool = True) -> "IntPolynomial":
        if not self.coeffs:
            return self
        g = self.content
        sign = -1 if (normalize_sign and self.leading < 0) else 1
        return IntPolynomial(sign * c // g for c in self.coeffs)

    def is_primitive(self) -> bool:
        return bool(self.coeffs) and self.content == 1 and self.leading > 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def to_rationals(self) -> list:
        return [Fraction(c) for c in self.coeffs]

    def monic_rationals(self) -> list:
        lc = self.leading
        return [Fraction(c, lc) for c in self.coeffs]

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def reciprocal(self) -> "IntPolynomial":
        """x^deg * f(1/x)."""
        return IntPolynomial(reversed(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"([+-]?)([^+-]+)")
_MONO = re.compile(r"^(?:(?P<coef>\d+(?:/\d+)?)\*?)?(?P<var>[a-z])(?:\^(?P<exp>\d+))?$")


def parse_rational_poly(text: str) -> list:
    """Parse ``"x^2 - x - 1"`` or ``"1/2 + 3*t^2"`` into ascending Fractions.

    A bare comma-separated list (``"-1,-1,1"``) is read as ascending
    coefficients.  Any single lowercase letter serves as the variable.
    """
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    if "," in text or re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        return [Fraction(part) for part in text.split(",")]
    out: dict[int, Fraction] = {}
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign, body = m.groups()
        if re.fullmatch(r"\d+(/\d+)?", body):
            coef, exp = Fraction(body), 0
        else:
            mm = _MONO.match(body)
            if not mm:
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            coef = Fraction(mm["coef"]) if mm["coef"] else Fraction(1)
            exp = int(mm["exp"]) if mm["exp"] else 1
        if sign == "-":
            coef = -coef
        out[exp] = out.get(exp, Fraction(0)) + coef
    if pos != len(text):
        raise ValueError(f"cannot parse polynomial {text!r}")
    deg = max(out)
    return [out.get(k, Fraction(0)) for k in range(deg + 1)]


# ---------------------------------------------------------------------------
# rational polynomial arithmetic (lists of Fraction, ascending)


def qstrip(p):
    return _strip(p)


def qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


def qsub(a, b):
    n = max(len(a), len(b))
    return _strip(
        (a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)
    )


def qdivmod(a, b):
    b = _strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in _strip(a)]
    db, lb = len(b) - 1, Fraction(b[-1])
    quot = [Fraction(0)] * max(len(rem) - db, 0)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        factor = rem[-1] / lb
        quot[shift] = factor
        for k, c in enumerate(b):
            rem[shift + k] -= factor * c
        rem = _strip(rem)
    return _strip(quot), rem


def qmonic(p):
    p = _strip(p)
    if not p:
        return p
    lc = Fraction(p[-1])
    return [Fraction(c) / lc for c in p]


def qgcd(a, b):
    """Monic gcd over Q."""
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, qdivmod(a, b)[1]
    return qmonic(a)


def squarefree_part(poly: IntPolynomial) -> IntPolynomial:
    if poly.degree <= 1:
        return poly.primitive()
    g = qgcd(poly.to_rationals(), poly.derivative().to_rationals())
    if len(g) <= 1:
        return poly.primitive()
    q, r = qdivmod(poly.to_rationals(), g)
    assert not r
    return IntPolynomial.from_rationals(q).primitive()


def is_squarefree(poly: IntPolynomial) -> bool:
    if poly.degree <= 1:
        return True
    return len(qgcd(poly.to_rationals(), poly.derivative().to_rationals())) <= 1


def shares_factor_with_reciprocal(poly: IntPolynomial) -> bool:
    """True when f and x^deg f(1/x) have a common non-constant factor."""
    if poly.degree < 1:
        return False
    g = qgcd(poly.to_rationals(), poly.reciprocal().to_rationals())
    return len(g) > 1


def is_irreducible(poly: IntPolynomial) -> bool:
    """Exact irreducibility over Q."""
    if poly.degree <= 0:
        return False
    if poly.degree == 1:
        return True
    if not is_squarefree(poly):
        return False
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(poly.coeffs)), x, domain="ZZ").is_irreducible


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def orders_with_phi(d: int) -> list:
    """All n >= 1 with phi(n) == d.  phi(n) >= sqrt(n/2) bounds the search."""
    return [n for n in range(1, 2 * d * d + 3) if euler_phi(n) == d]


def is_cyclotomic(poly: IntPolynomial) -> bool:
    """True when ``poly`` (up to sign) is a cyclotomic polynomial Phi_n."""
    poly = poly.primitive()
    if not poly.is_monic() or poly.degree < 1:
        return False
    for n in orders_with_phi(poly.degree):
        xn = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
        if not qdivmod(xn, poly.to_rationals())[1]:
            return True
    return False
