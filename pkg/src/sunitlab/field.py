"""Exact arithmetic in a number field K = Q(theta).

Elements are stored in the power basis 1, theta, ..., theta^(n-1) with
rational coefficients, reduced modulo the defining polynomial, so equality is
plain tuple equality.  Galois automorphisms are supplied by the caller as the
images of theta and verified exactly.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import (
    DivisionByZero,
    FieldMismatch,
    GaloisDataMissing,
    InvalidGaloisData,
    ReducibleDefiningPolynomial,
)
from .polynomials import IntPolynomial, is_irreducible, qdivmod, qstrip

log = logging.getLogger(__name__)


def _as_fraction_tuple(values, n):
    values = [Fraction(v) for v in values]
    if len(values) > n:
        if any(values[n:]):
            raise ValueError(f"coefficient vector longer than field degree {n}")
        values = values[:n]
    return tuple(values + [Fraction(0)] * (n - len(values)))


@dataclass(frozen=True, eq=False)
class NumberField:
    """A number field given by an irreducible integer polynomial.

    ``galois_maps`` lists the images of theta as power-basis coefficient
    vectors.  When present they are checked to form the full automorphism
    group.  ``embedding`` picks which complex root of the defining polynomial
    theta denotes (index into the sorted root list, default the last one).
    """

    defining_poly: IntPolynomial
    galois_maps: Optional[tuple] = None
    embedding: Optional[int] = None
    label: str = ""
    _reduction: tuple = dc_field(default=(), repr=False)

    def __post_init__(self):
        poly = self.defining_poly
        if not isinstance(poly, IntPolynomial):
            poly = IntPolynomial.from_rationals(poly)
        poly = poly.primitive()
        object.__setattr__(self, "defining_poly", poly)
        if poly.degree < 1:
            raise ReducibleDefiningPolynomial("defining polynomial must have degree >= 1")
        if not is_irreducible(poly):
            raise ReducibleDefiningPolynomial(f"{poly} is reducible over Q")
        n = poly.degree
        # theta^k for k = n .. 2n-2 in the power basis
        monic = poly.monic_rationals()
        red = []
        cur = [-c for c in monic[:-1]]
        for _ in range(max(n - 1, 1)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [c - top * m for c, m in zip(cur, monic[:-1])]
        object.__setattr__(self, "_reduction", tuple(red))
        if self.galois_maps is not None:
            maps = tuple(_as_fraction_tuple(g, n) for g in self.galois_maps)
            object.__setattr__(self, "galois_maps", maps)
            verify_galois_group(self)

    @classmethod
    def quadratic(cls, poly, **kw) -> "NumberField":
        """Quadratic field with its Galois group filled in (theta -> -b/a - theta)."""
        if isinstance(poly, str):
            poly = IntPolynomial.parse(poly)
        elif not isinstance(poly, IntPolynomial):
            poly = IntPolynomial.from_rationals(poly)
        if poly.degree != 2:
            raise ValueError("quadratic() needs a degree-2 polynomial")
        c, b, a = poly.coeffs
        maps = ((0, 1), (Fraction(-b, a), -1))
        return cls(poly, galois_maps=maps, **kw)

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    def key(self):
        return (self.defining_poly.coeffs, self.galois_maps, self.embedding)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"NumberField({self.defining_poly}{', ' + self.label if self.label else ''})"

    def __call__(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        return FieldElement(self, coeffs)

    @property
    def theta(self) -> "FieldElement":
        if self.degree == 1:
            return self([-Fraction(self.defining_poly.coeffs[0], self.defining_poly.coeffs[1])])
        return self([0, 1])

    def one(self):
        return self([1])

    def zero(self):
        return self([0])

    @property
    def has_galois(self) -> bool:
        return self.galois_maps is not None


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Sequence):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _as_fraction_tuple(coeffs, field.degree))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.coeffs))

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [other])
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.field.degree
        if other.is_rational():
            c = other.coeffs[0]
            return FieldElement(self.field, [a * c for a in self.coeffs])
        if self.is_rational():
            c = self.coeffs[0]
            return FieldElement(self.field, [b * c for b in other.coeffs])
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = prod[:n]
        for k, c in enumerate(prod[n:]):
            if c:
                for j, r in enumerate(self.field._reduction[k]):
                    out[j] += c * r
        return FieldElement(self.field, out)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero field element")
        if self.is_rational():
            return FieldElement(self.field, [1 / self.coeffs[0]])
        return FieldElement(self.field, _inverse_mod(self.coeffs, self.field.defining_poly))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.field.one()
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _inverse_mod(coeffs, poly: IntPolynomial):
    """Inverse of a(x) modulo f(x) by the extended Euclidean algorithm over Q."""
    r0, r1 = poly.to_rationals(), qstrip(list(coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub_mul(s0, q, s1)
    # r1 is a nonzero constant since f is irreducible and a != 0 mod f
    c = r1[0]
    return [x / c for x in s1]


def _qsub_mul(a, q, b):
    prod = [Fraction(0)] * (len(q) + len(b) - 1 if q and b else 0)
    for i, x in enumerate(q):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    n = max(len(a), len(prod))
    return qstrip((a[k] if k < len(a) else 0) - (prod[k] if k < len(prod) else 0)
                  for k in range(n))


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# minimal polynomials


@lru_cache(maxsize=65536)
def minimal_polynomial(a: FieldElement) -> IntPolynomial:
    """Primitive integer minimal polynomial of ``a`` over Q.

    Finds the first linear dependency among 1, a, a^2, ... by incremental
    Gaussian elimination over Q.
    """
    if a.is_rational():
        return IntPolynomial.from_rationals([-a.coeffs[0], 1]).primitive()
    n = a.field.degree
    # each basis row: (vector, combination of powers producing it)
    rows: list[tuple[list, dict]] = []
    pivots: list[int] = []
    power = a.field.one()
    for k in range(n + 1):
        vec = list(power.coeffs)
        combo = {k: Fraction(1)}
        for (rvec, rcombo), piv in zip(rows, pivots):
            if vec[piv]:
                f = vec[piv] / rvec[piv]
                vec = [x - f * y for x, y in zip(vec, rvec)]
                for key, val in rcombo.items():
                    combo[key] = combo.get(key, Fraction(0)) - f * val
        nz = next((i for i, x in enumerate(vec) if x), None)
        if nz is None:
            coeffs = [combo.get(i, Fraction(0)) for i in range(k + 1)]
            return IntPolynomial.from_rationals(coeffs).primitive()
        rows.append((vec, combo))
        pivots.append(nz)
        power = power * a
    raise AssertionError("no linear dependency found among n+1 powers")


def evaluate_poly(poly: Sequence, a: FieldElement) -> FieldElement:
    acc = a.field.zero()
    for c in reversed(list(poly)):
        acc = acc * a + c
    return acc


# ---------------------------------------------------------------------------
# Galois maps


def _require_galois(field: NumberField):
    if field.galois_maps is None:
        raise GaloisDataMissing(f"{field!r} declares no Galois maps")


@lru_cache(maxsize=4096)
def _image_powers(field: NumberField, index: int) -> tuple:
    g = FieldElement(field, field.galois_maps[index])
    powers = [field.one()]
    for _ in range(field.degree - 1):
        powers.append(powers[-1] * g)
    return tuple(powers)


def apply_galois(sigma_index: int, a: FieldElement) -> FieldElement:
    field = a.field
    _require_galois(field)
    if not 0 <= sigma_index < len(field.galois_maps):
        raise IndexError(f"Galois map index {sigma_index} out of range")
    if a.is_rational():
        return a
    powers = _image_powers(field, sigma_index)
    out = [Fraction(0)] * field.degree
    for c, p in zip(a.coeffs, powers):
        if c:
            for j, x in enumerate(p.coeffs):
                out[j] += c * x
    return FieldElement(field, out)


def galois_images(a: FieldElement) -> list:
    _require_galois(a.field)
    return [apply_galois(i, a) for i in range(len(a.field.galois_maps))]


def verify_galois_group(field: NumberField) -> tuple:
    """Check the declared maps form Gal(K/Q); return the composition table.

    ``table[i][j]`` is the index of sigma_i o sigma_j.
    """
    _require_galois(field)
    maps = [FieldElement(field, g) for g in field.galois_maps]
    poly = field.defining_poly.to_rationals()
    for idx, g in enumerate(maps):
        if not evaluate_poly(poly, g).is_zero():
            raise InvalidGaloisData(
                f"map {idx} (theta -> {g}) does not send theta to a root of {field.defining_poly}")
    seen = {}
    for idx, g in enumerate(maps):
        if g in seen:
            raise InvalidGaloisData(f"map {idx} duplicates map {seen[g]}")
        seen[g] = idx
    if len(maps) != field.degree:
        raise InvalidGaloisData(
            f"{len(maps)} maps declared but the field has degree {field.degree}")
    table = []
    for i, gi in enumerate(maps):
        row = []
        gi_powers = [field.one()]
        for _ in range(field.degree - 1):
            gi_powers.append(gi_powers[-1] * gi)
        for j, gj in enumerate(maps):
            # sigma_i(sigma_j(theta)) = g_j evaluated at g_i
            img = field.zero()
            for c, p in zip(gj.coeffs, gi_powers):
                if c:
                    img = img + p * c
            if img not in seen:
                raise InvalidGaloisData(f"composition of map {i} with map {j} leaves the set")
            row.append(seen[img])
        table.append(tuple(row))
    return tuple(table)


def identity_index(field: NumberField) -> int:
    _require_galois(field)
    return list(field.galois_maps).index(field.theta.coeffs)
