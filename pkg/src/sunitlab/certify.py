"""Certified complex arithmetic and root isolation.

A :class:`CertifiedValue` is a closed disk (center, radius) in C with exact
rational center and radius.  Every operation returns a disk that contains the
image of every point of its inputs; inexact centers are rounded to a dyadic
grid of ``bits`` fractional bits and the rounding error is pushed into the
radius.  Values with radius zero stay exact rationals.

Root isolation takes approximate roots from :func:`mpmath.polyroots` and
certifies them with Smith's inclusion theorem: for approximations z_i of the
roots of a squarefree f of degree n, the disks |z - z_i| <= n |f(z_i)| /
|lc(f) prod_{j != i} (z_i - z_j)| contain all roots, and pairwise disjoint
disks contain exactly one root each.  The test runs in exact Gaussian-integer
arithmetic, so mpmath is only ever trusted as a source of guesses.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import mpmath

from .errors import BadEmbedding, UndecidableDivision
from .polynomials import IntPolynomial, squarefree_part

DEFAULT_START_BITS = 64
DEFAULT_MAX_BITS = 4096
_RADIUS_BITS = 40


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE

    def __bool__(self):
        raise TypeError("Verdict has no truth value; compare against Verdict.TRUE")

    def __invert__(self):
        if self is Verdict.UNDECIDED:
            return self
        return Verdict.FALSE if self is Verdict.TRUE else Verdict.TRUE


def all_of(verdicts) -> Verdict:
    """Three-valued conjunction."""
    out = Verdict.TRUE
    for v in verdicts:
        if v is Verdict.FALSE:
            return v
        if v is Verdict.UNDECIDED:
            out = v
    return out


def any_of(verdicts) -> Verdict:
    out = Verdict.FALSE
    for v in verdicts:
        if v is Verdict.TRUE:
            return v
        if v is Verdict.UNDECIDED:
            out = v
    return out


# ---------------------------------------------------------------------------
# dyadic helpers


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _round_up(r: Fraction) -> Fraction:
    """Dyadic upper bound of r >= 0 with about _RADIUS_BITS significant bits."""
    if r == 0:
        return r
    e = r.numerator.bit_length() - r.denominator.bit_length()
    shift = _RADIUS_BITS - e
    if shift >= 0:
        return Fraction(-((-r.numerator << shift) // r.denominator), 1 << shift)
    scale = 1 << -shift
    return Fraction(-((-r.numerator) // (r.denominator * scale)) * scale)


def _isqrt_ceil(n: int) -> int:
    s = math.isqrt(n)
    return s if s * s == n else s + 1


def sqrt_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """(lo, hi) dyadic bounds on sqrt(x) with absolute gap <= 2^-bits."""
    if x < 0:
        raise ValueError("sqrt of negative")
    scale = 1 << (2 * bits)
    num = x.numerator * scale
    lo = math.isqrt(num // x.denominator)
    hi = _isqrt_ceil(-(-num // x.denominator))
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def _mag_bits(x2: Fraction) -> int:
    """Bits needed for ~_RADIUS_BITS relative accuracy in sqrt(x2)."""
    if x2 == 0:
        return 0
    e = (x2.numerator.bit_length() - x2.denominator.bit_length()) // 2
    return max(_RADIUS_BITS - e, 0)


def _mag_hi(re: Fraction, im: Fraction) -> Fraction:
    x2 = re * re + im * im
    if x2 == 0:
        return x2
    return sqrt_bounds(x2, _mag_bits(x2))[1]


def _mag_lo(re: Fraction, im: Fraction) -> Fraction:
    x2 = re * re + im * im
    if x2 == 0:
        return x2
    return sqrt_bounds(x2, _mag_bits(x2))[0]


def iroot_floor(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0."""
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _root_bounds(y: Fraction, k: int, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic bounds on y^(1/k), y >= 0, absolute gap about 2^-bits."""
    if k == 1:
        return y, y
    scale = 1 << (k * bits)
    num = y.numerator * scale
    lo = iroot_floor(num // y.denominator, k)
    hi_n = -(-num // y.denominator)
    hi = iroot_floor(hi_n, k)
    if hi ** k < hi_n:
        hi += 1
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def _exact_root(y: Fraction, k: int) -> Optional[Fraction]:
    if y < 0:
        return None
    a = iroot_floor(y.numerator, k)
    b = iroot_floor(y.denominator, k)
    if a ** k == y.numerator and b ** k == y.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------------------
# certified values


@dataclass(frozen=True)
class CertifiedValue:
    """Closed disk |z - (re + i im)| <= rad."""

    re: Fraction
    im: Fraction = Fraction(0)
    rad: Fraction = Fraction(0)
    bits: int = DEFAULT_START_BITS

    @classmethod
    def exact(cls, value, bits: int = DEFAULT_START_BITS) -> "CertifiedValue":
        if isinstance(value, complex):
            raise TypeError("use CertifiedValue(re, im) for complex centers")
        return cls(Fraction(value), Fraction(0), Fraction(0), bits)

    @classmethod
    def real_interval(cls, lo: Fraction, hi: Fraction, bits: int) -> "CertifiedValue":
        if lo > hi:
            raise ValueError("empty interval")
        if lo == hi:
            return cls(Fraction(lo), Fraction(0), Fraction(0), bits)
        mid = _floor_dyadic((lo + hi) / 2, bits + 2)
        rad = _round_up(max(hi - mid, mid - lo))
        return cls(mid, Fraction(0), rad, bits)

    @property
    def is_exact(self) -> bool:
        return self.rad == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def lo(self) -> Fraction:
        self._need_real()
        return self.re - self.rad

    @property
    def hi(self) -> Fraction:
        self._need_real()
        return self.re + self.rad

    def _need_real(self):
        if self.im != 0:
            raise ValueError("real bounds requested from a non-real enclosure")

    def contains(self, re, im=0) -> bool:
        dr, di = Fraction(re) - self.re, Fraction(im) - self.im
        return dr * dr + di * di <= self.rad * self.rad

    def overlaps(self, other: "CertifiedValue") -> bool:
        dr, di = self.re - other.re, self.im - other.im
        s = self.rad + other.rad
        return dr * dr + di * di <= s * s

    def mag_hi(self) -> Fraction:
        """Upper bound on |z| over the disk."""
        return _mag_hi(self.re, self.im) + self.rad

    def mag_lo(self) -> Fraction:
        """Lower bound on |z| over the disk (clamped at 0)."""
        return max(_mag_lo(self.re, self.im) - self.rad, Fraction(0))

    def excludes_zero(self) -> bool:
        return self.re * self.re + self.im * self.im > self.rad * self.rad

    def with_bits(self, bits: int) -> "CertifiedValue":
        return CertifiedValue(self.re, self.im, self.rad, bits)

    # operators delegate to interval_arith
    def __add__(self, other):
        return add(self, _lift(other, self.bits))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(other, self.bits))

    def __rsub__(self, other):
        return sub(_lift(other, self.bits), self)

    def __mul__(self, other):
        return mul(self, _lift(other, self.bits))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _lift(other, self.bits))

    def __rtruediv__(self, other):
        return div(_lift(other, self.bits), self)

    def __neg__(self):
        return CertifiedValue(-self.re, -self.im, self.rad, self.bits)

    def __abs__(self):
        return absval(self)

    def __pow__(self, e):
        return pow_rational(self, Fraction(e))

    def describe(self, digits: int = 20) -> dict:
        """Stable decimal rendering for reports."""
        out = {"mid": _decimal(self.re, digits)}
        if self.im:
            out["mid_im"] = _decimal(self.im, digits)
        out["rad"] = _sci_up(self.rad)
        return out

    def __float__(self):
        self._need_real()
        return float(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        c = f"{float(self.re):.12g}" + (f"{float(self.im):+.12g}j" if self.im else "")
        return f"CertifiedValue({c} ± {float(self.rad):.3g}, bits={self.bits})"


def _lift(x, bits) -> CertifiedValue:
    if isinstance(x, CertifiedValue):
        return x
    if isinstance(x, (int, Fraction)):
        return CertifiedValue(Fraction(x), Fraction(0), Fraction(0), bits)
    raise TypeError(f"cannot lift {type(x).__name__} into CertifiedValue")


def _decimal(x: Fraction, digits: int) -> str:
    """Round-half-even decimal with ``digits`` places after the point."""
    scaled = x * 10 ** digits
    q = round(scaled)
    sign = "-" if q < 0 else ""
    q = abs(q)
    s = str(q).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"


def _sci_up(r: Fraction) -> str:
    """Scientific-notation upper bound on r with 3 significant digits."""
    if r == 0:
        return "0"
    e = len(str(r.numerator)) - len(str(r.denominator))
    for exp in (e - 1, e, e + 1):
        mant = r / Fraction(10) ** exp
        if 1 <= mant < 10:
            break
    m = math.ceil(mant * 100)
    if m >= 1000:
        m, exp = 100, exp + 1
    return f"{m // 100}.{m % 100:02d}e{exp:+d}"


def _finish(re, im, rad, bits) -> CertifiedValue:
    """Round an inexact center to the dyadic grid and widen the radius."""
    if rad == 0:
        return CertifiedValue(re, im, rad, bits)
    r_re = _floor_dyadic(re, bits)
    r_im = _floor_dyadic(im, bits)
    rad = _round_up(rad + (re - r_re) + (im - r_im))
    return CertifiedValue(r_re, r_im, rad, bits)


def add(a: CertifiedValue, b: CertifiedValue) -> CertifiedValue:
    bits = max(a.bits, b.bits)
    return _finish(a.re + b.re, a.im + b.im, a.rad + b.rad, bits)


def sub(a: CertifiedValue, b: CertifiedValue) -> CertifiedValue:
    bits = max(a.bits, b.bits)
    return _finish(a.re - b.re, a.im - b.im, a.rad + b.rad, bits)


def mul(a: CertifiedValue, b: CertifiedValue) -> CertifiedValue:
    bits = max(a.bits, b.bits)
    re = a.re * b.re - a.im * b.im
    im = a.re * b.im + a.im * b.re
    rad = Fraction(0)
    if a.rad or b.rad:
        rad = _mag_hi(a.re, a.im) * b.rad + _mag_hi(b.re, b.im) * a.rad + a.rad * b.rad
    return _finish(re, im, rad, bits)


def inverse(b: CertifiedValue) -> CertifiedValue:
    if b.rad == 0:
        n2 = b.re * b.re + b.im * b.im
        if n2 == 0:
            raise UndecidableDivision("division by exact zero")
        return CertifiedValue(b.re / n2, -b.im / n2, Fraction(0), b.bits)
    m = _mag_lo(b.re, b.im)
    if m <= b.rad:
        raise UndecidableDivision("divisor enclosure contains zero")
    n2 = b.re * b.re + b.im * b.im
    # |1/z - 1/c| = |c - z| / (|z||c|) <= r / ((|c| - r)|c|)
    rad = b.rad / ((m - b.rad) * m)
    return _finish(b.re / n2, -b.im / n2, rad, b.bits)


def div(a: CertifiedValue, b: CertifiedValue) -> CertifiedValue:
    return mul(a, inverse(b))


def absval(a: CertifiedValue) -> CertifiedValue:
    if a.im == 0:
        lo, hi = a.re - a.rad, a.re + a.rad
        if lo >= 0:
            return a
        if hi <= 0:
            return -a
        return CertifiedValue.real_interval(Fraction(0), max(-lo, hi), a.bits)
    if a.rad == 0:
        n2 = a.re * a.re + a.im * a.im
        root = _exact_root(n2, 2)
        if root is not None:
            return CertifiedValue(root, Fraction(0), Fraction(0), a.bits)
        lo, hi = sqrt_bounds(n2, a.bits + 2)
        return CertifiedValue.real_interval(lo, hi, a.bits)
    lo, hi = sqrt_bounds(a.re * a.re + a.im * a.im, a.bits + 2)
    return CertifiedValue.real_interval(max(lo - a.rad, Fraction(0)), hi + a.rad, a.bits)


def _int_pow(a: CertifiedValue, k: int) -> CertifiedValue:
    base = a if k >= 0 else inverse(a)
    k = abs(k)
    result = CertifiedValue(Fraction(1), Fraction(0), Fraction(0), a.bits)
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def pow_rational(a: CertifiedValue, e: Fraction) -> CertifiedValue:
    """a^e.  Integer e works on any disk; other e need a real enclosure >= 0."""
    e = Fraction(e)
    if e.denominator == 1:
        return _int_pow(a, e.numerator)
    if a.im != 0 or a.re - a.rad < 0:
        raise ValueError("fractional power needs a nonnegative real enclosure")
    p, q = abs(e.numerator), e.denominator
    if a.rad == 0:
        root = _exact_root(a.re ** p, q)
        if root is not None:
            if e < 0:
                if root == 0:
                    raise UndecidableDivision("negative power of zero")
                root = 1 / root
            return CertifiedValue(root, Fraction(0), Fraction(0), a.bits)
    lo_in, hi_in = a.re - a.rad, a.re + a.rad
    guard = a.bits + 8
    lo, _ = _root_bounds(lo_in ** p, q, guard)
    _, hi = _root_bounds(hi_in ** p, q, guard)
    if e < 0:
        if lo <= 0:
            raise UndecidableDivision("negative power of an enclosure touching zero")
        lo, hi = 1 / hi, 1 / lo
    return CertifiedValue.real_interval(lo, hi, a.bits)


def interval_arith(a: CertifiedValue, b, op: str) -> CertifiedValue:
    if op == "add":
        return add(a, b)
    if op == "sub":
        return sub(a, b)
    if op == "mul":
        return mul(a, b)
    if op == "div":
        return div(a, b)
    if op == "abs":
        return absval(a)
    if op == "pow_rational":
        return pow_rational(a, b)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# root isolation


@dataclass(frozen=True)
class RootSystem:
    poly: IntPolynomial
    roots: tuple
    real: tuple

    def __len__(self):
        return len(self.roots)


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    man, exp = (-int(man) if sign else int(man)), int(exp)
    return Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)


def _approx_roots(poly: IntPolynomial, prec: int, maxsteps: int):
    with mpmath.workprec(prec):
        return mpmath.polyroots(list(reversed(poly.coeffs)), maxsteps=maxsteps,
                                extraprec=prec, cleanup=True)


def _gauss_eval(coeffs, zr: int, zi: int, shift: int):
    """2^(shift*n) f(z) for z = (zr + i zi) / 2^shift, in Gaussian integers."""
    n = len(coeffs) - 1
    ar, ai = 0, 0
    for k in range(n, -1, -1):
        ar, ai = ar * zr - ai * zi, ar * zi + ai * zr
        ar += coeffs[k] << (shift * (n - k))
    return ar, ai


def _smith_certify(poly: IntPolynomial, centers, shift: int):
    """Exact Smith radii for dyadic centers (Gaussian integers over 2^shift)."""
    n = poly.degree
    lc2 = poly.leading ** 2
    radii = []
    for i, (zr, zi) in enumerate(centers):
        fr, fi = _gauss_eval(poly.coeffs, zr, zi, shift)
        dr, di = 1, 0
        for j, (wr, wi) in enumerate(centers):
            if j != i:
                ur, ui = zr - wr, zi - wi
                dr, di = dr * ur - di * ui, dr * ui + di * ur
        d2 = dr * dr + di * di
        if d2 == 0:
            return None
        # |w_i|^2 = |F|^2 / (lc^2 |D|^2 4^shift)
        w2 = Fraction(fr * fr + fi * fi, lc2 * d2 << (2 * shift))
        radii.append(_round_up(n * sqrt_upper(w2)))
    return radii


def sqrt_upper(x: Fraction) -> Fraction:
    if x == 0:
        return x
    return sqrt_bounds(x, _mag_bits(x))[1]


def _to_grid(x: Fraction, shift: int) -> int:
    return math.floor(x * (1 << shift))


@lru_cache(maxsize=1024)
def isolate_roots(poly: IntPolynomial, bits: int = DEFAULT_START_BITS) -> RootSystem:
    """Disjoint certified disks around every complex root of the squarefree part.

    Each radius is at most 2^-bits.  Roots are ordered by real part, then
    imaginary part, of their centers; real roots carry an exactly real center.
    """
    if poly.is_zero():
        raise ValueError("zero polynomial has no root system")
    sqf = squarefree_part(poly)
    n = sqf.degree
    if n == 0:
        return RootSystem(poly, (), ())
    if n == 1:
        r = Fraction(-sqf.coeffs[0], sqf.coeffs[1])
        return RootSystem(poly, (CertifiedValue(r, Fraction(0), Fraction(0), bits),), (True,))
    limit = Fraction(1, 1 << bits)
    prec = bits + 32 + 4 * n
    maxsteps = 100 + 20 * n
    for _ in range(16):
        try:
            approx = _approx_roots(sqf, prec, maxsteps)
        except mpmath.libmp.NoConvergence:
            prec, maxsteps = 2 * prec, 2 * maxsteps
            continue
        result = _certify(sqf, approx, prec, limit, bits)
        if result is not None:
            roots, real = result
            return RootSystem(poly, roots, real)
        prec, maxsteps = 2 * prec, 2 * maxsteps
    raise ArithmeticError(f"root isolation failed for {poly}")


def _certify(sqf: IntPolynomial, approx, prec, limit, bits):
    snap = Fraction(1, 1 << (prec // 2))
    reals, upper = [], []
    for z in approx:
        if hasattr(z, "_mpc_"):
            zr, zi = (_raw_to_fraction(part) for part in z._mpc_)
        else:
            zr, zi = _raw_to_fraction(z._mpf_), Fraction(0)
        if abs(zi) < snap:
            reals.append(zr)
        elif zi > 0:
            upper.append((zr, zi))
    if len(reals) + 2 * len(upper) != sqf.degree:
        return None
    pts = [(x, Fraction(0)) for x in reals]
    for x, y in upper:
        pts += [(x, y), (x, -y)]
    pts.sort()
    # round |im| so conjugate centers stay exact mirror images
    grid = [(_to_grid(x, prec), _to_grid(y, prec) if y >= 0 else -_to_grid(-y, prec))
            for x, y in pts]
    radii = _smith_certify(sqf, grid, prec)
    if radii is None or any(r > limit for r in radii):
        return None
    scale = Fraction(1, 1 << prec)
    centers = [(gx * scale, gy * scale) for gx, gy in grid]
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            dx = centers[i][0] - centers[j][0]
            dy = centers[i][1] - centers[j][1]
            s = radii[i] + radii[j]
            if dx * dx + dy * dy <= s * s:
                return None
    real_flags = []
    for (x, y), r in zip(centers, radii):
        if y == 0:
            # disk symmetric about R holding a single root: the root is real
            if sqf(x - r) * sqf(x + r) > 0:
                return None
            real_flags.append(True)
        else:
            if abs(y) <= r:
                return None
            real_flags.append(False)
    roots = tuple(CertifiedValue(x, y, r, bits) for (x, y), r in zip(centers, radii))
    return roots, tuple(real_flags)


# ---------------------------------------------------------------------------
# embeddings


def default_embedding(field) -> int:
    n = len(isolate_roots(field.defining_poly, DEFAULT_START_BITS))
    idx = field.embedding if field.embedding is not None else n - 1
    if not 0 <= idx < n:
        raise BadEmbedding(f"embedding index {idx} out of range for {field!r}")
    return idx


def _horner(coeffs, z: CertifiedValue) -> CertifiedValue:
    acc = CertifiedValue(Fraction(0), Fraction(0), Fraction(0), z.bits)
    for c in reversed(coeffs):
        acc = add(mul(acc, z), CertifiedValue(Fraction(c), Fraction(0), Fraction(0), z.bits))
    return acc


@lru_cache(maxsize=262144)
def embed(a, embedding_index: Optional[int] = None, bits: int = DEFAULT_START_BITS) -> CertifiedValue:
    """Certified value of a field element under one complex embedding."""
    field = a.field
    if embedding_index is None:
        embedding_index = default_embedding(field)
    if a.is_rational():
        return CertifiedValue(a.coeffs[0], Fraction(0), Fraction(0), bits)
    rs = isolate_roots(field.defining_poly, bits + 16 + 2 * field.degree)
    if not 0 <= embedding_index < len(rs):
        raise BadEmbedding(f"embedding index {embedding_index} out of range")
    theta = rs.roots[embedding_index].with_bits(bits + 8)
    val = _horner(a.coeffs, theta)
    return _finish(val.re, val.im, val.rad, bits) if val.rad else val.with_bits(bits)


def embedding_is_real(field, embedding_index: Optional[int] = None) -> bool:
    if embedding_index is None:
        embedding_index = default_embedding(field)
    return isolate_roots(field.defining_poly, DEFAULT_START_BITS).real[embedding_index]


@lru_cache(maxsize=256)
def complex_conjugation_index(field, embedding_index: Optional[int] = None) -> Optional[int]:
    """Index of the Galois map acting as complex conjugation on the embedding.

    Returns None when the field has no Galois data.
    """
    from .field import apply_galois, identity_index

    if not field.has_galois:
        return None
    if embedding_index is None:
        embedding_index = default_embedding(field)
    if embedding_is_real(field, embedding_index):
        return identity_index(field)
    bits = DEFAULT_START_BITS
    while bits <= 1 << 16:
        rs = isolate_roots(field.defining_poly, bits)
        target = rs.roots[embedding_index]
        conj = CertifiedValue(target.re, -target.im, target.rad, bits)
        hits = []
        for k in range(len(field.galois_maps)):
            img = embed(apply_galois(k, field.theta), embedding_index, bits)
            if img.overlaps(conj):
                hits.append(k)
        if len(hits) == 1:
            return hits[0]
        bits *= 2
    raise ArithmeticError("could not identify complex conjugation")


# ---------------------------------------------------------------------------
# decisions


def _compare(cmp: str, values: Sequence[CertifiedValue]) -> Verdict:
    if cmp in ("lt", "gt"):
        a, b = values
        if cmp == "gt":
            a, b = b, a
        if a.hi < b.lo:
            return Verdict.TRUE
        if a.lo >= b.hi:
            return Verdict.FALSE
        return Verdict.UNDECIDED
    if cmp == "in_unit_disk":
        (z,) = values
        if z.mag_hi() < 1:
            return Verdict.TRUE
        if z.mag_lo() >= 1:
            return Verdict.FALSE
        return Verdict.UNDECIDED
    if cmp == "eq_int":
        (x,) = values
        if x.rad == 0:
            return Verdict.of(x.im == 0 and x.re.denominator == 1)
        if x.im != 0 and abs(x.im) > x.rad:
            return Verdict.FALSE
        if math.floor(x.re + x.rad) < math.ceil(x.re - x.rad):
            return Verdict.FALSE
        return Verdict.UNDECIDED
    raise ValueError(f"unknown comparison {cmp!r}")


compare = _compare


def decide(cmp: str, refine: Callable[[int], Sequence[CertifiedValue]],
           max_bits: int = DEFAULT_MAX_BITS, exact: Optional[Callable[[], bool]] = None,
           start_bits: int = DEFAULT_START_BITS) -> Verdict:
    """Prove ``cmp`` on the values produced by ``refine(bits)``.

    Precision doubles from ``start_bits`` up to ``max_bits``.  If the intervals
    never separate, ``exact`` (when given) settles the question; otherwise the
    answer is ``Verdict.UNDECIDED``.
    """
    bits = start_bits
    while True:
        values = refine(bits)
        if isinstance(values, CertifiedValue):
            values = (values,)
        verdict = _compare(cmp, values)
        if verdict is not Verdict.UNDECIDED:
            return verdict
        if bits >= max_bits:
            break
        bits = min(2 * bits, max_bits)
    if exact is not None:
        return Verdict.of(exact())
    return Verdict.UNDECIDED
