"""Roots of unity, Pisot numbers, pseudo-Pisot tuples and the ~ relation.

Conjugates are computed inside the declared Galois field K with the verified
automorphisms.  Every strict modulus comparison first checks the exact
boundary case |b| = 1 (b times its complex conjugate equals 1, where complex
conjugation is the Galois map fixing the embedding's conjugate root), so the
interval refinement that follows always terminates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .certify import (
    DEFAULT_MAX_BITS,
    DEFAULT_START_BITS,
    CertifiedValue,
    Verdict,
    all_of,
    complex_conjugation_index,
    decide,
    embed,
    isolate_roots,
)
from .errors import ConjugatesOutsideField, PartitionRefused, PrecisionExhausted
from .field import FieldElement, apply_galois, galois_images, minimal_polynomial
from .polynomials import (
    IntPolynomial,
    is_irreducible,
    orders_with_phi,
    shares_factor_with_reciprocal,
)


@dataclass(frozen=True)
class ConjugateSet:
    element: FieldElement
    conjugates: tuple
    external_flag: bool


@lru_cache(maxsize=65536)
def conjugate_set(a: FieldElement) -> ConjugateSet:
    seen = {}
    for img in galois_images(a):
        seen.setdefault(img, None)
    conj = tuple(seen)
    return ConjugateSet(a, conj, len(conj) < minimal_polynomial(a).degree)


def conjugates_in_field(a: FieldElement) -> tuple:
    cs = conjugate_set(a)
    if cs.external_flag:
        raise ConjugatesOutsideField(
            f"{a} has degree {minimal_polynomial(a).degree} but only "
            f"{len(cs.conjugates)} conjugates in {a.field!r}")
    return cs.conjugates


# ---------------------------------------------------------------------------
# roots of unity


@lru_cache(maxsize=65536)
def root_of_unity_order(a: FieldElement) -> Optional[int]:
    """Multiplicative order of ``a`` if it is a root of unity, else None."""
    if a.is_zero():
        return None
    if a.is_rational():
        x = a.rational_value()
        return 1 if x == 1 else 2 if x == -1 else None
    poly = minimal_polynomial(a)
    if poly.leading != 1 or not shares_factor_with_reciprocal(poly):
        return None
    # Kronecker: a root provably outside the closed unit disk rules it out
    rs = isolate_roots(poly, DEFAULT_START_BITS)
    if any(r.mag_lo() > 1 for r in rs.roots):
        return None
    for n in orders_with_phi(poly.degree):
        if a ** n == 1:
            return n
    return None


def is_root_of_unity(a: FieldElement) -> bool:
    return root_of_unity_order(a) is not None


# ---------------------------------------------------------------------------
# modulus against 1


@lru_cache(maxsize=65536)
def modulus_vs_one(b: FieldElement, max_bits: int = DEFAULT_MAX_BITS) -> Optional[int]:
    """Sign of |b| - 1 at the field's embedding (-1, 0, 1), or None if undecided."""
    if b.is_rational():
        x = abs(b.rational_value())
        return (x > 1) - (x < 1)
    tau = complex_conjugation_index(b.field) if b.field.has_galois else None
    if tau is not None:
        norm2 = b * apply_galois(tau, b)
        if norm2 == 1:
            return 0
        if norm2.is_rational():
            x = norm2.rational_value()
            return (x > 1) - (x < 1)
    one = CertifiedValue.exact(1)
    lt = decide("in_unit_disk", lambda bits: (embed(b, None, bits),), max_bits)
    if lt is Verdict.TRUE:
        return -1
    gt = decide("gt", lambda bits: (_abs_embed(b, bits), one), max_bits)
    if gt is Verdict.TRUE:
        return 1
    return None


def _abs_embed(b, bits):
    return abs(embed(b, None, bits))


def modulus_lt_one(b: FieldElement, max_bits: int = DEFAULT_MAX_BITS) -> Verdict:
    s = modulus_vs_one(b, max_bits)
    return Verdict.UNDECIDED if s is None else Verdict.of(s < 0)


def modulus_gt_one(b: FieldElement, max_bits: int = DEFAULT_MAX_BITS) -> Verdict:
    s = modulus_vs_one(b, max_bits)
    return Verdict.UNDECIDED if s is None else Verdict.of(s > 0)


def modulus_ge_one(b: FieldElement, max_bits: int = DEFAULT_MAX_BITS) -> Verdict:
    s = modulus_vs_one(b, max_bits)
    return Verdict.UNDECIDED if s is None else Verdict.of(s >= 0)


# ---------------------------------------------------------------------------
# Pisot numbers


def _outside_profile(poly: IntPolynomial, max_bits: int):
    """For each root: True if |r| > 1, False if |r| < 1 (no unit-circle roots)."""
    bits = DEFAULT_START_BITS
    while True:
        rs = isolate_roots(poly, bits)
        flags = []
        for r in rs.roots:
            if r.mag_hi() < 1:
                flags.append(False)
            elif r.mag_lo() > 1:
                flags.append(True)
            else:
                flags.append(None)
        if None not in flags:
            return rs, flags
        if bits >= max_bits:
            raise PrecisionExhausted(f"cannot separate the roots of {poly} from |z| = 1")
        bits = min(2 * bits, max_bits)


def is_pisot_polynomial(poly: IntPolynomial, max_bits: int = DEFAULT_MAX_BITS) -> bool:
    """True iff ``poly`` is the minimal polynomial of a Pisot number."""
    poly = poly.primitive()
    if poly.leading != 1 or not is_irreducible(poly):
        return False
    if poly.degree == 1:
        return -poly.coeffs[0] > 1
    # an irreducible f with a root on |z| = 1 is self-reciprocal
    if shares_factor_with_reciprocal(poly):
        return False
    rs, outside = _outside_profile(poly, max_bits)
    big = [i for i, flag in enumerate(outside) if flag]
    if len(big) != 1:
        return False
    root = rs.roots[big[0]]
    return rs.real[big[0]] and root.re > 0


def is_pisot(a: FieldElement, max_bits: int = DEFAULT_MAX_BITS) -> bool:
    """True iff the embedded value of ``a`` is a Pisot number."""
    poly = minimal_polynomial(a)
    if not is_pisot_polynomial(poly, max_bits):
        return False
    if a.is_rational():
        return True
    # the Pisot root is the only conjugate of modulus > 1
    s = modulus_vs_one(a, max_bits)
    if s is None:
        raise PrecisionExhausted(f"cannot compare |{a}| with 1")
    return s > 0


# ---------------------------------------------------------------------------
# pseudo-Pisot tuples


@dataclass(frozen=True)
class PseudoPisotResult:
    verdict: Verdict
    witness: Optional[str]
    offender: Optional[FieldElement]
    P: tuple
    total: Optional[FieldElement]


WITNESS_DISTINCT = "not pairwise distinct"
WITNESS_SUM = "sum not in Z"
WITNESS_MODULUS = "|β| ≥ 1"


def outside_conjugates(betas: Sequence[FieldElement]) -> tuple:
    """P: conjugates of any beta_i that are not themselves among the betas."""
    members = set(betas)
    out = {}
    for b in betas:
        for c in conjugates_in_field(b):
            if c not in members:
                out.setdefault(c, None)
    return tuple(out)


def pseudo_pisot_tuple(betas: Sequence[FieldElement],
                       max_bits: int = DEFAULT_MAX_BITS) -> PseudoPisotResult:
    betas = tuple(betas)
    if not betas:
        raise ValueError("pseudo-Pisot test needs a nonempty tuple")
    if len(set(betas)) != len(betas):
        dup = next(b for i, b in enumerate(betas) if b in betas[:i])
        return PseudoPisotResult(Verdict.FALSE, WITNESS_DISTINCT, dup, (), None)
    P = outside_conjugates(betas)
    total = sum(betas, betas[0].field.zero())
    total = sum(P, total)
    if not (total.is_rational() and total.rational_value().denominator == 1):
        return PseudoPisotResult(Verdict.FALSE, WITNESS_SUM, None, P, total)
    verdict = Verdict.TRUE
    for beta in P:
        v = modulus_lt_one(beta, max_bits)
        if v is Verdict.FALSE:
            return PseudoPisotResult(Verdict.FALSE, WITNESS_MODULUS, beta, P, total)
        if v is Verdict.UNDECIDED:
            verdict = v
    return PseudoPisotResult(verdict, None, None, P, total)


# ---------------------------------------------------------------------------
# the relation ~ and properties (P1), (P2)


def equiv_witness(a: FieldElement, b: FieldElement) -> Optional[int]:
    """Index of a Galois map sigma with a / sigma(b) in mu, or None."""
    for k, img in enumerate(galois_images(b)):
        if is_root_of_unity(a / img):
            return k
    return None


def equiv_related(a: FieldElement, b: FieldElement) -> bool:
    return equiv_witness(a, b) is not None


@dataclass(frozen=True)
class P1P2Result:
    p1: bool
    p2: bool
    p1_witness: Optional[tuple] = None  # (i, rho)
    p2_witness: Optional[tuple] = None  # (i, j)


def check_p1_p2(betas: Sequence[FieldElement]) -> P1P2Result:
    betas = tuple(betas)
    conj = [conjugates_in_field(b) for b in betas]
    p1_witness = None
    for i, b in enumerate(betas):
        for rho in conj[i]:
            if rho != b and is_root_of_unity(rho / b):
                p1_witness = (i, rho)
                break
        if p1_witness:
            break
    p2_witness = None
    for i in range(len(betas)):
        for j in range(i + 1, len(betas)):
            if equiv_related(betas[i], betas[j]) and betas[j] not in conj[i]:
                p2_witness = (i, j)
                break
        if p2_witness:
            break
    return P1P2Result(p1_witness is None, p2_witness is None, p1_witness, p2_witness)


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple
    h: int
    e: tuple
    d_counts: tuple


def partition_classes(betas: Sequence[FieldElement]) -> ClassPartition:
    """Group tuple indices into ~-classes; classes ordered by smallest member."""
    betas = tuple(betas)
    res = check_p1_p2(betas)
    if not res.p2:
        i, j = res.p2_witness
        raise PartitionRefused(f"(P2) fails: entries {i} and {j} are related but not conjugate")
    classes: list[list[int]] = []
    for idx, b in enumerate(betas):
        for cls in classes:
            if equiv_related(betas[cls[0]], b):
                cls.append(idx)
                break
        else:
            classes.append([idx])
    d_counts = tuple(len(conjugates_in_field(betas[c[0]])) for c in classes)
    return ClassPartition(tuple(tuple(c) for c in classes), len(classes),
                          tuple(len(c) for c in classes), d_counts)
