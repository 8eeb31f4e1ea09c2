"""Quick invariant checks runnable from an installed package (no pytest).

Each check draws from a fixed seed, so a failure is reproducible.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

from ..certify import embed, pow_rational
from ..field import apply_galois, evaluate_poly, minimal_polynomial
from ..gamma import (
    GroupDesc,
    TupleFamilyFilter,
    enumerate_tuples,
    ratio_filter,
    shard_prefixes,
    tuple_count,
)
from ..heights import rational_abs, support_places, weil_height
from ..polynomials import IntPolynomial
from .config import build_field
from .mahler import golden_ratio_check, mahler_scan

SEED = 20240917


def _fields():
    sqrt2 = build_field(IntPolynomial.parse("x^2 - 2"))
    golden = build_field(IntPolynomial.parse("x^2 - x - 1"))
    z5 = build_field(IntPolynomial.parse("x^4 + x^3 + x^2 + x + 1"),
                     maps=((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)))
    return sqrt2, golden, z5


def _random_element(rng, field, span=5):
    return field([Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(field.degree)])


def check_ring_axioms(rng) -> str:
    for field in _fields():
        for _ in range(20):
            a, b, c = (_random_element(rng, field) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            if not a.is_zero():
                assert a * a.inverse() == 1
    return "60 triples"


def check_minpoly(rng) -> str:
    for field in _fields():
        for _ in range(10):
            a = _random_element(rng, field)
            assert evaluate_poly(minimal_polynomial(a).coeffs, a).is_zero()
    return "30 elements"


def check_galois_homomorphism(rng) -> str:
    for field in _fields():
        for _ in range(10):
            a, b = _random_element(rng, field), _random_element(rng, field)
            for k in range(len(field.galois_maps)):
                assert apply_galois(k, a * b) == apply_galois(k, a) * apply_galois(k, b)
                assert apply_galois(k, a + b) == apply_galois(k, a) + apply_galois(k, b)
    return "30 pairs"


def check_product_formula(rng) -> str:
    for _ in range(200):
        x = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6))
        prod = Fraction(1)
        for place in support_places(x):
            prod *= rational_abs(x, place)
        assert prod == 1
    return "200 rationals"


def check_height_powers(rng) -> str:
    field = _fields()[0]
    for _ in range(10):
        a = _random_element(rng, field)
        if a.is_zero():
            continue
        k = rng.randint(1, 4)
        lhs = weil_height(a ** k, 128).value
        rhs = pow_rational(weil_height(a, 128).value, k)
        assert lhs.overlaps(rhs)
    return "H(a^k) = H(a)^k"


def check_enumeration(rng) -> str:
    field = _fields()[0]
    desc = GroupDesc((field([1, 1]), field([3, 0])))
    full = list(enumerate_tuples(desc, 2, 2))
    assert len(full) == tuple_count(desc, 2, 2) == 5 ** 4
    assert len(set(full)) == len(full)
    sharded = [t for p in shard_prefixes(desc, 2, 2, 2) for t in enumerate_tuples(desc, 2, 2, p)]
    assert sharded == full
    flt = TupleFamilyFilter(desc)
    admitted = [t for t in full if ratio_filter(t, flt)[0] == "admit"]
    again = TupleFamilyFilter(desc)
    assert all(ratio_filter(t, again)[0] == "admit" for t in admitted)
    return f"{len(full)} tuples, {len(admitted)} admitted"


def check_mahler(rng) -> str:
    report = mahler_scan(Fraction(3, 2), 1, 50)
    assert report.qualifying == () and 4 in report.boundaries
    return "3/2, eps = 1"


def check_golden_ratio(rng) -> str:
    golden = _fields()[1]
    rows = golden_ratio_check(golden, 40)
    assert all(ok for _, _, ok in rows)
    assert float(embed(golden([0, 1]))) > 1.6
    return f"{len(rows)} powers"


CHECKS = [
    ("ring axioms", check_ring_axioms),
    ("minimal polynomials", check_minpoly),
    ("Galois maps are homomorphisms", check_galois_homomorphism),
    ("product formula", check_product_formula),
    ("height of powers", check_height_powers),
    ("enumeration and ratio filter", check_enumeration),
    ("Mahler scan 3/2", check_mahler),
    ("golden ratio powers", check_golden_ratio),
]


def run_selftest(out=print) -> bool:
    rng = random.Random(SEED)
    ok = True
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            detail = fn(rng)
            out(f"PASS  {name}: {detail} ({time.perf_counter() - t0:.2f}s)")
        except AssertionError as exc:
            ok = False
            out(f"FAIL  {name}: {exc or 'assertion failed'}")
    return ok
