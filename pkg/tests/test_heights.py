import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BIQUAD, GOLDEN, SQRT2, ZETA5, elements
from sunitlab.certify import CertifiedValue, Verdict, embed, pow_rational
from sunitlab.classify import is_root_of_unity
from sunitlab.errors import NeedsRefinement, ZeroInput
from sunitlab.field import apply_galois
from sunitlab.heights import (
    RationalPlace,
    exact_nearest_int,
    is_algebraic_integer,
    is_s_integer,
    is_s_unit,
    mahler_measure,
    nearest_int_distance,
    p_adic_valuation,
    projective_height,
    rational_abs,
    support_places,
    weil_height,
)
from sunitlab.polynomials import IntPolynomial

F = Fraction
nonzero_rationals = st.fractions(max_denominator=10 ** 6).filter(lambda x: x != 0)


def test_rational_heights_are_exact():
    assert weil_height(SQRT2([F(3, 2), 0])).value.re == 3
    assert weil_height(SQRT2([F(-7, 12), 0])).value.re == 12
    assert weil_height(SQRT2.one()).value.re == 1


def test_quadratic_heights():
    phi = weil_height(GOLDEN.theta, 96).value
    # H(phi)^2 = phi
    assert F(1618033, 10 ** 6) < phi.lo ** 2 <= phi.hi ** 2 < F(1618034, 10 ** 6)
    assert abs(float(phi) - math.sqrt((1 + math.sqrt(5)) / 2)) < 1e-14
    silver = weil_height(1 + SQRT2.theta, 96).value
    assert abs(float(silver) - math.sqrt(1 + math.sqrt(2))) < 1e-14
    # 3/2 + sqrt2/2 has minpoly 4x^2 - 12x + 7; only (3 + sqrt2)/2 lies outside the disk
    h = weil_height(SQRT2([F(3, 2), F(1, 2)]), 96).value
    assert abs(float(h) - math.sqrt(2 * (3 + math.sqrt(2)))) < 1e-12


def test_roots_of_unity_have_height_one():
    assert weil_height(ZETA5.theta).value.re == 1
    assert weil_height(-ZETA5.theta ** 3).value.re == 1


def test_zero_height_rejected():
    with pytest.raises(ZeroInput):
        weil_height(SQRT2.zero())


def test_mahler_measure_of_lehmer():
    lehmer = IntPolynomial.parse("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1")
    m = mahler_measure(lehmer, 64)
    assert abs(float(m) - 1.17628081825991750) < 1e-12


def test_projective_height():
    assert projective_height([F(1, 2), F(1, 3)]) == 3
    assert projective_height([2, 4, 6]) == 3
    assert projective_height([0, F(-5, 7)]) == 1
    with pytest.raises(ZeroInput):
        projective_height([0, 0])


def test_places():
    assert p_adic_valuation(F(12, 5), 2) == 2
    assert p_adic_valuation(F(12, 5), 5) == -1
    assert rational_abs(F(12, 5), RationalPlace(2)) == F(1, 4)
    assert [str(v) for v in support_places(F(12, 5))] == ["inf", "2", "3", "5"]
    with pytest.raises(ValueError):
        RationalPlace(4)


def test_nearest_int_examples():
    phi4 = embed(GOLDEN.theta ** 4, None, 96)
    r = nearest_int_distance(phi4)
    assert r.p == 7 and r.verdict is Verdict.TRUE
    assert abs(float(r.distance) - ((1 + math.sqrt(5)) / 2) ** -4) < 1e-12
    assert exact_nearest_int(F(5, 2)) == (3, F(1, 2))
    assert exact_nearest_int(F(-7, 3)) == (-2, F(1, 3))
    half = nearest_int_distance(CertifiedValue(F(5, 2), F(0), F(1, 100)),
                                exact_fallback=lambda: F(5, 2))
    assert half.p == 3 and half.distance.re == F(1, 2)
    with pytest.raises(NeedsRefinement):
        nearest_int_distance(CertifiedValue(F(0), F(0), F(1, 4)))


def test_integrality_and_s_units():
    assert is_algebraic_integer(GOLDEN.theta)
    assert not is_algebraic_integer(SQRT2([F(1, 2), 0]))
    assert is_s_unit(1 + SQRT2.theta)
    assert not is_s_unit(SQRT2([3, 0]))
    assert is_s_unit(SQRT2([F(3, 2), 0]), primes=(2, 3))
    assert is_s_integer(SQRT2([F(1, 6), 1]), primes=(2, 3))
    assert not is_s_integer(SQRT2([F(1, 6), 1]), primes=(2,))
    assert is_s_unit(ZETA5.theta)


@given(nonzero_rationals)
def test_product_formula(x):
    prod = F(1)
    for place in support_places(x):
        prod *= rational_abs(x, place)
    assert prod == 1


@given(elements(SQRT2, allow_zero=False), st.integers(1, 4))
def test_height_of_power(a, k):
    lhs = weil_height(a ** k, 96).value
    rhs = pow_rational(weil_height(a, 96).value, k)
    assert lhs.overlaps(rhs)


@pytest.mark.parametrize("field", [SQRT2, GOLDEN, BIQUAD], ids=lambda f: f.label)
@given(data=st.data())
def test_height_invariances(field, data):
    a = data.draw(elements(field, allow_zero=False))
    h = weil_height(a, 96).value
    assert h.hi >= 1
    assert weil_height(a.inverse(), 96).value.overlaps(h)
    for k in range(len(field.galois_maps)):
        assert weil_height(apply_galois(k, a), 96).value.overlaps(h)


@given(elements(ZETA5, allow_zero=False))
def test_height_one_exactly_for_roots_of_unity(a):
    h = weil_height(a, 96).value
    if is_root_of_unity(a):
        assert h.is_exact and h.re == 1
    else:
        # Kronecker: height one forces a root of unity
        assert h.lo > 1


@given(st.lists(nonzero_rationals, min_size=1, max_size=4), nonzero_rationals)
def test_projective_height_scale_invariant(v, c):
    assert projective_height(v) == projective_height([c * x for x in v])
