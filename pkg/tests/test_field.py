import pickle
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ALL_FIELDS, BIQUAD, GOLDEN, SQRT2, ZETA5, elements
from sunitlab.errors import (
    DivisionByZero,
    FieldMismatch,
    GaloisDataMissing,
    InvalidGaloisData,
    ReducibleDefiningPolynomial,
)
from sunitlab.field import (
    NumberField,
    apply_galois,
    evaluate_poly,
    field_arith,
    identity_index,
    minimal_polynomial,
    verify_galois_group,
)
from sunitlab.polynomials import IntPolynomial

F = Fraction


def test_quadratic_examples(sqrt2):
    t = sqrt2.theta
    assert (1 + t) * (1 - t) == -1
    assert 1 / (1 + t) == sqrt2([-1, 1])
    a = sqrt2([F(3, 7), 2])
    assert a + 0 == a
    assert field_arith(1 + t, 1 - t, "mul") == -1
    assert field_arith(sqrt2.one(), 1 + t, "div") == t - 1


def test_division_by_zero(sqrt2):
    with pytest.raises(DivisionByZero):
        sqrt2.one() / sqrt2.zero()
    with pytest.raises(ZeroDivisionError):
        sqrt2.zero().inverse()


def test_field_mismatch(sqrt2, golden):
    with pytest.raises(FieldMismatch):
        sqrt2.theta + golden.theta


def test_reducible_rejected():
    with pytest.raises(ReducibleDefiningPolynomial):
        NumberField(IntPolynomial.parse("x^2 - 4"))


def test_minimal_polynomial_examples(sqrt2, golden):
    assert minimal_polynomial(1 + sqrt2.theta).coeffs == (-1, -2, 1)
    assert minimal_polynomial(sqrt2([F(3, 2), 0])).coeffs == (-3, 2)
    assert minimal_polynomial(golden.theta).coeffs == (-1, -1, 1)
    assert minimal_polynomial(sqrt2.zero()).coeffs == (0, 1)


def test_galois_examples(sqrt2):
    a = 1 + sqrt2.theta
    assert apply_galois(1, a) == 1 - sqrt2.theta
    assert apply_galois(0, a) == a
    assert apply_galois(1, apply_galois(1, a)) == a


def test_galois_tables():
    assert verify_galois_group(SQRT2) == ((0, 1), (1, 0))
    table = verify_galois_group(ZETA5)
    # theta -> theta^k composes like multiplication of k mod 5
    ks = [1, 2, 3, 4]
    for i, ki in enumerate(ks):
        for j, kj in enumerate(ks):
            assert ks[table[i][j]] == (ki * kj) % 5
    assert identity_index(ZETA5) == 0
    assert len(verify_galois_group(BIQUAD)) == 4


def test_invalid_galois_data():
    with pytest.raises(InvalidGaloisData, match="2"):
        NumberField(IntPolynomial.parse("x^2 - 2"), galois_maps=((0, 1), (1, 1)))
    with pytest.raises(InvalidGaloisData):
        NumberField(IntPolynomial.parse("x^2 - 2"), galois_maps=((0, 1), (0, 1)))


def test_missing_galois_data():
    k = NumberField(IntPolynomial.parse("x^3 - 2"))
    with pytest.raises(GaloisDataMissing):
        apply_galois(0, k.theta)


def test_equality_with_rationals_and_hash(sqrt2):
    a = sqrt2([F(3, 2), 0])
    assert a == F(3, 2) and hash(a) == hash(F(3, 2))
    assert sqrt2.theta != 0
    assert len({sqrt2([1, 1]), sqrt2([1, 1]), sqrt2([1, 2])}) == 2


def test_pickle_roundtrip(sqrt2):
    a = sqrt2([F(1, 3), -2])
    assert pickle.loads(pickle.dumps(a)) == a


def test_negative_powers(golden):
    phi = golden.theta
    assert phi ** -3 * phi ** 3 == 1
    assert phi ** 0 == 1


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.label)
@given(data=st.data())
def test_ring_axioms(field, data):
    a, b, c = (data.draw(elements(field)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * (1 / a) == 1


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.label)
@given(data=st.data())
def test_minpoly_annihilates_and_divides_degree(field, data):
    a = data.draw(elements(field))
    f = minimal_polynomial(a)
    assert evaluate_poly(f.coeffs, a).is_zero()
    assert field.degree % f.degree == 0
    assert f.is_primitive()


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.label)
@given(data=st.data())
def test_galois_maps_are_homomorphisms(field, data):
    a, b = data.draw(elements(field)), data.draw(elements(field))
    for k in range(len(field.galois_maps)):
        assert apply_galois(k, a + b) == apply_galois(k, a) + apply_galois(k, b)
        assert apply_galois(k, a * b) == apply_galois(k, a) * apply_galois(k, b)
        assert minimal_polynomial(apply_galois(k, a)) == minimal_polynomial(a)


def test_biquadratic_maps_flip_signs():
    s2 = BIQUAD([0, F(-11, 6), 0, F(1, 6)])
    s5 = BIQUAD([0, F(17, 6), 0, F(-1, 6)])
    images = {(apply_galois(k, s2) == s2, apply_galois(k, s5) == s5) for k in range(4)}
    assert images == {(True, True), (False, True), (True, False), (False, False)}
    assert GOLDEN.degree == 2
