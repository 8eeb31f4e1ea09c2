from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunitlab.polynomials import (
    IntPolynomial,
    euler_phi,
    format_poly,
    is_cyclotomic,
    is_irreducible,
    is_squarefree,
    orders_with_phi,
    parse_rational_poly,
    qdivmod,
    qgcd,
    qmul,
    qstrip,
    shares_factor_with_reciprocal,
    squarefree_part,
)

F = Fraction


def test_parse_forms_agree():
    assert parse_rational_poly("x^2 - x - 1") == [-1, -1, 1]
    assert parse_rational_poly("-1,-1,1") == [-1, -1, 1]
    assert parse_rational_poly("1/2 + 3*t^2") == [F(1, 2), 0, 3]
    assert parse_rational_poly("3/2") == [F(3, 2)]
    assert parse_rational_poly("2x-3") == [-3, 2]


@pytest.mark.parametrize("bad", ["", "x^^2", "x+", "2**x"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_rational_poly(bad)


def test_primitive_and_from_rationals():
    p = IntPolynomial.from_rationals([F(-3, 2), F(1)])
    assert p.coeffs == (-3, 2)
    assert IntPolynomial([4, -6, -2]).primitive().coeffs == (-2, 3, 1)
    assert IntPolynomial([0, 0, 0]).is_zero()
    assert str(IntPolynomial([-3, 2])) == "2*x - 3"


def test_immutable():
    p = IntPolynomial([1, 1])
    with pytest.raises(AttributeError):
        p.coeffs = (2,)


def test_squarefree_and_reciprocal():
    assert is_squarefree(IntPolynomial.parse("x^2 - 1"))
    rep = IntPolynomial.from_rationals(qmul([-1, 1], [-1, 1]))  # (x - 1)^2
    assert not is_squarefree(rep)
    assert squarefree_part(rep).coeffs == (-1, 1)
    lehmer = IntPolynomial.parse("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1")
    assert shares_factor_with_reciprocal(lehmer)
    assert not shares_factor_with_reciprocal(IntPolynomial.parse("x^2 - x - 1"))


def test_irreducibility():
    assert is_irreducible(IntPolynomial.parse("x^2 - 2"))
    assert is_irreducible(IntPolynomial.parse("x^4 - 14x^2 + 9"))
    assert not is_irreducible(IntPolynomial.parse("x^2 - 4"))
    assert not is_irreducible(IntPolynomial.parse("x^4 + 4"))  # Sophie Germain
    assert not is_irreducible(IntPolynomial([5]))


def test_euler_phi_and_cyclotomic():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert orders_with_phi(4) == [5, 8, 10, 12]
    assert is_cyclotomic(IntPolynomial.parse("x^4 + x^3 + x^2 + x + 1"))
    assert is_cyclotomic(IntPolynomial.parse("x^2 - x + 1"))
    assert not is_cyclotomic(IntPolynomial.parse("x^2 - x - 1"))


polys = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(
    lambda cs: [F(c) for c in cs])


def _padded(p, n):
    return list(p) + [0] * (n - len(p))


@given(polys, polys)
def test_division_identity(a, b):
    if not any(b):
        return
    q, r = qdivmod(a, b)
    assert len(r) < len(qstrip(b))
    recon = qmul(q, b)
    n = max(len(recon), len(r), len(a))
    assert [x + y for x, y in zip(_padded(recon, n), _padded(r, n))] == _padded(a, n)


@given(polys, polys)
def test_gcd_divides_both(a, b):
    if not any(a) or not any(b):
        return
    g = qgcd(a, b)
    assert not qdivmod(a, g)[1]
    assert not qdivmod(b, g)[1]


def test_format_poly_variable():
    assert format_poly([F(1), F(-1)], "t") == "-t + 1"
