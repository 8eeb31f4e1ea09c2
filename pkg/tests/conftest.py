import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sunitlab.field import NumberField
from sunitlab.harness.config import build_field
from sunitlab.polynomials import IntPolynomial

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

F = Fraction

SQRT2 = build_field(IntPolynomial.parse("x^2 - 2"), label="Q(sqrt2)")
GOLDEN = build_field(IntPolynomial.parse("x^2 - x - 1"), label="Q(phi)")
RATIONALS = build_field(IntPolynomial.parse("x"), label="Q")
ZETA5 = NumberField(
    IntPolynomial.parse("x^4 + x^3 + x^2 + x + 1"),
    galois_maps=((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)),
    label="Q(zeta5)",
)
# theta = sqrt2 + sqrt5; the four maps flip the signs of sqrt2 and sqrt5
BIQUAD = NumberField(
    IntPolynomial.parse("x^4 - 14x^2 + 9"),
    galois_maps=(
        (0, 1, 0, 0),
        (0, F(14, 3), 0, F(-1, 3)),
        (0, F(-14, 3), 0, F(1, 3)),
        (0, -1, 0, 0),
    ),
    label="Q(sqrt2, sqrt5)",
)
BQ_SQRT2 = BIQUAD([0, F(-11, 6), 0, F(1, 6)])
BQ_SQRT5 = BIQUAD([0, F(17, 6), 0, F(-1, 6)])

ALL_FIELDS = [SQRT2, GOLDEN, ZETA5, BIQUAD]

small_fraction = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def elements(field, allow_zero=True):
    strat = st.lists(small_fraction, min_size=field.degree, max_size=field.degree).map(field)
    if not allow_zero:
        strat = strat.filter(lambda a: not a.is_zero())
    return strat


@pytest.fixture
def sqrt2():
    return SQRT2


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def zeta5():
    return ZETA5


def silver_thm1(N=10, qmax=20, mode="A", alphas=("1,0",)):
    """thm1 desk config: K = Q(sqrt2), Gamma = <-1, 1 + sqrt2>."""
    lines = [
        'mode = "thm1"',
        'field.minpoly = "-2,0,1"',
        'gamma.gen.1 = "-1,0"',
        'gamma.order.1 = "2"',
        'gamma.gen.2 = "1,1"',
        'epsilon = "1/2"',
        f'bounds.N = "{N}"',
        f'bounds.Qmax = "{qmax}"',
        'precision.max_bits = "4096"',
        f'stability_mode = "{mode}"',
    ]
    lines += [f'alphas.{k} = "{a}"' for k, a in enumerate(alphas, 1)]
    return "\n".join(lines) + "\n"


def single_gen_thm2(minpoly, gen, alpha, N=20, eps="3/10"):
    return "\n".join([
        'mode = "thm2"',
        f'field.minpoly = "{minpoly}"',
        f'gamma.gen.1 = "{gen}"',
        f'alphas.1 = "{alpha}"',
        f'epsilon = "{eps}"',
        f'bounds.N = "{N}"',
    ]) + "\n"


GOLDEN_THM2 = single_gen_thm2("-1,-1,1", "0,1", "1,0")
THREE_HALVES_THM2 = single_gen_thm2("0,1", "3/2", "1")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
