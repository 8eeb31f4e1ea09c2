"""Scans of ||alpha^n|| for rational and algebraic alpha.

For rational alpha = k/l the comparison ||alpha^n|| < l^(-eps n) is exact:
with eps = a/b it is equivalent to dist^b * l^(a n) < 1.  Ties are reported
as equality boundaries, never as qualifying.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from ..certify import DEFAULT_START_BITS, CertifiedValue, absval, embed
from ..errors import BadInput, NeedsRefinement
from ..field import FieldElement
from ..heights import exact_nearest_int, nearest_int_distance


@dataclass(frozen=True)
class MahlerRow:
    n: int
    p: int
    distance: Fraction
    threshold: str  # decimal rendering of l^(-eps n), reporting only
    status: str     # "below", "equal" or "above"

    def as_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "distance": str(self.distance),
                "distance_dec": _dec(self.distance), "threshold": self.threshold,
                "status": self.status}


@dataclass(frozen=True)
class MahlerReport:
    alpha: Fraction
    epsilon: Fraction
    nmax: int
    qualifying: tuple
    boundaries: tuple
    rows: tuple

    def summary(self) -> dict:
        return {"mode": "mahler", "alpha": str(self.alpha), "epsilon": str(self.epsilon),
                "nmax": self.nmax, "qualifying": list(self.qualifying),
                "boundaries": list(self.boundaries), "rows": len(self.rows)}


def _dec(x: Fraction, digits: int = 17) -> str:
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)


def mahler_scan(alpha, epsilon, nmax: int) -> MahlerReport:
    alpha, eps = Fraction(alpha), Fraction(epsilon)
    if alpha.denominator == 1 or alpha <= 1:
        raise BadInput(f"alpha must be a non-integer rational > 1, got {alpha}")
    if eps <= 0:
        raise BadInput("epsilon must be positive")
    if nmax < 1:
        raise BadInput("nmax must be >= 1")
    ell = alpha.denominator
    a, b = eps.numerator, eps.denominator
    rows, qualifying, boundaries = [], [], []
    x = Fraction(1)
    for n in range(1, nmax + 1):
        x *= alpha
        p, dist = exact_nearest_int(x)
        lhs = dist ** b * Fraction(ell) ** (a * n)
        status = "below" if lhs < 1 else "equal" if lhs == 1 else "above"
        if status == "below":
            qualifying.append(n)
        elif status == "equal":
            boundaries.append(n)
        with mpmath.workdps(25):
            thr = mpmath.nstr(mpmath.power(ell, -mpmath.mpf(a) / b * n), 17)
        rows.append(MahlerRow(n, p, dist, thr, status))
    return MahlerReport(alpha, eps, nmax, tuple(qualifying), tuple(boundaries), tuple(rows))


@dataclass(frozen=True)
class PowerRow:
    n: int
    p: int
    offset: FieldElement       # a^n - p, exact
    distance: CertifiedValue   # |a^n - p| at the embedding

    def as_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "offset": str(self.offset),
                "distance": self.distance.describe()}


def power_scan(a: FieldElement, nmax: int, nmin: int = 1,
               bits: int = 2 * DEFAULT_START_BITS, max_bits: int = 4096) -> list:
    """Nearest integer p to a^n and the exact offset a^n - p, for real a."""
    rows = []
    x = a ** nmin
    for n in range(nmin, nmax + 1):
        exact: Optional[Fraction] = x.rational_value() if x.is_rational() else None
        b = bits
        while True:
            try:
                near = nearest_int_distance(embed(x, None, b), lambda: exact)
                break
            except NeedsRefinement:
                if b >= max_bits:
                    raise
                b *= 2
        offset = x - near.p
        rows.append(PowerRow(n, near.p, offset, absval(embed(offset, None, bits))))
        x = x * a
    return rows


def lucas(n: int) -> int:
    """L_0 = 2, L_1 = 1, L_n = L_{n-1} + L_{n-2}."""
    prev, cur = 2, 1
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, prev + cur
    return cur


def golden_ratio_check(field, nmax: int = 40) -> list:
    """Rows (n, p, exact) for phi^n, with exact = ||phi^n|| == phi^(-n) proved in K."""
    phi = field([0, 1])
    out = []
    for row in power_scan(phi, nmax, nmin=2):
        # phi^n - p = +-phi^(-n) as field elements, and phi > 0
        target = phi ** (-row.n)
        exact = row.offset == target or row.offset == -target
        out.append((row.n, row.p, exact and row.p == lucas(row.n)))
    return out

