"""Finitely generated subgroups of K^x given by generators.

Group elements are exponent vectors (plain tuples of ints); ``materialize``
turns them into field elements.  Generators with a declared finite order r
(roots of unity such as -1) take exponents in [0, r); all other exponents
range over [-N, N] during enumeration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .field import FieldElement, apply_galois

GroupElement = tuple


@dataclass(frozen=True)
class GroupDesc:
    generators: tuple
    orders: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        orders = tuple(self.orders) or (None,) * len(gens)
        if len(orders) != len(gens):
            raise ValueError("orders must match generators")
        object.__setattr__(self, "orders", orders)
        if not gens:
            raise ValueError("a group needs at least one generator")
        fields = {g.field for g in gens}
        if len(fields) != 1:
            raise ValueError("generators must share one field")
        for k, g in enumerate(gens):
            if g.is_zero():
                raise ValueError(f"generator {k + 1} is zero")
            if g in gens[:k]:
                raise ValueError(f"generator {k + 1} duplicates an earlier one")
            r = orders[k]
            if r is not None and (r < 1 or g ** r != 1):
                raise ValueError(f"generator {k + 1} does not have order dividing {r}")

    @property
    def s(self) -> int:
        return len(self.generators)

    @property
    def field(self):
        return self.generators[0].field

    def reduce(self, exps: Sequence[int]) -> GroupElement:
        return tuple(e % r if r else e for e, r in zip(exps, self.orders))


@lru_cache(maxsize=65536)
def _generator_power(desc: GroupDesc, t: int, k: int) -> FieldElement:
    if k == 0:
        return desc.field.one()
    if abs(k) == 1:
        g = desc.generators[t]
        return g if k == 1 else g.inverse()
    half = _generator_power(desc, t, k // 2 if k > 0 else -((-k) // 2))
    rest = k - 2 * (k // 2 if k > 0 else -((-k) // 2))
    out = half * half
    if rest:
        out = out * _generator_power(desc, t, rest)
    return out


@lru_cache(maxsize=262144)
def materialize(g: GroupElement, desc: GroupDesc) -> FieldElement:
    """prod_t gamma_t^(g_t), negative exponents through exact inversion."""
    if len(g) != desc.s:
        raise ValueError(f"exponent vector of length {len(g)} for s = {desc.s}")
    out = desc.field.one()
    for t, k in enumerate(g):
        if k:
            out = out * _generator_power(desc, t, k)
    return out


def frak_n(tuples: Sequence[GroupElement]) -> int:
    """Largest absolute exponent over every entry of every vector."""
    entries = [abs(e) for vec in tuples for e in vec]
    if not entries:
        raise ValueError("frak_n of an empty collection")
    return max(entries)


# ---------------------------------------------------------------------------
# enumeration


def exponent_ranges(desc: GroupDesc, N: int) -> list:
    return [range(r) if r else range(-N, N + 1) for r in desc.orders]


def tuple_count(desc: GroupDesc, N: int, m: int) -> int:
    n = 1
    for rng in exponent_ranges(desc, N):
        n *= len(rng)
    return n ** m


def enumerate_tuples(desc: GroupDesc, N: int, m: int,
                     prefix: Sequence[int] = ()) -> Iterator[tuple]:
    """m-tuples of exponent vectors with sup-norm <= N, lexicographic.

    ``prefix`` pins the leading entries of the flattened exponent vector, so
    distinct prefixes of equal length give disjoint shards whose
    concatenation in prefix order is the full stream.
    """
    if N < 0 or m < 1:
        raise ValueError("need N >= 0 and m >= 1")
    ranges = exponent_ranges(desc, N) * m
    prefix = tuple(prefix)
    for k, e in enumerate(prefix):
        if e not in ranges[k]:
            return
    s = desc.s
    for rest in itertools.product(*ranges[len(prefix):]):
        flat = prefix + rest
        yield tuple(flat[i * s:(i + 1) * s] for i in range(m))


def shard_prefixes(desc: GroupDesc, N: int, m: int, depth: int = 1) -> list:
    ranges = (exponent_ranges(desc, N) * m)[:depth]
    return list(itertools.product(*ranges))


# ---------------------------------------------------------------------------
# ratio filter


def ratio_signatures(t: Sequence[GroupElement], desc: Optional[GroupDesc] = None) -> list:
    sigs = []
    for i1, a in enumerate(t):
        for i2, b in enumerate(t):
            if i1 != i2:
                diff = tuple(x - y for x, y in zip(a, b))
                if desc is not None:
                    diff = desc.reduce(diff)
                sigs.append(((i1, i2), diff))
    return sigs


class TupleFamilyFilter:
    """Admits a tuple only if none of its ratios u_i1/u_i2 was seen before.

    Ratios are compared as exponent-vector differences per ordered index
    pair.  Admission depends on history, so feed tuples in canonical order.
    """

    def __init__(self, desc: Optional[GroupDesc] = None):
        self.desc = desc
        self.seen_ratios: set = set()

    def check(self, t) -> Optional[tuple]:
        """The colliding index pair, or None if the tuple would be admitted."""
        for pair, diff in ratio_signatures(t, self.desc):
            if (pair, diff) in self.seen_ratios:
                return pair
        return None

    def record(self, t):
        self.seen_ratios.update(ratio_signatures(t, self.desc))


def ratio_filter(t, flt: TupleFamilyFilter) -> tuple:
    """("admit", None) or ("reject", (i1, i2)); admitted signatures are recorded."""
    if len(t) < 2:
        return ("admit", None)
    clash = flt.check(t)
    if clash is not None:
        return ("reject", clash)
    flt.record(t)
    return ("admit", None)


# ---------------------------------------------------------------------------
# Galois stability


@dataclass(frozen=True)
class StabilityReport:
    radius: int
    # images[(t, sigma)] = exponent vector of sigma(gamma_t), or None
    images: dict

    @property
    def resolved(self) -> bool:
        return all(v is not None for v in self.images.values())

    def unresolved(self) -> list:
        return sorted(k for k, v in self.images.items() if v is None)

    def conjugate(self, g: GroupElement, sigma: int, desc: GroupDesc) -> Optional[GroupElement]:
        """Exponent vector of sigma(materialize(g)), if every image is known."""
        out = [0] * desc.s
        for t, e in enumerate(g):
            if not e:
                continue
            img = self.images.get((t, sigma))
            if img is None:
                return None
            for k, x in enumerate(img):
                out[k] += e * x
        return desc.reduce(out)


def galois_stability_report(desc: GroupDesc, radius: int = 2) -> StabilityReport:
    """Express each sigma(gamma_t) as a generator product with |exponent| <= radius."""
    field = desc.field
    lookup = {}
    ranges = [range(r) if r else range(-radius, radius + 1) for r in desc.orders]
    for vec in itertools.product(*ranges):
        lookup.setdefault(materialize(vec, desc), vec)
    images = {}
    for t, gen in enumerate(desc.generators):
        for sigma in range(len(field.galois_maps)):
            images[(t, sigma)] = lookup.get(apply_galois(sigma, gen))
    return StabilityReport(radius, images)
