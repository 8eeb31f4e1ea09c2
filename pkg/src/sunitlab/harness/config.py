"""Run configuration: flat ``key = "value"`` text with dotted keys.

Example::

    # K = Q(sqrt 2), Gamma = <-1, 1 + sqrt 2>
    mode = "thm1"
    field.minpoly = "-2,0,1"
    gamma.gen.1 = "-1,0"
    gamma.order.1 = "2"
    gamma.gen.2 = "1,1"
    alphas.1 = "1,0"
    epsilon = "1/2"
    bounds.N = "10"
    bounds.Qmax = "20"

Coefficient vectors are ascending in the power basis of theta.  Polynomials
accept either a vector or ``x^2 - 2`` style text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from ..certify import DEFAULT_MAX_BITS
from ..errors import ConfigError, SunitLabError
from ..field import NumberField
from ..gamma import GroupDesc
from ..polynomials import IntPolynomial, parse_rational_poly

MODES = ("thm1", "thm2", "mahler")

_SCALAR_KEYS = {
    "mode", "field.minpoly", "field.embedding", "field.label", "epsilon",
    "bounds.N", "bounds.Qmax", "bounds.nmax", "precision.max_bits",
    "stability_mode", "stability.radius", "negative_q", "mahler.alpha",
}
_INDEXED = re.compile(r"^(field\.galois|gamma\.gen|gamma\.order|alphas)\.(\d+)$")
_LINE = re.compile(r'^([A-Za-z_][\w.]*)\s*=\s*(?:"([^"]*)"|(\S+))\s*$')


def parse_kv(text: str) -> dict:
    """Raw key/value pairs, in file order."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if not m:
            raise ConfigError(f"line {lineno}", f"cannot parse {raw!r}")
        key = m.group(1)
        value = m.group(2) if m.group(2) is not None else m.group(3)
        if key in out:
            raise ConfigError(key, "duplicate key")
        if key not in _SCALAR_KEYS and not _INDEXED.match(key):
            raise ConfigError(key, "unknown key")
        out[key] = value
    return out


def _indexed(raw: dict, prefix: str) -> dict:
    out = {}
    for key, value in raw.items():
        m = _INDEXED.match(key)
        if m and m.group(1) == prefix:
            out[int(m.group(2))] = (key, value)
    return out


def _contiguous(items: dict, prefix: str) -> list:
    if not items:
        return []
    if sorted(items) != list(range(1, len(items) + 1)):
        raise ConfigError(f"{prefix}.*", "indices must run 1, 2, ... without gaps")
    return [items[k] for k in range(1, len(items) + 1)]


def _fraction(key, value) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(key, f"not a rational number: {value!r}") from None


def _int(key, value) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(key, f"not an integer: {value!r}") from None


def _vector(key, value) -> list:
    try:
        return [Fraction(p) for p in value.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(key, f"not a coefficient vector: {value!r}") from None


def _element(field, key, value):
    vec = _vector(key, value)
    if len(vec) > field.degree:
        raise ConfigError(key, f"expected at most {field.degree} coefficients, got {len(vec)}")
    return field(vec + [Fraction(0)] * (field.degree - len(vec)))


def _bool(key, value) -> bool:
    v = value.lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise ConfigError(key, f"not a boolean: {value!r}")


def build_field(poly: IntPolynomial, maps=None, embedding=None, label="") -> NumberField:
    """Field with Galois data filled in for degrees 1 and 2 when none is given."""
    if maps is None and poly.degree == 1:
        root = -Fraction(poly.coeffs[0], poly.coeffs[1])
        maps = ((root,),)
    if maps is None and poly.degree == 2:
        return NumberField.quadratic(poly, embedding=embedding, label=label)
    return NumberField(poly, galois_maps=maps, embedding=embedding, label=label)


@dataclass
class RunConfig:
    mode: str
    epsilon: Fraction
    field: Optional[NumberField] = None
    gamma: Optional[GroupDesc] = None
    alphas: tuple = ()
    N: int = 0
    Qmax: int = 1
    nmax: int = 0
    max_bits: int = DEFAULT_MAX_BITS
    stability_mode: str = "A"
    stability_radius: int = 2
    negative_q: bool = False
    mahler_alpha: Optional[Fraction] = None
    raw: dict = dc_field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.alphas)


def config_from_kv(raw: dict, max_bits: Optional[int] = None) -> RunConfig:
    def get(key, default=None):
        return raw.get(key, default)

    mode = get("mode")
    if mode is None:
        raise ConfigError("mode", "missing")
    if mode not in MODES:
        raise ConfigError("mode", f"expected one of {', '.join(MODES)}, got {mode!r}")
    if "epsilon" not in raw:
        raise ConfigError("epsilon", "missing")
    eps = _fraction("epsilon", raw["epsilon"])
    if eps <= 0:
        raise ConfigError("epsilon", "must be positive")
    cfg = RunConfig(mode=mode, epsilon=eps, raw=dict(raw))
    if "precision.max_bits" in raw:
        cfg.max_bits = _int("precision.max_bits", raw["precision.max_bits"])
        if cfg.max_bits < 64:
            raise ConfigError("precision.max_bits", "must be at least 64")
    if max_bits is not None:
        cfg.max_bits = max_bits

    if mode == "mahler":
        if "mahler.alpha" not in raw:
            raise ConfigError("mahler.alpha", "missing")
        cfg.mahler_alpha = _fraction("mahler.alpha", raw["mahler.alpha"])
        cfg.nmax = _int("bounds.nmax", get("bounds.nmax", "50"))
        return cfg

    if "field.minpoly" not in raw:
        raise ConfigError("field.minpoly", "missing")
    try:
        poly = IntPolynomial.from_rationals(parse_rational_poly(raw["field.minpoly"]))
    except ValueError as exc:
        raise ConfigError("field.minpoly", str(exc)) from None
    maps = [_vector(k, v) for k, v in _contiguous(_indexed(raw, "field.galois"), "field.galois")]
    embedding = _int("field.embedding", raw["field.embedding"]) if "field.embedding" in raw else None
    try:
        cfg.field = build_field(poly, tuple(maps) or None, embedding, get("field.label", ""))
    except (SunitLabError, ValueError) as exc:
        key = "field.galois" if maps else "field.minpoly"
        raise ConfigError(key, str(exc)) from None
    if not cfg.field.has_galois:
        raise ConfigError("field.galois", "Galois maps are required above degree 2")

    gens = _contiguous(_indexed(raw, "gamma.gen"), "gamma.gen")
    if not gens:
        raise ConfigError("gamma.gen.1", "at least one generator is required")
    orders_raw = _indexed(raw, "gamma.order")
    for idx, (key, _) in orders_raw.items():
        if not 1 <= idx <= len(gens):
            raise ConfigError(key, "order given for a generator that does not exist")
    elements, orders = [], []
    for idx, (key, value) in enumerate(gens, 1):
        elements.append(_element(cfg.field, key, value))
        if idx in orders_raw:
            okey, ovalue = orders_raw[idx]
            orders.append(_int(okey, ovalue))
        else:
            orders.append(None)
    try:
        cfg.gamma = GroupDesc(tuple(elements), tuple(orders))
    except (SunitLabError, ValueError) as exc:
        raise ConfigError("gamma.gen", str(exc)) from None

    alphas = _contiguous(_indexed(raw, "alphas"), "alphas")
    if not alphas:
        raise ConfigError("alphas.1", "at least one alpha is required")
    cfg.alphas = tuple(_element(cfg.field, k, v) for k, v in alphas)
    for (key, _), a in zip(alphas, cfg.alphas):
        if a.is_zero():
            raise ConfigError(key, "alpha must be nonzero")

    cfg.N = _int("bounds.N", get("bounds.N", "0"))
    if cfg.N < 0:
        raise ConfigError("bounds.N", "must be >= 0")
    cfg.Qmax = _int("bounds.Qmax", get("bounds.Qmax", "1"))
    if cfg.Qmax < 1:
        raise ConfigError("bounds.Qmax", "must be >= 1")
    cfg.stability_mode = get("stability_mode", "A")
    if cfg.stability_mode not in ("A", "B"):
        raise ConfigError("stability_mode", "expected A or B")
    cfg.stability_radius = _int("stability.radius", get("stability.radius", "2"))
    cfg.negative_q = _bool("negative_q", get("negative_q", "false"))
    return cfg


def parse_config(text: str, max_bits: Optional[int] = None) -> RunConfig:
    return config_from_kv(parse_kv(text), max_bits)


def load_config(path, max_bits: Optional[int] = None) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text, max_bits)
