"""Exceptional-tuple search (mode thm1) and conclusion checks (mode thm2).

Both runs walk a sup-norm box of Gamma^m.  Per-tuple evaluation is a pure
function of the config and the exponent vectors, so it is farmed out to a
process pool; the ratio filter, which depends on history, runs in the
parent in canonical enumeration order.  Records are plain dicts ready for
JSON.
"""
from __future__ import annotations

import math
import random
import zlib
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import reduce
from typing import Optional

from ..certify import (
    DEFAULT_START_BITS,
    CertifiedValue,
    Verdict,
    absval,
    all_of,
    any_of,
    compare,
    embed,
    mul,
    pow_rational,
)
from ..classify import (
    check_p1_p2,
    is_root_of_unity,
    modulus_ge_one,
    modulus_gt_one,
    modulus_lt_one,
    pseudo_pisot_tuple,
)
from ..field import apply_galois, minimal_polynomial
from ..gamma import (
    TupleFamilyFilter,
    enumerate_tuples,
    frak_n,
    galois_stability_report,
    materialize,
    ratio_filter,
)
from ..heights import is_algebraic_integer, weil_height
from .config import RunConfig, config_from_kv

THM1_CONDITIONS = ("i", "ii", "iii", "iv")
THM2_HYPOTHESES = ("modulus", "ratio", "P1", "P2", "ineq")
THM2_CONCLUSIONS = ("i", "ii", "iii", "iv")


def _v(verdict: Verdict) -> str:
    return verdict.value


def _elem(a) -> str:
    return str(a)


# ---------------------------------------------------------------------------
# shared numerics


def subfield_degree(us, seed: int) -> int:
    """[Q(u_1..u_m):Q] via random integer combinations, capped at [K:Q].

    The degree of any combination is a lower bound; draws stop once three in
    a row fail to raise it, or when it reaches [K:Q].
    """
    cap = us[0].field.degree
    d = max(minimal_polynomial(u).degree for u in us)
    if len(us) == 1 or d >= cap:
        return min(d, cap)
    rng = random.Random(seed)
    stale = 0
    while stale < 3 and d < cap:
        combo = reduce(lambda acc, u: acc + rng.randint(1, 10) * u, us, us[0].field.zero())
        k = minimal_polynomial(combo).degree
        if k > d:
            d, stale = k, 0
        else:
            stale += 1
    return d


def _seed(exps) -> int:
    return zlib.crc32(repr(exps).encode())


def _rhs(us, eps: Fraction, extra: Fraction, q: int, bits: int) -> CertifiedValue:
    """(prod H(u_i))^(-eps) * |q|^(-extra)."""
    prod = CertifiedValue.exact(1, bits)
    for u in us:
        prod = mul(prod, weil_height(u, bits).value)
    out = pow_rational(prod, -eps)
    if q != 1 and extra:
        out = mul(out, pow_rational(CertifiedValue.exact(abs(q), bits), -extra))
    return out


def _lt_refined(diff, rhs_at, max_bits: int, start_bits: int = DEFAULT_START_BITS):
    """Decide |diff| < rhs by doubling precision; returns (verdict, lhs, rhs, bits)."""
    bits = start_bits
    while True:
        rhs = rhs_at(bits)
        lhs = CertifiedValue.exact(0, bits) if diff.is_zero() else absval(embed(diff, None, bits))
        verdict = compare("lt", (lhs, rhs))
        if verdict is not Verdict.UNDECIDED or bits >= max_bits:
            return verdict, lhs, rhs, bits
        bits = min(2 * bits, max_bits)


def _p_candidates(S, widen: bool, max_bits: int) -> list:
    """Nearest integers to Re(S), ordered by distance; neighbours too if ``widen``."""
    if S.is_rational():
        x = S.rational_value()
        cands = {math.floor(x + Fraction(1, 2))}
        if x - math.floor(x) == Fraction(1, 2):
            cands.add(math.floor(x))
        center = x
    else:
        bits = DEFAULT_START_BITS
        while True:
            v = embed(S, None, bits)
            lo = math.floor(v.re - v.rad + Fraction(1, 2))
            hi = math.floor(v.re + v.rad + Fraction(1, 2))
            if lo == hi or bits >= max_bits:
                break
            bits = min(2 * bits, max_bits)
        cands = set(range(lo, hi + 1))
        center = v.re
    if widen:
        cands |= {c + 1 for c in cands} | {c - 1 for c in cands}
    return sorted(cands, key=lambda p: (abs(p - center), p))


def _heights(us) -> list:
    return [weil_height(u, DEFAULT_START_BITS).value.describe() for u in us]


# ---------------------------------------------------------------------------
# thm1: exceptional-tuple search


def _q_values(cfg: RunConfig) -> list:
    qs = list(range(1, cfg.Qmax + 1))
    if cfg.negative_q:
        qs = list(range(-cfg.Qmax, 0)) + qs
    return qs


def evaluate_thm1(cfg: RunConfig, exps, admitted: bool) -> list:
    """One record per q for the tuple with exponent vectors ``exps``."""
    us = tuple(materialize(g, cfg.gamma) for g in exps)
    m = len(us)
    d = subfield_degree(us, _seed(exps))
    heights = _heights(us)
    records = []
    for q in _q_values(cfg):
        betas = [a * q * u for a, u in zip(cfg.alphas, us)]
        verdicts = {"i": Verdict.of(admitted)}
        verdicts["ii"] = any_of(modulus_gt_one(b, cfg.max_bits) for b in betas)
        pp = pseudo_pisot_tuple(betas, cfg.max_bits)
        verdicts["iii"] = ~pp.verdict
        S = reduce(lambda x, y: x + y, betas)
        extra = m * d + cfg.epsilon

        def rhs_at(bits, q=q):
            return _rhs(us, cfg.epsilon, extra, q, bits)

        widen = compare("lt", (rhs_at(DEFAULT_START_BITS), CertifiedValue.exact(Fraction(1, 2)))) \
            is not Verdict.TRUE
        tried = []
        for p in _p_candidates(S, widen, cfg.max_bits):
            diff = S - p
            if diff.is_zero():
                tried.append((p, Verdict.FALSE, CertifiedValue.exact(0), rhs_at(DEFAULT_START_BITS), 0))
                continue
            tried.append((p,) + _lt_refined(diff, rhs_at, cfg.max_bits))
        pick = next((t for t in tried if t[1] is Verdict.TRUE), None) \
            or next((t for t in tried if t[1] is Verdict.UNDECIDED), None) or tried[0]
        p, v_iv, lhs, rhs, bits = pick
        if v_iv is Verdict.TRUE and all(verdicts[c] is Verdict.TRUE for c in ("i", "ii", "iii")):
            # exceptional candidates are re-proved at doubled precision
            again = _lt_refined(S - p, rhs_at, 2 * cfg.max_bits, start_bits=2 * bits)
            if again[0] is not Verdict.TRUE:
                v_iv = Verdict.UNDECIDED
        verdicts["iv"] = v_iv
        rec = {
            "exponents": [list(g) for g in exps],
            "q": q,
            "p": p,
            "d": d,
            "verdicts": {c: _v(verdicts[c]) for c in THM1_CONDITIONS},
            "lhs": lhs.describe(),
            "rhs": rhs.describe(),
        }
        rec.update(_classify(verdicts, THM1_CONDITIONS))
        rec["p_tested"] = [t[0] for t in tried]
        rec["pseudo_pisot"] = {
            "verdict": _v(pp.verdict),
            "witness": pp.witness,
            "P": [_elem(b) for b in pp.P],
            "total": None if pp.total is None else _elem(pp.total),
        }
        rec["heights"] = heights
        records.append(rec)
    return records


def _classify(verdicts: dict, order) -> dict:
    for c in order:
        if verdicts[c] is Verdict.FALSE:
            return {"classification": "excluded", "excluded_by": c}
    if all(verdicts[c] is Verdict.TRUE for c in order):
        return {"classification": "exceptional", "excluded_by": None}
    return {"classification": "undecided", "excluded_by": None}


def admission_flags(cfg: RunConfig, tuples) -> list:
    """Condition (i) per tuple, in canonical order.

    Mode A runs the ratio filter alone.  Mode B also closes the admitted
    family under componentwise Galois conjugation whenever the conjugated
    tuple can be written in Gamma^m.
    """
    flt = TupleFamilyFilter(cfg.gamma)
    flags = []
    if cfg.stability_mode == "A":
        for t in tuples:
            flags.append(ratio_filter(t, flt)[0] == "admit")
        return flags
    report = galois_stability_report(cfg.gamma, cfg.stability_radius)
    closure = set()
    for t in tuples:
        if t in closure:
            flags.append(True)
            continue
        ok = ratio_filter(t, flt)[0] == "admit"
        flags.append(ok)
        if not ok:
            continue
        for sigma in range(len(cfg.field.galois_maps)):
            conj = tuple(report.conjugate(g, sigma, cfg.gamma) for g in t)
            if None in conj or conj == t or conj in closure:
                continue
            closure.add(conj)
            flt.record(conj)
    return flags


_WORKER_CFG: Optional[RunConfig] = None


def _init_worker(raw: dict, max_bits: int):
    global _WORKER_CFG
    _WORKER_CFG = config_from_kv(raw, max_bits)


def _thm1_task(job):
    exps, admitted = job
    return evaluate_thm1(_WORKER_CFG, exps, admitted)


def _thm2_task(exps):
    return evaluate_thm2(_WORKER_CFG, exps)


def _run(cfg: RunConfig, task, items: list, jobs: int) -> list:
    global _WORKER_CFG
    if jobs <= 1 or len(items) < 2:
        _WORKER_CFG = cfg
        return [task(j) for j in items]
    chunk = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                             initargs=(cfg.raw, cfg.max_bits)) as pool:
        return list(pool.map(task, items, chunksize=chunk))


def thm1_search(cfg: RunConfig, jobs: int = 1, previous: Optional[dict] = None):
    """All records for the box plus a summary dict."""
    if cfg.mode != "thm1":
        raise ValueError("thm1_search needs mode = thm1")
    tuples = list(enumerate_tuples(cfg.gamma, cfg.N, cfg.m))
    flags = admission_flags(cfg, tuples)
    per_tuple = _run(cfg, _thm1_task, list(zip(tuples, flags)), jobs)
    records = [r for group in per_tuple for r in group]
    return records, summarize_thm1(cfg, records, flags, previous)


def _exceptional_key(rec) -> tuple:
    return (tuple(tuple(g) for g in rec["exponents"]), rec["q"], rec["p"])


def summarize_thm1(cfg: RunConfig, records: list, flags: list, previous: Optional[dict]) -> dict:
    excluded = {c: 0 for c in THM1_CONDITIONS}
    exceptional, undecided = [], 0
    for rec in records:
        if rec["classification"] == "excluded":
            excluded[rec["excluded_by"]] += 1
        elif rec["classification"] == "undecided":
            undecided += 1
        else:
            exceptional.append(rec)
    summary = {
        "mode": "thm1",
        "N": cfg.N,
        "Qmax": cfg.Qmax,
        "tuples": len(flags),
        "ratio_rejected": flags.count(False),
        "records": len(records),
        "exceptional": len(exceptional),
        "excluded": excluded,
        "undecided": undecided,
        "exceptional_set": [
            {"exponents": r["exponents"], "q": r["q"], "p": r["p"]} for r in exceptional
        ],
    }
    if previous is not None:
        summary["compare"] = compare_exceptional(summary, previous)
    return summary


def compare_exceptional(current: dict, previous: dict) -> dict:
    """Does the exceptional set agree with a previous run on the common box?"""
    n = min(current["N"], previous["N"])
    qmax = min(current["Qmax"], previous["Qmax"])

    def restrict(summary):
        out = set()
        for e in summary["exceptional_set"]:
            if frak_n(e["exponents"]) <= n and abs(e["q"]) <= qmax:
                out.add(_exceptional_key(e))
        return out

    cur, prev = restrict(current), restrict(previous)
    return {
        "previous_N": previous["N"],
        "common_N": n,
        "common_Qmax": qmax,
        "stable": cur == prev,
        "new": len(cur - prev),
        "lost": len(prev - cur),
    }


# ---------------------------------------------------------------------------
# thm2: conclusion verification


def evaluate_thm2(cfg: RunConfig, exps) -> dict:
    """Hypotheses other than the ratio condition, then conclusions if they hold."""
    us = tuple(materialize(g, cfg.gamma) for g in exps)
    hyp = {"modulus": all_of(modulus_ge_one(u, cfg.max_bits) for u in us),
           "ratio": Verdict.TRUE}
    p12 = check_p1_p2(us)
    hyp["P1"] = Verdict.of(p12.p1)
    hyp["P2"] = Verdict.of(p12.p2)
    S = reduce(lambda x, y: x + y, (a * u for a, u in zip(cfg.alphas, us)))

    def rhs_at(bits):
        return _rhs(us, cfg.epsilon, Fraction(0), 1, bits)

    best = None
    for p in _p_candidates(S, False, cfg.max_bits):
        res = _lt_refined(S - p, rhs_at, cfg.max_bits)
        if best is None or (res[0] is Verdict.TRUE and best[1] is not Verdict.TRUE):
            best = (p,) + res
    p, hyp["ineq"], lhs, rhs, _ = best
    rec = {
        "exponents": [list(g) for g in exps],
        "p": p,
        "verdicts": {h: _v(hyp[h]) for h in THM2_HYPOTHESES},
        "lhs": lhs.describe(),
        "rhs": rhs.describe(),
        "heights": _heights(us),
    }
    if p12.p1_witness:
        i, rho = p12.p1_witness
        rec["P1_witness"] = [i, _elem(rho)]
    if p12.p2_witness:
        rec["P2_witness"] = list(p12.p2_witness)
    if all(hyp[h] is Verdict.TRUE for h in THM2_HYPOTHESES):
        rec.update(_conclusions(cfg, us))
    return rec


def _conclusions(cfg: RunConfig, us) -> dict:
    field = cfg.field
    alphas = cfg.alphas
    m = len(us)
    anomalies = []
    c1 = Verdict.of(all(is_algebraic_integer(u) for u in us))
    if c1 is Verdict.FALSE:
        bad = next(i for i, u in enumerate(us) if not is_algebraic_integer(u))
        anomalies.append({"conclusion": "i", "index": bad})
    c2 = []
    c4 = []
    moreover = []
    for sigma in range(len(field.galois_maps)):
        for i, u in enumerate(us):
            img = apply_galois(sigma, u)
            related = [j for j in range(m) if is_root_of_unity(img / us[j])]
            if not related:
                v = modulus_lt_one(img, cfg.max_bits)
                c2.append(v)
                if v is Verdict.FALSE:
                    anomalies.append({"conclusion": "ii", "sigma": sigma, "index": i,
                                      "image": _elem(img)})
            for j in related:
                ok = apply_galois(sigma, alphas[i] * u) == alphas[j] * us[j]
                c4.append(Verdict.of(ok))
                if ok:
                    moreover.append([sigma, i, j, _elem(img / us[j])])
                else:
                    anomalies.append({"conclusion": "iv", "sigma": sigma, "i": i, "j": j})
    pp = pseudo_pisot_tuple([a * u for a, u in zip(alphas, us)], cfg.max_bits)
    if pp.verdict is Verdict.FALSE:
        anomalies.append({"conclusion": "iii", "witness": pp.witness})
    conclusions = {"i": c1, "ii": all_of(c2), "iii": pp.verdict, "iv": all_of(c4)}
    return {
        "conclusions": {c: _v(conclusions[c]) for c in THM2_CONCLUSIONS},
        "anomalies": anomalies,
        "moreover": moreover,
    }


def thm2_verify(cfg: RunConfig, jobs: int = 1):
    if cfg.mode != "thm2":
        raise ValueError("thm2_verify needs mode = thm2")
    tuples = list(enumerate_tuples(cfg.gamma, cfg.N, cfg.m))
    records = _run(cfg, _thm2_task, tuples, jobs)
    flt = TupleFamilyFilter(cfg.gamma)
    for t, rec in zip(tuples, records):
        others = [h for h in THM2_HYPOTHESES if h != "ratio"]
        if all(rec["verdicts"][h] == "true" for h in others):
            if ratio_filter(t, flt)[0] != "admit":
                rec["verdicts"]["ratio"] = "false"
                for k in ("conclusions", "anomalies", "moreover"):
                    rec.pop(k, None)
        verdicts = {h: Verdict(rec["verdicts"][h]) for h in THM2_HYPOTHESES}
        cls = _classify(verdicts, THM2_HYPOTHESES)
        if cls["classification"] == "exceptional":
            cls["classification"] = "satisfying"
        rec.update(cls)
        if "anomalies" in rec:
            # keep record keys in a fixed order
            for k in ("conclusions", "anomalies", "moreover"):
                rec[k] = rec.pop(k)
    return records, summarize_thm2(cfg, records)


def summarize_thm2(cfg: RunConfig, records: list) -> dict:
    satisfying = [r for r in records if r["classification"] == "satisfying"]
    ratios = {}
    for r in satisfying:
        for sigma, i, j, ratio in r["moreover"]:
            ratios.setdefault(f"{sigma},{i},{j}", set()).add(ratio)
    undecided_conclusions = sum(
        1 for r in satisfying if any(v == "undecided" for v in r["conclusions"].values()))
    return {
        "mode": "thm2",
        "N": cfg.N,
        "tuples": len(records),
        "satisfying": len(satisfying),
        "excluded": {h: sum(1 for r in records if r["excluded_by"] == h) for h in THM2_HYPOTHESES},
        "undecided": sum(1 for r in records if r["classification"] == "undecided")
        + undecided_conclusions,
        "anomalies": sum(len(r["anomalies"]) for r in satisfying),
        "satisfying_set": [r["exponents"] for r in satisfying],
        "moreover_constant": {k: len(v) == 1 for k, v in sorted(ratios.items())},
    }
