import json
from fractions import Fraction

import pytest

from conftest import GOLDEN, GOLDEN_THM2, silver_thm1
from sunitlab.errors import BadInput, ConfigError
from sunitlab.harness import report
from sunitlab.harness.cli import run_cli
from sunitlab.harness.config import parse_config, parse_kv
from sunitlab.harness.mahler import golden_ratio_check, lucas, mahler_scan, power_scan
from sunitlab.harness.search import compare_exceptional, thm1_search, thm2_verify
from sunitlab.harness.selftest import run_selftest

F = Fraction


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _lines(path):
    return [json.loads(line) for line in open(path, encoding="utf-8")]


# ---------------------------------------------------------------------------
# config


def test_parse_kv_basics():
    kv = parse_kv('# comment\nmode = "thm1"\nepsilon = 1/2\n\n')
    assert kv == {"mode": "thm1", "epsilon": "1/2"}


@pytest.mark.parametrize("text,key", [
    ('mode = "thm1"\nmode = "thm2"\n', "mode"),
    ('colour = "red"\n', "colour"),
    ('mode = \n', "line 1"),
])
def test_parse_kv_errors(text, key):
    with pytest.raises(ConfigError) as exc:
        parse_kv(text)
    assert exc.value.key == key


@pytest.mark.parametrize("edit,key", [
    (('epsilon = "1/2"', 'epsilon = "0"'), "epsilon"),
    (('bounds.N = "10"', 'bounds.N = "-1"'), "bounds.N"),
    (('bounds.Qmax = "20"', 'bounds.Qmax = "0"'), "bounds.Qmax"),
    (('stability_mode = "A"', 'stability_mode = "C"'), "stability_mode"),
    (('alphas.1 = "1,0"', 'alphas.1 = "0,0"'), "alphas.1"),
    (('alphas.1 = "1,0"', 'alphas.2 = "1,0"'), "alphas.*"),
    (('gamma.gen.2 = "1,1"', 'gamma.gen.2 = "1,1,1"'), "gamma.gen.2"),
    (('gamma.order.1 = "2"', 'gamma.order.1 = "3"'), "gamma.gen"),
    (('field.minpoly = "-2,0,1"', 'field.minpoly = "-4,0,1"'), "field.minpoly"),
])
def test_config_validation_names_the_key(edit, key):
    text = silver_thm1().replace(*edit)
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == key


def test_config_defaults():
    cfg = parse_config(silver_thm1())
    assert cfg.mode == "thm1" and cfg.m == 1 and cfg.epsilon == F(1, 2)
    assert cfg.gamma.orders == (2, None)
    assert parse_config(silver_thm1(), max_bits=512).max_bits == 512


def test_cubic_field_needs_galois_data():
    text = silver_thm1().replace('field.minpoly = "-2,0,1"', 'field.minpoly = "-2,0,0,1"')
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == "field.galois"


# ---------------------------------------------------------------------------
# Mahler scans


def test_mahler_three_halves():
    rep = mahler_scan(F(3, 2), 1, 50)
    assert rep.qualifying == () and rep.boundaries == (1, 2, 4)
    row = rep.rows[3]
    assert (row.n, row.p, row.distance, row.status) == (4, 5, F(1, 16), "equal")


def test_mahler_qualifying_set_stops_growing():
    small = mahler_scan(F(3, 2), F(1, 2), 50).qualifying
    assert small == mahler_scan(F(3, 2), F(1, 2), 200).qualifying
    assert max(small) < 50


@pytest.mark.parametrize("alpha,eps,nmax", [(F(2), 1, 5), (F(1, 2), 1, 5),
                                            (F(3, 2), 0, 5), (F(3, 2), 1, 0)])
def test_mahler_rejects_bad_input(alpha, eps, nmax):
    with pytest.raises(BadInput):
        mahler_scan(alpha, eps, nmax)


def test_golden_ratio_and_power_scan():
    assert [lucas(n) for n in range(8)] == [2, 1, 3, 4, 7, 11, 18, 29]
    rows = golden_ratio_check(GOLDEN, 40)
    assert len(rows) == 39 and all(ok for _, _, ok in rows)
    scan = power_scan(GOLDEN.theta, 10)
    # phi = 1.618 rounds to 2; from n = 2 on the nearest integer is L_n
    assert [r.p for r in scan] == [2] + [lucas(n) for n in range(2, 11)]


# ---------------------------------------------------------------------------
# search and verification


def test_thm1_small_box():
    cfg = parse_config(silver_thm1(N=3, qmax=4))
    records, summary = thm1_search(cfg)
    assert summary["tuples"] == 14 and summary["records"] == 14 * 4
    assert summary["exceptional"] == 0 and summary["undecided"] == 0
    assert sum(summary["excluded"].values()) == summary["records"]
    for r in records:
        assert r["classification"] == "excluded"
        first_false = next(c for c in ("i", "ii", "iii", "iv") if r["verdicts"][c] == "false")
        assert r["excluded_by"] == first_false


def test_thm1_compare_is_monotone():
    _, small = thm1_search(parse_config(silver_thm1(N=5, qmax=20)))
    _, large = thm1_search(parse_config(silver_thm1(N=10, qmax=20)), previous=small)
    cmp = large["compare"]
    assert cmp["stable"] and cmp["lost"] == 0 and cmp["common_N"] == 5
    assert compare_exceptional(large, small)["stable"]


def test_thm1_two_entry_modes():
    a = parse_config(silver_thm1(N=1, qmax=1, mode="A", alphas=("1,0", "0,1")))
    b = parse_config(silver_thm1(N=1, qmax=1, mode="B", alphas=("1,0", "0,1")))
    _, sa = thm1_search(a)
    _, sb = thm1_search(b)
    assert sa["tuples"] == sb["tuples"] == 36
    assert sa["ratio_rejected"] > 0 and sb["ratio_rejected"] > 0


def test_thm2_golden_has_no_anomalies():
    records, summary = thm2_verify(parse_config(GOLDEN_THM2))
    assert summary["anomalies"] == 0 and summary["undecided"] == 0
    sat = [r for r in records if r["classification"] == "satisfying"]
    assert [r["exponents"][0][0] for r in sat] == list(range(0, 21))
    assert all(v == "true" for r in sat for v in r["conclusions"].values())


def test_search_is_deterministic():
    cfg = parse_config(silver_thm1(N=4, qmax=3))
    runs = [report.render_jsonl(report.header("thm1", cfg.raw), *thm1_search(cfg, jobs=j))
            for j in (1, 2, 1)]
    assert runs[0] == runs[1] == runs[2]


# ---------------------------------------------------------------------------
# reports


def test_report_formats(tmp_path):
    head = report.header("thm1", {"mode": "thm1"}, 4096)
    recs = [{"q": 1, "verdicts": {"i": "true"}}, {"q": 2, "verdicts": {"i": "false"}}]
    summary = {"records": 2, "excluded": {"i": 1}}
    text = report.render_jsonl(head, recs, summary)
    lines = [json.loads(x) for x in text.splitlines()]
    assert lines[0]["schema"] == report.SCHEMA and lines[-1] == {"summary": summary}
    csv = report.render_csv(head, recs, summary)
    rows = csv.splitlines()
    assert rows[0] == "# schema = 1"
    assert "verdicts.i" in rows[1] and "summary" in rows[1]
    for fmt, text in (("jsonl", report.render("jsonl", head, recs, summary)),
                      ("csv", report.render("csv", head, recs, summary))):
        path = _write(tmp_path, f"r.{fmt}", text)
        assert report.read_summary(path) == summary


# ---------------------------------------------------------------------------
# CLI


def test_cli_height(capsys):
    assert run_cli(["height", "3/2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "3" and "2*x - 3" in out[1]
    assert run_cli(["height", "1+t", "--field", "x^2-2"]) == 0
    assert capsys.readouterr().out.startswith("1.553773974")


def test_cli_pisot_and_classify(capsys):
    assert run_cli(["pisot", "x^2-x-1"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert run_cli(["pisot", "x^2-2"]) == 0
    assert capsys.readouterr().out.strip() == "false"
    assert run_cli(["pseudo-pisot", "t", "--field", "x^2-2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("false") and "|β| ≥ 1" in out
    assert run_cli(["classify", "t; 1-t", "--field", "x^2-x-1"]) == 0
    out = capsys.readouterr().out
    assert "P1: true" in out and "h = 1, e = [2], d = [2]" in out


def test_cli_mahler(capsys, tmp_path):
    assert run_cli(["mahler", "--alpha", "3/2", "--eps", "1", "--nmax", "6"]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert [r["n"] for r in lines[1:-1]] == [1, 2, 3, 4, 5, 6]
    assert lines[-1]["summary"]["boundaries"] == [1, 2, 4]
    out = str(tmp_path / "m.csv")
    assert run_cli(["mahler", "--alpha", "3/2", "--nmax", "6", "--format", "csv", "--out", out]) == 0
    assert "qualifying set: ∅" in capsys.readouterr().out
    assert open(out).readline().strip() == "# schema = 1"


def test_cli_search_and_compare(tmp_path, capsys):
    cfg5 = _write(tmp_path, "n5.cfg", silver_thm1(N=5, qmax=5))
    cfg10 = _write(tmp_path, "n10.cfg", silver_thm1(N=10, qmax=5))
    out5, out10 = str(tmp_path / "n5.jsonl"), str(tmp_path / "n10.jsonl")
    assert run_cli(["search", "--config", cfg5, "--out", out5]) == 0
    assert run_cli(["--jobs", "2", "search", "--config", cfg10, "--out", out10,
                    "--compare", out5]) == 0
    summary = _lines(out10)[-1]["summary"]
    assert summary["compare"]["stable"] and summary["exceptional"] == 0
    capsys.readouterr()


def test_cli_verify_undecided_exit_code(tmp_path, capsys):
    cfg = _write(tmp_path, "m2.cfg", silver_thm1(N=2, qmax=2, alphas=("1,0", "0,1")))
    out = str(tmp_path / "m2.jsonl")
    # an exact tie lhs = rhs cannot be separated by intervals
    assert run_cli(["search", "--config", cfg, "--out", out]) == 2
    assert _lines(out)[-1]["summary"]["undecided"] > 0
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["height", "x^^2"],
    ["search", "--config", "/nonexistent.cfg"],
    ["--max-bits", "10", "pisot", "x-3"],
    ["--jobs", "0", "pisot", "x-3"],
    ["mahler", "--alpha", "2"],
])
def test_cli_input_errors_exit_one(argv, capsys):
    assert run_cli(argv) == 1
    capsys.readouterr()


def test_cli_wrong_mode(tmp_path, capsys):
    cfg = _write(tmp_path, "g.cfg", GOLDEN_THM2)
    assert run_cli(["search", "--config", cfg]) == 1
    assert "mode" in capsys.readouterr().err


def test_selftest_passes():
    lines = []
    assert run_selftest(lines.append)
    assert all(line.startswith("PASS") for line in lines)
