from __future__ import annotations

import io
import json

import pytest

from ospq import cli
from ospq.expr import ParseError, parse


def run(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    rc = cli.run(list(argv), buf)
    return rc, buf.getvalue()


def test_parse_dialects():
    sdet = parse("a*d - q*b*c - q^(1/2)*alpha*delta", "afun")
    assert str(sdet) == "1"
    w = parse("v+*K", "uword")
    assert list(w.terms) == [("v+", "K")]
    assert not parse("sqrt([2]*rho)", "scalar").is_rational()


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("xi_odd^2", "scalar")
    with pytest.raises(ParseError):
        parse("a**", "afun")


def test_verify_rtt():
    rc, out = run("verify", "rtt")
    assert rc == 0
    assert "81/81" in out


def test_normal_form_alpha_squared():
    rc, out = run("normal-form", "alpha*alpha")
    assert rc == 0 and out.strip() == "-(1/q)*[2]*a*b"


def test_normal_form_other_dialects():
    rc, out = run("normal-form", "c*c", "--dialect", "osc")
    assert rc == 0 and "abar*a" in out
    rc, out = run("normal-form", "Y2*Y1", "--dialect", "covariant", "--presentation", "supersphere")
    assert rc == 0 and "Y1*Y2" in out


def test_cgc_latex_table():
    rc, out = run("cgc", "--l1", "1", "--l2", "1", "--l", "0", "--lambda", "0", "--format", "latex")
    assert rc == 0
    assert out.count("\\begin{tabular}") == 1
    assert "\\sqrt" in out


def test_cgc_single_value():
    rc, out = run("cgc", "--l1", "1", "--l2", "1", "--l", "2", "--m1", "1", "--m2", "1")
    assert rc == 0 and out.strip() == "1"
    rc, _ = run("cgc", "--l1", "1", "--l2", "1", "--l", "2", "--m1", "1")
    assert rc == 2


def test_corep_json_has_parities():
    rc, out = run("corep", "--ell", "1", "--lambda", "0", "--format", "json")
    data = json.loads(out)
    assert rc == 0
    assert len(data["entries"]) == 9
    assert data["entries"]["1,0"] == {"parity": 1, "value": "alpha"}


def test_rep_formats():
    for fmt in ("text", "json", "csv", "latex"):
        rc, out = run("rep", "--ell", "1", "--gen", "v+", "--format", fmt)
        assert rc == 0 and out


def test_table_presentation_and_consistency():
    rc, out = run("table", "supersphere", "--format", "latex")
    assert rc == 0 and "\\begin{align*}" in out
    rc, out = run("table", "superspace0", "--consistency", "--format", "csv")
    lines = out.strip().splitlines()
    assert rc == 0 and lines[0] == "triple,path1,path2,equal" and len(lines) == 28


def test_table_file_roundtrip(tmp_path):
    rc, out = run("table", "superspace1-radius")
    path = tmp_path / "p.txt"
    path.write_text(out)
    rc2, out2 = run("table", str(path))
    assert rc == rc2 == 0
    assert out2 == out


def test_eval_and_bindings():
    rc, out = run("eval", "[2]", "--q", "1/4", "--precision", "20")
    assert rc == 0 and out.startswith("q=1/4: 1.5")
    rc, out = run("eval", "r + 1", "--q", "1/2", "--bind", "r=1/2")
    assert rc == 0 and "1.5" in out


def test_fock_small():
    rc, out = run("fock", "--cutoff", "12", "--format", "json")
    data = json.loads(out)
    assert rc == 0 and data["ok"]


def test_exit_codes():
    assert run("verify", "nonexistent")[0] == 2
    assert run("normal-form", "alpha*")[0] == 2
    with pytest.raises(SystemExit) as e:
        run("frobnicate")
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        run("rep", "--ell", "1", "--bogus")
    assert e.value.code == 2


def test_failing_suite_reports_first_failure():
    rc, out = run("verify", "golden")
    assert rc == 1
    assert "first failure" in out


@pytest.mark.parametrize("argv", [
    ("rep", "--ell", "2", "--gen", "v-", "--format", "json"),
    ("cgc", "--l1", "2", "--l2", "2", "--lambda", "1", "--format", "csv"),
    ("table", "supersphere"),
    ("verify", "reps", "--format", "json"),
])
def test_deterministic_output(argv):
    assert run(*argv) == run(*argv)


def test_config_env(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"probes": ["1/3"], "precision": 15}))
    monkeypatch.setenv("OSPQ_CONFIG", str(cfg))
    rc, out = run("eval", "[2]")
    assert rc == 0 and out.startswith("q=1/3:") and len(out.splitlines()) == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nope": 1}))
    assert run("--config", str(bad), "eval", "1")[0] == 2
