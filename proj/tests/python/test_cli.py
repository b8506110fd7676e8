import json
import os
import subprocess

import pytest

MOORE = os.environ.get("MOORE_BIN", "moore")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("MOORE_DEFAULT_TRUNC", None)
    full_env.update(env or {})
    return subprocess.run([MOORE, *args], capture_output=True, text=True, env=full_env)


def test_hochschild_example():
    p = run("hochschild", "--ring", "Zp:5:6[v]", "--series", "5*t + v*t^2", "--trunc", "12", "--json")
    assert p.returncode == 0, p.stderr
    report = json.loads(p.stdout)
    assert report["torsion"] == "torsion-free"
    assert report["rank"] == 1
    assert list(report) == ["derivative", "quotient", "rank", "torsion", "ramification_index", "eisenstein",
                            "eisenstein_precision", "eisenstein_verified", "mod_p_height", "stated_index",
                            "discrepancy", "residue_criterion"]


def test_canonicalize_example():
    p = run("canonicalize", "--ring", "Q", "--series", "t^2 + t^3", "--trunc", "8")
    assert p.returncode == 0, p.stderr
    assert "form: t^2\n" in p.stdout
    assert "witness: t - 1/2*t^2" in p.stdout


def test_verify_universal_example():
    p = run("verify-universal", "--parity", "even", "--arity", "8", "--trunc", "10")
    assert p.returncode == 0, p.stderr
    assert "m∘m = 0: PASS" in p.stdout
    p = run("verify-universal", "--parity", "odd", "--arity", "8", "--trunc", "10")
    assert "m∘m = 0: PASS" in p.stdout


@pytest.mark.parametrize("ring,text", [
    ("Q", "1/2*t - 5/4*t^4 + 7*t^9"),
    ("F7", "3*t + 6*t^2"),
    ("Zp:5:6[v]", "5*t + (3*v^-1 + 2)*t^3 - v^2*t^5"),
])
def test_printed_series_round_trip(ring, text):
    p = run("act", "--ring", ring, "--series", text, "--by", "t", "--trunc", "10")
    assert p.returncode == 0, p.stderr
    printed = p.stdout.strip()
    again = run("act", "--ring", ring, "--series", printed, "--by", "t", "--trunc", "10")
    assert again.stdout.strip() == printed
    as_json = run("act", "--ring", ring, "--series", printed, "--by", "t", "--trunc", "10", "--json")
    doc = json.dumps(json.loads(as_json.stdout)["u"])
    from_json = run("act", "--series", doc, "--by", "t", "--ring", ring, "--trunc", "10")
    assert from_json.stdout.strip() == printed


def test_parse_error_is_positioned():
    p = run("height", "--ring", "Q", "--series", "5*t + x")
    assert p.returncode == 2
    assert p.stdout == ""
    assert "position 6" in p.stderr
    assert "      ^" in p.stderr
    assert run("bogus").returncode == 2
    assert run("height", "--ring", "Zq:5", "--series", "t").returncode == 2


def test_domain_errors_name_the_error():
    p = run("canonicalize", "--ring", "Zp:5:6", "--series", "5*t + t^5", "--trunc", "10")
    assert p.returncode == 3
    assert p.stdout == ""
    assert "WildCase" in p.stderr
    p = run("hochschild", "--ring", "Q", "--series", "t^2")
    assert p.returncode == 3
    assert "ZeroDivisor" in p.stderr
    p = run("hochschild", "--ring", "Zp:5:6", "--series", "5*t", "--maxdeg", "4")
    assert p.returncode == 3
    assert "NonFieldRing" in p.stderr


def test_truncation_sources(tmp_path):
    plain = run("act", "--series", "t^2", "--by", "t + t^2")
    assert plain.stdout.strip() == "t^2 + 2*t^3 + t^4"
    env = run("act", "--series", "t^2", "--by", "t + t^2", env={"MOORE_DEFAULT_TRUNC": "3"})
    assert env.stdout.strip() == "t^2 + 2*t^3"
    bad = run("act", "--series", "t^2", "--by", "t", env={"MOORE_DEFAULT_TRUNC": "x"})
    assert bad.returncode == 2 and bad.stdout == ""
    config = tmp_path / "moore.toml"
    config.write_text('ring = "F3"\ntrunc = 4\n')
    p = run("act", "--config", str(config), "--series", "t^2", "--by", "t + t^2")
    assert p.stdout.strip() == "t^2 + 2*t^3 + t^4"
    p = run("act", "--config", str(config), "--series", "t^2", "--by", "t + 2*t^2")
    assert p.stdout.strip() == "t^2 + t^3 + t^4"
    p = run("act", "--config", str(config), "--series", "t^2", "--by", "t + t^2", env={"MOORE_DEFAULT_TRUNC": "3"})
    assert p.stdout.strip() == "t^2 + 2*t^3 + t^4"
    p = run("act", "--config", str(config), "--series", "t^2", "--by", "t + t^2", "--trunc", "2")
    assert p.stdout.strip() == "t^2"


def test_other_verbs():
    assert "equivalent" == run("equivalent", "--ring", "F7", "--series", "t^2", "--other", "2*t^2").stdout.strip()
    p = run("check", "--parity", "odd", "--v", "t^2", "--w", "3*t^4", "--trunc", "8", "--json")
    assert p.returncode == 0 and json.loads(p.stdout)["stasheff"]
    p = run("invariant", "--ring", "Q", "--series", "3*t^5 + t^6")
    assert p.stdout.strip() == "height 5, class 3"
    p = run("audit", "--ring", "Zp:5:6[v]", "--series", "5*t + t^2", "--d", "2", "--json")
    names = [v["name"] for v in json.loads(p.stdout)["violations"]]
    assert "u2" in names
    p = run("normalize-cochain", "--ring", "F5", "--series", "2*t + t^2", "--arity", "3", "--seed", "4", "--json")
    out = json.loads(p.stdout)
    assert out["is_normalized"] and out["identity"]
    p = run("selftest", "--seed", "5", "--suite", "7", "--json")
    assert p.returncode == 0 and json.loads(p.stdout)["passed"]
    p = run("height", "--ring", "Zp:5:6", "--series", "5*t + t^3")
    assert p.stdout == "height: 1\nmod-p height: 3\n"
