import json
import subprocess
import sys

import pytest

from maxclass.cli import main
from maxclass.report import SCHEMA
from maxclass.verify import SUITES, VerifySuite, parse_n_range, run_verify
from maxclass.errors import UsageError

# Smallest range each suite accepts; keeps the CI sweep quick.
SMALL_RANGES = {
    "lemma1": "2..3", "lemma3": "2..3", "lemma4": "3..3", "lemma5": "3..3", "lemma6": "3..3",
    "lemma7": "2..3", "lemma8": "3..3", "lemma10": "2..3", "eq2": "2..3", "eq13": "3..3",
    "theorem": "2..3", "corollary": "2..6",
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def strip_elapsed(line: str) -> dict:
    d = json.loads(line)
    d.pop("elapsed_ms", None)
    for c in d.get("checks", []):
        c.pop("elapsed_ms", None)
    return d


def test_every_suite_is_covered():
    assert set(SMALL_RANGES) == set(SUITES)


@pytest.mark.parametrize("suite", sorted(SMALL_RANGES))
def test_every_suite_passes_via_cli(capsys, suite):
    code, out = run(capsys, "verify", "--suite", suite, "--n-range", SMALL_RANGES[suite],
                    "--samples", "200", "--format", "text")
    assert code == 0, out
    lines = out.strip().splitlines()
    assert all(l.startswith("PASS") for l in lines[:-1])


def test_verify_examples():
    for suite, rng_ in (("theorem", (2, 3)), ("lemma1", (2, 4)), ("lemma5", (3, 4))):
        report = run_verify(VerifySuite(suite, rng_, samples=100))
        assert report.passed and not report.failures()


def test_verify_out_of_cap_is_usage_error(capsys):
    with pytest.raises(UsageError):
        run_verify(VerifySuite("lemma8", (3, 5)))
    code, _ = run(capsys, "verify", "--suite", "lemma8", "--n-range", "3..5")
    assert code == 2


def test_parse_n_range():
    assert parse_n_range("2..4") == (2, 4)
    assert parse_n_range("3") == (3, 3)
    with pytest.raises(UsageError):
        parse_n_range("4..2")


def test_theta_json(capsys):
    code, out = run(capsys, "theta", "--family", "D", "--n", "3", "--method", "brute")
    assert code == 0
    assert out.count("\n") == 1
    assert out.startswith('{"schema":')
    d = json.loads(out)
    assert d["schema"] == SCHEMA
    assert (d["total"], d["type1"], d["type2"], d["involutions"]) == (1280, 768, 512, 1279)
    assert d["budget_exhausted"] is False


def test_json_is_byte_stable_modulo_elapsed(capsys):
    argvs = [
        ("theta", "--family", "SD", "--n", "3", "--method", "structural"),
        ("census", "--n", "3", "--subgroup", "h", "--sigma", "circledast", "--i", "2"),
        ("verify", "--suite", "lemma3", "--n-range", "4..4", "--samples", "100", "--seed", "5"),
    ]
    for argv in argvs:
        _, a = run(capsys, *argv)
        _, b = run(capsys, *argv)
        assert strip_elapsed(a) == strip_elapsed(b)
        assert a.split('"elapsed_ms"')[0] == b.split('"elapsed_ms"')[0]


def test_census_csv(capsys):
    code, out = run(capsys, "census", "--n", "3", "--subgroup", "h", "--i", "1", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "spec,n,order,empty,elapsed_ms"
    assert row.startswith('"h(star,1)",3,0,true,') or row.startswith("h(star,1),3,0,true,")


def test_census_m_with_z(capsys):
    code, out = run(capsys, "census", "--n", "3", "--subgroup", "m", "--z", "1+a")
    assert code == 0 and json.loads(out)["order"] > 0


def test_verify_csv_header(capsys):
    code, out = run(capsys, "verify", "--suite", "corollary", "--n-range", "3..4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "suite,check,n,expected,actual,pass"


def test_usage_errors(capsys):
    assert run(capsys, "theta", "--family", "SD", "--n", "2")[0] == 2
    assert run(capsys, "theta", "--family", "X", "--n", "3")[0] == 2
    assert run(capsys, "census", "--n", "3", "--subgroup", "h")[0] == 2
    assert run(capsys, "census", "--n", "2", "--subgroup", "w", "--sigma", "circledast")[0] == 2
    assert run(capsys, "census", "--n", "5", "--subgroup", "v")[0] == 3
    assert main(["theta"]) == 2
    assert run(capsys, "verify", "--n-range", "4..2")[0] == 2


def test_budget_exhausted_exit(capsys):
    code, out = run(capsys, "--budget", "0", "theta", "--family", "D", "--n", "3", "--method", "structural")
    assert code == 3
    d = json.loads(out)
    assert d["budget_exhausted"] and d["total"] is None


def test_check_flag(capsys):
    assert run(capsys, "theta", "--family", "Q", "--n", "3", "--method", "brute", "--check")[0] == 0
    assert run(capsys, "theta", "--family", "Q", "--n", "4", "--check")[0] == 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out = run(capsys, "theta", "--family", "Q", "--n", "2", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["total"] == 16
    bad = tmp_path / "missing" / "r.json"
    assert run(capsys, "theta", "--family", "Q", "--n", "2", "--out", str(bad))[0] == 1


def test_env_precedence(monkeypatch, capsys):
    monkeypatch.setenv("MAXCLASS_BUDGET", "0")
    code, _ = run(capsys, "theta", "--family", "D", "--n", "3", "--method", "brute")
    assert code == 3
    code, _ = run(capsys, "theta", "--family", "D", "--n", "3", "--method", "brute", "--budget", "60")
    assert code == 0
    monkeypatch.setenv("MAXCLASS_WORKERS", "bogus")
    assert run(capsys, "theta", "--family", "D", "--n", "2")[0] == 2
    monkeypatch.setenv("MAXCLASS_WORKERS", "2")
    monkeypatch.delenv("MAXCLASS_BUDGET")
    code, out = run(capsys, "theta", "--family", "D", "--n", "3", "--method", "brute")
    assert code == 0 and json.loads(out)["total"] == 1280


def test_text_format(capsys):
    code, out = run(capsys, "theta", "--family", "D", "--n", "2", "--format", "text")
    assert code == 0 and "48" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "maxclass", "theta", "--family", "D", "--n", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["total"] == 589824
