from __future__ import annotations

import json

import pytest

from pauliscope import __version__
from pauliscope.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, RunConfig, UsageError, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and __version__ in out


@pytest.mark.parametrize("table, fixture", [("commutation", "two_qubit_commutation.csv"), ("products", "two_qubit_products.csv")])
def test_graph_csv_matches_fixtures(capsys, fixtures_dir, table, fixture):
    code, out, _ = run(capsys, "graph", "--format", "csv", "--table", table)
    assert code == EXIT_OK
    assert out == (fixtures_dir / fixture).read_text(encoding="utf-8")


def test_graph_json(capsys):
    code, out, _ = run(capsys, "graph", "--d", "3", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and len(data["labels"]) == 80 and len(data["edges"]) == 1000


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--format", "dot")
    assert code == EXIT_OK and out.count("--") == 45


def test_graph_text(capsys):
    code, out, _ = run(capsys, "graph", "--n", "3")
    assert code == EXIT_OK
    assert "vertices: 63" in out and "srg(63, 30, 13, 15)" in out


def test_graph_blocks(capsys):
    code, out, _ = run(capsys, "graph", "--n", "3", "--blocks")
    assert code == EXIT_OK and "A = O + identity: yes" in out


def test_blocks_reject_qutrits(capsys):
    code, _, err = run(capsys, "graph", "--d", "3", "--blocks")
    assert code == EXIT_USAGE and "qubits" in err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "graph", "--format", "json", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["n"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["graph", "--d", "5"],
        ["graph", "--n", "0"],
        ["graph", "--format", "xml"],
        ["frobnicate"],
        [],
        ["verify", "--scope", "nowhere"],
        ["verify", "--threads", "0"],
        ["graph", "--cap-vertices", "-3"],
        ["graph", "--n", "4", "--cap-vertices", "100"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("PAULISCOPE_THREADS", "many")
    code, _, err = run(capsys, "verify", "--scope", "ringline")
    assert code == EXIT_USAGE and "PAULISCOPE_THREADS" in err


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("graph", d=4)
    with pytest.raises(UsageError):
        RunConfig("verify", threads=0)


@pytest.mark.parametrize("scope", ["two-qubit", "ringline", "qutrit"])
def test_verify_scopes(capsys, scope):
    code, out, _ = run(capsys, "verify", "--scope", scope)
    assert code == EXIT_OK
    assert "FAIL " not in out
    assert out.strip().splitlines()[-1].endswith("skipped")


def test_verify_reports_flags_without_failing(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "two-qubit")
    assert code == EXIT_OK
    assert "FLAG  [two-qubit] CB girth: expected 3; computed 4" in out


def test_verify_threads_do_not_change_output(capsys, monkeypatch):
    _, one, _ = run(capsys, "verify", "--scope", "all", "--cap-vertices", "100")
    monkeypatch.setenv("PAULISCOPE_THREADS", "4")
    _, four, _ = run(capsys, "verify", "--scope", "all", "--cap-vertices", "100")
    assert one == four
    assert "SKIP" in one  # N=4 exceeds the cap


def test_report(capsys, tmp_path):
    target = tmp_path / "report.md"
    code, _, _ = run(capsys, "report", "--out", str(target), "--cap-vertices", "100")
    text = target.read_text(encoding="utf-8")
    assert code == EXIT_OK
    assert text.startswith("# pauliscope report")
    assert "## Discrepancies (reported, not failed)" in text
    assert "srg(63, 30, 13, 15)" in text


def test_mismatch_exit_code_is_distinct():
    assert len({EXIT_OK, EXIT_MISMATCH, EXIT_USAGE}) == 3
