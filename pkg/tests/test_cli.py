from pathlib import Path

import pytest
from click.testing import CliRunner

from sbq import experiments
from sbq.cli import main, parse_config
from sbq.exceptions import ConfigError, NonConvergenceError

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

SMALL = """\
[run]
seed = 3

[invert-l2 circle]
model = circle
t = 0.1
n_terms = 4
max_index = 12

[surjectivity circle]
model = circle
t = 0.1
"""


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, tmp_path, text, *args):
    cfg = tmp_path / "cfg.ini"
    cfg.write_text(text)
    return runner.invoke(main, ["run", str(cfg), "--out", str(tmp_path / "out"), *args])


def test_list_is_complete_and_stable(runner):
    a = runner.invoke(main, ["list"])
    b = runner.invoke(main, ["list"])
    assert a.exit_code == 0 and a.output == b.output
    lines = a.output.strip().splitlines()
    assert len(lines) == 8
    assert [ln.split()[0] for ln in lines] == list(experiments.EXPERIMENTS)


def test_version(runner):
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0 and "sbq" in res.output


def test_run_writes_csv_and_summary(runner, tmp_path):
    res = _run(runner, tmp_path, SMALL, "--reproducible")
    assert res.exit_code == 0, res.output
    out = tmp_path / "out"
    assert {p.name for p in out.iterdir()} == {
        "invert-l2_circle.csv", "surjectivity_circle.csv", "summary.txt"}
    text = (out / "invert-l2_circle.csv").read_text()
    assert text.startswith("R,error\n")
    assert "# seed = 3" in text and "timestamp" not in text
    assert "ALL CHECKS PASSED" in (out / "summary.txt").read_text()


def test_reproducible_runs_are_byte_identical(runner, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    _run(runner, a, SMALL, "--reproducible")
    _run(runner, b, SMALL, "--reproducible")
    for p in (a / "out").iterdir():
        assert p.read_bytes() == (b / "out" / p.name).read_bytes()


def test_seed_flag_changes_random_functions(runner, tmp_path):
    _run(runner, tmp_path, SMALL, "--reproducible", "--seed", "99")
    assert "# seed = 99" in (tmp_path / "out" / "invert-l2_circle.csv").read_text()


def test_timestamp_without_reproducible(runner, tmp_path):
    _run(runner, tmp_path, SMALL)
    assert "# timestamp = " in (tmp_path / "out" / "invert-l2_circle.csv").read_text()


def test_gnuplot_script(runner, tmp_path):
    _run(runner, tmp_path, SMALL, "--emit-gnuplot-script")
    gp = (tmp_path / "out" / "invert-l2_circle.gp").read_text()
    assert "invert-l2_circle.csv" in gp and gp.startswith("set datafile separator")


def test_failed_check_exit_code(runner, tmp_path):
    res = _run(runner, tmp_path, SMALL, "--tol", "1e-300")
    assert res.exit_code == 1
    assert "FAIL" in res.output


@pytest.mark.parametrize("text, line", [
    ("[run]\nseed = 1\n[invert-l2 x\n", 3),
    ("[run]\nseed = 1\n[no-such-experiment]\n", 3),
    ("[invert-l2 a]\nmodel circle\n", 2),
    ("[invert-l2 a]\nt = 1\nt = 2\n", 3),
    ("[invert-l2 a]\nt = abc\n", 2),
    ("[invert-l2 a]\nmodel = sphere\n", 2),
    ("[run]\nseed = 1\n", 1),
])
def test_config_errors_report_line(runner, tmp_path, text, line):
    res = _run(runner, tmp_path, text)
    assert res.exit_code == 2
    assert f"line {line}, column" in res.output


def test_bad_seed_is_config_error(runner, tmp_path):
    res = _run(runner, tmp_path, "[run]\nseed = x\n[lemma5]\n")
    assert res.exit_code == 2


def test_missing_config_file(runner, tmp_path):
    res = runner.invoke(main, ["run", str(tmp_path / "nope.ini")])
    assert res.exit_code == 2


def test_capability_exit_code(runner, tmp_path):
    text = "[path-agreement s]\nmodel = synthetic\ndim = 3\nt = 0.1\n"
    res = _run(runner, tmp_path, text)
    assert res.exit_code == 3
    assert "synthetic" in res.output


def test_nonconvergence_exit_code(runner, tmp_path, monkeypatch):
    def boom(sec, rng, tol):
        raise NonConvergenceError("forced", 1.0)

    monkeypatch.setitem(experiments.EXPERIMENTS, "lemma5", boom)
    res = _run(runner, tmp_path, "[lemma5]\n")
    assert res.exit_code == 4


def test_parse_config_sections():
    opts, secs = parse_config("[run]\nseed = 4 ; comment\n\n[lemma5 a]\n# note\nR = 1\n")
    assert opts == {"seed": "4"}
    assert [s.header for s in secs] == ["lemma5 a"]
    assert secs[0].kind == "lemma5" and secs[0].label == "a"


def test_parse_config_key_outside_section():
    with pytest.raises(ConfigError) as info:
        parse_config("t = 1\n")
    assert info.value.line == 1


def test_shipped_config_passes(runner, tmp_path):
    res = runner.invoke(main, ["run", str(CONFIGS / "all.ini"), "--out", str(tmp_path),
                               "--reproducible"])
    assert res.exit_code == 0, res.output
    assert "ALL CHECKS PASSED" in res.output
