import json

import pytest
from click.testing import CliRunner

from drinfeld_rh.analysis.rh_verify import RHItem
from drinfeld_rh.processing import checks
from drinfeld_rh.processing.client import cli
from drinfeld_rh.processing.runner import EXIT_FAILED, EXIT_SKIPPED, EXIT_USAGE

SMALL = ["verify", "--q", "2", "--n", "1", "--r", "1:2"]
SMALL += ["--samples", "2", "--seed", "42"]


@pytest.fixture
def runner():
    return CliRunner()


def test_checks_command(runner):
    result = runner.invoke(cli, ["checks"])
    assert result.exit_code == 0
    names = [line.split()[0] for line in result.output.splitlines()]
    assert names == list(checks.CHECKS)


def test_verify_passes(runner):
    args = SMALL + ["--checks", "bounds,a0,abs,newton", "--no-timing"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0

    records = [json.loads(line) for line in result.output.splitlines()]
    assert len(records) == 4
    assert records[0]["checks"]["bounds"]["pass"] is True
    assert records[0]["ms"] == 0


def test_verify_to_file_csv(runner, tmp_path):
    out = tmp_path / "records.csv"
    result = runner.invoke(
        cli, SMALL + ["--checks", "bounds", "--format", "csv", "--out", str(out)]
    )
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("q,n,r,g,p,d,H,charpoly,minpoly,bounds")
    assert len(lines) == 5


@pytest.mark.parametrize(
    "args",
    [
        ["--n", "x"],
        ["--r", "3:1"],
        ["--checks", "bounds,nope"],
        ["--q", "6"],
        ["--samples", "0"],
        ["--format", "xml"],
        ["--max-field-bits", "40"],
    ],
)
def test_usage_errors(runner, args):
    result = runner.invoke(cli, ["verify"] + args)
    assert result.exit_code == EXIT_USAGE


def test_skip_exit_code(runner, tmp_path):
    out = tmp_path / "records.jsonl"
    # A/𝔩 for the quadratic prime needs F_4
    args = ["verify", "--r", "2", "--checks", "prop32"]
    args += ["--max-field-bits", "1", "--out", str(out)]
    result = runner.invoke(cli, args)
    assert result.exit_code == EXIT_SKIPPED
    record = json.loads(out.read_text().splitlines()[0])
    assert record["checks"]["prop32"]["skipped"] is True


def test_failure_exit_code(runner, monkeypatch):
    monkeypatch.setattr(
        checks.Bounds, "process", lambda self, ctx: RHItem(False, "i=0: forced")
    )
    result = runner.invoke(cli, SMALL + ["--checks", "bounds"])
    assert result.exit_code == EXIT_FAILED


def test_verify_single_module(runner):
    args = ["verify", "--module", "q=2,n=1,g=1;1;1", "--no-timing"]
    args += ["--checks", "bounds,a0,abs,newton,agreement"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output

    records = [json.loads(line) for line in result.output.splitlines()]
    assert len(records) == 1
    assert (records[0]["q"], records[0]["n"], records[0]["r"]) == (2, 1, 2)
    assert records[0]["g"] == "1;1;1"
    assert records[0]["charpoly"] == "1,1|1|1"
    assert all(v["pass"] for v in records[0]["checks"].values())


@pytest.mark.parametrize(
    "text", ["q=2,n=1,g=1", "q=6,n=1,g=1;1", "nonsense", "q=2,n=1,g=1;0"]
)
def test_verify_bad_module(runner, text):
    result = runner.invoke(cli, ["verify", "--module", text])
    assert result.exit_code == EXIT_USAGE


def test_run_config(runner, tmp_path):
    conf = tmp_path / "verify.yaml"
    conf.write_text(
        "logging:\n"
        "    root: INFO\n"
        "verify:\n"
        "    q: 2\n"
        "    n: 1\n"
        "    r: '1:2'\n"
        "    samples: 1\n"
        "    seed: 42\n"
        "    checks: [bounds, torsion-structure]\n"
        "    timing: false\n"
        "checks_config:\n"
        "    torsion-structure:\n"
        "        num_height_samples: 2\n"
    )
    result = runner.invoke(cli, ["run", str(conf)])
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize(
    "text",
    [
        "verify:\n    q: 6\n",
        "logging:\n    root: INFO\n",
        "verify:\n    q: 2\nchecks_config:\n    nope: {}\n",
        "verify: [unbalanced\n",
    ],
)
def test_run_config_errors(runner, tmp_path, text):
    conf = tmp_path / "bad.yaml"
    conf.write_text(text)
    result = runner.invoke(cli, ["run", str(conf)])
    assert result.exit_code == EXIT_USAGE
