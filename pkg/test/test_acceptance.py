"""Random grid over q ∈ {2, 3}, n, r ∈ {1, 2, 3}."""

import collections
import itertools
import json
from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

from drinfeld_rh.processing import checks, sampling
from drinfeld_rh.processing.checks import SampleContext
from drinfeld_rh.processing.client import cli

GRID = list(itertools.product([2, 3], [1, 2, 3], [1, 2, 3]))

SAMPLES = 50
STRUCTURE_SAMPLES = 10

# Largest share of skipped verdicts tolerated per check and cell
MAX_SKIP_RATE = 0.1

CONFIG = Path(__file__).parent / "verify_config.yaml"


def _grid_verdicts(q, n, r, names, samples):
    tasks = checks.build_checks(names)
    verdicts = collections.defaultdict(list)

    for index, phi in enumerate(sampling.sample_modules(q, n, r, samples, seed=42)):
        ctx = SampleContext(phi, seed=42, index=index)
        for task in tasks:
            verdicts[task.name].append((str(phi), task.run(ctx)))

    return verdicts


def _assert_verdicts(verdicts, samples):
    for name, results in verdicts.items():
        assert len(results) == samples

        failed = [phi for phi, v in results if not v.skipped and not v.passed]
        assert not failed, (name, failed)

        skipped = sum(v.skipped for _, v in results)
        assert skipped <= MAX_SKIP_RATE * samples, (name, skipped)


@pytest.mark.slow
@pytest.mark.parametrize("q, n, r", GRID)
def test_rh_grid(q, n, r):
    names = ["bounds", "a0", "abs", "newton", "agreement"]
    verdicts = _grid_verdicts(q, n, r, names, SAMPLES)
    _assert_verdicts(verdicts, SAMPLES)

    # The four RH items never depend on the caps
    for name in ["bounds", "a0", "abs", "newton"]:
        assert not any(v.skipped for _, v in verdicts[name])


@pytest.mark.slow
@pytest.mark.parametrize("q, n, r", GRID)
def test_structure_grid(q, n, r):
    names = ["torsion-structure", "prop32", "prop33", "degdet", "switch", "kernel"]
    verdicts = _grid_verdicts(q, n, r, names, STRUCTURE_SAMPLES)
    _assert_verdicts(verdicts, STRUCTURE_SAMPLES)

    switch = [v for _, v in verdicts["switch"] if not v.skipped]
    assert len(switch) >= 10
    assert all(v.passed for v in switch)


@pytest.mark.slow
def test_acceptance_config(tmp_path):
    conf = yaml.safe_load(CONFIG.read_text())
    out = tmp_path / "records.jsonl"
    conf["verify"]["out"] = str(out)

    path = tmp_path / "verify_config.yaml"
    path.write_text(yaml.safe_dump(conf))

    result = CliRunner().invoke(cli, ["run", str(path)])
    assert result.exit_code == 0, result.output

    records = [json.loads(line) for line in out.read_text().splitlines()]
    counts = collections.Counter((rec["q"], rec["n"], rec["r"]) for rec in records)
    assert counts == {cell: SAMPLES for cell in GRID}

    for rec in records:
        assert list(rec["checks"]) == list(checks.CHECKS)
        assert all(v["pass"] for v in rec["checks"].values()), rec
