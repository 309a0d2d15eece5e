import logging
import sys

import click
import yaml
from caput import config, mpiutil

from . import checks, runner
from ..analysis import torsion

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Range(click.ParamType):
    """Param type for an integer or an inclusive a:b range."""

    name = "range"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return runner.parse_range(value)
        except config.CaputConfigError as e:
            self.fail(f"{e}. Expected an integer or a:b with a <= b.", param, ctx)


class CheckList(click.ParamType):
    """Param type for a comma separated list of check names, or `all`."""

    name = "checks"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return runner.parse_checks(value)
        except config.CaputConfigError as e:
            self.fail(f"{e} See `drinfeld-rh checks`.", param, ctx)


RANGE = Range()
CHECKLIST = CheckList()


def setup_logging(levels: dict):
    """Send log output to stderr with per-logger levels.

    `levels` maps logger names to level names; ``root`` is the root logger.
    """
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT, force=True)
    for name, level in levels.items():
        logger = logging.getLogger(None if name == "root" else name)
        logger.setLevel(str(level).upper())


def execute(cfg: runner.VerifyGrid, checks_config: dict = None):
    """Run `cfg`, write its records and exit with the run's exit code."""
    try:
        records, code = runner.run(cfg, checks_config)
    except config.CaputConfigError as e:
        raise click.UsageError(str(e))

    if mpiutil.rank0:
        with click.open_file(cfg.out, "w") as stream:
            runner.write_records(records, cfg.format, stream)

    sys.exit(code)


@click.group()
def cli():
    """Check the Riemann hypothesis on sampled Drinfeld modules."""
    pass


@cli.command()
@click.option("--q", "q", type=RANGE, default="2", help="Size of the constant field.")
@click.option("--n", "n", type=RANGE, default="1", help="Degree [k : F_q], or a:b.")
@click.option("--r", "r", type=RANGE, default="1", help="Rank, or a:b.")
@click.option("--samples", type=int, default=1, help="Modules per cell.")
@click.option("--seed", type=int, default=0, help="Seed of the sampling.")
@click.option(
    "--checks",
    "check_names",
    type=CHECKLIST,
    default="all",
    help="Comma separated check names, or `all`.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    help="JSON lines, or csv with one verdict column per check.",
)
@click.option(
    "--max-field-bits",
    type=int,
    default=torsion.MAX_FIELD_BITS,
    help="Largest ambient field for torsion, as log2 of its size.",
)
@click.option(
    "--max-extension-factor",
    type=int,
    default=torsion.MAX_EXTENSION_FACTOR,
    help="Search torsion in F_{q^m} with m up to this multiple of n.",
)
@click.option(
    "--exhaustive",
    is_flag=True,
    help="Enumerate all modules of cells with |k|^(r+1) <= 2^16.",
)
@click.option(
    "--timing/--no-timing",
    default=True,
    help="Record milliseconds per sample (off: reproducible output).",
)
@click.option("--out", default="-", help="Output path, or - for stdout.")
@click.option(
    "--module",
    "module_text",
    default=None,
    help="Check this one module instead of sampling, e.g. q=2,n=1,g=1;1;1.",
)
@click.option("--log-level", default="WARNING", help="Level of the root logger.")
def verify(
    q,
    n,
    r,
    samples,
    seed,
    check_names,
    fmt,
    max_field_bits,
    max_extension_factor,
    exhaustive,
    timing,
    out,
    module_text,
    log_level,
):
    """Sample modules over a (q, n, r) grid and run the checks on each.

    With --module, check the given module alone; the grid options are ignored.
    """
    setup_logging({"root": log_level})

    settings = {
        "q": q,
        "n": n,
        "r": r,
        "samples": samples,
        "seed": seed,
        "checks": check_names,
        "format": fmt,
        "max_field_bits": max_field_bits,
        "max_extension_factor": max_extension_factor,
        "exhaustive": exhaustive,
        "timing": timing,
        "out": out,
    }
    if module_text is not None:
        settings["module"] = module_text

    try:
        cfg = runner.VerifyGrid.from_config(settings)
    except config.CaputConfigError as e:
        raise click.UsageError(str(e))

    execute(cfg)


@cli.command("run")
@click.argument("configfile", type=click.File("r"), metavar="CONFIG.yaml")
@click.option("--log-level", default=None, help="Override the root logger level.")
def run_config(configfile, log_level):
    """Run the verification described by CONFIG.yaml."""
    try:
        conf = yaml.safe_load(configfile) or {}
    except yaml.YAMLError as e:
        raise click.UsageError(f"Could not parse {configfile.name}: {e}")

    levels = {"root": "WARNING"}
    levels.update(conf.get("logging", {}))
    if log_level:
        levels["root"] = log_level
    setup_logging(levels)

    if "verify" not in conf:
        raise click.UsageError(f"No `verify` section in {configfile.name}.")

    try:
        cfg = runner.VerifyGrid.from_config(conf["verify"])
    except (config.CaputConfigError, ValueError) as e:
        raise click.UsageError(str(e))

    execute(cfg, conf.get("checks_config"))


@cli.command("checks")
def list_checks():
    """List the available checks."""
    for name, task in checks.CHECKS.items():
        summary = (task.__doc__ or "").strip().splitlines()[0]
        click.echo(f"{name:20s}{summary}")


if __name__ == "__main__":
    cli()
