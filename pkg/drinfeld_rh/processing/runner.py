"""Verification runs over grids of sampled modules

A run is the caput pipeline task :py:class:`VerifyGrid`. Every cell
``(q, n, r)`` of the grid contributes `samples` modules (or all of them with
`exhaustive` on small cells). The samples are split across MPI ranks with
:py:mod:`caput.mpiutil`, each sample is checked independently and the records
are gathered back in sample order, so that the output does not depend on the
number of ranks.

Classes
=======

.. autosummary::
    :toctree:

    VerifyGrid

Functions
=========

.. autosummary::
    :toctree:

    evaluate_sample
    run
    write_records
    exit_code
"""

import csv
import io
import itertools
import json
import logging
import time
from typing import List, Tuple

from caput import config, mpiutil, pipeline

from ..analysis import torsion
from ..core.drinfeld import DrinfeldModule
from ..core.errors import CapExceededError, VerificationError
from ..core.polyring import prime_power
from . import checks as checks_mod
from . import sampling

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_SKIPPED = 3

# Columns of the csv sink, before the per-check verdicts
CSV_COLUMNS = ["q", "n", "r", "g", "p", "d", "H", "charpoly", "minpoly"]


def parse_range(value) -> List[int]:
    """Parse an integer or an inclusive ``a:b`` range."""
    if isinstance(value, int) and not isinstance(value, bool):
        return [value]
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]

    text = str(value).strip()
    try:
        if ":" in text:
            lo, hi = (int(part) for part in text.split(":"))
        else:
            lo = hi = int(text)
    except ValueError:
        raise config.CaputConfigError(f"Not an integer or a:b range: {value!r}")

    if lo > hi:
        raise config.CaputConfigError(f"Empty range {value!r}")

    return list(range(lo, hi + 1))


def parse_checks(value) -> List[str]:
    """Parse a check selector: a list or comma list of names, or ``all``."""
    if isinstance(value, str):
        value = [name.strip() for name in value.split(",") if name.strip()]

    names = list(value)
    if names == ["all"]:
        return list(checks_mod.CHECKS)

    unknown = [name for name in names if name not in checks_mod.CHECKS]
    if unknown or not names:
        raise config.CaputConfigError(
            f"Unknown checks {unknown}. Valid names: {', '.join(checks_mod.CHECKS)}."
        )

    # Report order
    return [name for name in checks_mod.CHECKS if name in names]


class VerifyGrid(pipeline.TaskBase):
    """A verification run, as a caput pipeline task.

    Each call of :py:meth:`next` checks one sample of this rank and returns
    its record; :py:meth:`finish` gathers the records of all ranks and sets
    :py:attr:`exit_code`. :py:func:`run` drives the task outside a pipeline.

    Attributes
    ----------
    q, n, r : list of int
        Field sizes, extension degrees and ranks; each an integer or an
        inclusive ``a:b`` range.
    samples : int
        Modules per cell.
    seed : int
        Seed of the sampling and of the randomised checks.
    checks : list of str
        Enabled check names, or ``all``.
    format : str
        ``json`` (one record per line) or ``csv``.
    max_field_bits : int
        Largest ambient field, as ``log2`` of its size. At most 24.
    max_extension_factor : int
        Torsion is searched in ``F_{q^m}`` with ``m <= max_extension_factor * n``.
    exhaustive : bool
        Enumerate every module of cells with ``|k|^(r+1) <= 2^16``.
    timing : bool
        Record the time per sample. Off, ``ms`` is zero and output is
        reproducible byte for byte.
    out : str
        Output path, or ``-`` for standard output.
    module : str, optional
        A single module in text form, e.g. ``q=2,n=1,g=1;1;1``. Replaces the
        grid.
    checks_config : dict, optional
        Per-check settings, keyed by check name.
    exit_code : int
        Set by :py:meth:`finish`.
    """

    q = config.Property(proptype=parse_range, default=[2])
    n = config.Property(proptype=parse_range, default=[1])
    r = config.Property(proptype=parse_range, default=[1])
    samples = config.Property(proptype=int, default=1)
    seed = config.Property(proptype=int, default=0)
    checks = config.Property(proptype=parse_checks, default=list(checks_mod.CHECKS))
    format = config.enum(["json", "csv"], default="json")
    max_field_bits = config.Property(proptype=int, default=torsion.MAX_FIELD_BITS)
    max_extension_factor = config.Property(
        proptype=int, default=torsion.MAX_EXTENSION_FACTOR
    )
    exhaustive = config.Property(proptype=bool, default=False)
    timing = config.Property(proptype=bool, default=True)
    out = config.Property(proptype=str, default="-")
    module = config.Property(proptype=str, default=None)
    checks_config = config.Property(proptype=dict, default=None)

    def validate(self):
        """Check the values that the property types cannot.

        Raises
        ------
        CaputConfigError
        """
        for q in self.q:
            try:
                prime_power(q)
            except ValueError:
                raise config.CaputConfigError(f"q={q} is not a prime power.")

        if min(self.n) < 1 or min(self.r) < 1:
            raise config.CaputConfigError("n and r must be positive.")
        if self.samples < 1:
            raise config.CaputConfigError(f"samples={self.samples} must be >= 1.")
        if self.seed < 0 or self.seed >= 2**64:
            raise config.CaputConfigError(f"seed={self.seed} is not a 64-bit seed.")
        if not 1 <= self.max_field_bits <= torsion.MAX_FIELD_BITS:
            raise config.CaputConfigError(
                f"max_field_bits={self.max_field_bits} must be in "
                f"[1, {torsion.MAX_FIELD_BITS}]."
            )
        if self.max_extension_factor < 1:
            raise config.CaputConfigError("max_extension_factor must be positive.")
        if self.module is not None:
            self.parsed_module()

    def parsed_module(self) -> DrinfeldModule:
        """The module given by `module`.

        Raises
        ------
        CaputConfigError
            If the text is not a valid module.
        """
        try:
            return DrinfeldModule.parse(self.module)
        except (ValueError, CapExceededError) as e:
            raise config.CaputConfigError(f"Bad module {self.module!r}: {e}")

    def cells(self):
        if self.module is not None:
            phi = self.parsed_module()
            return [(phi.q, phi.n, phi.rank)]
        return list(itertools.product(self.q, self.n, self.r))

    def work_items(self) -> List[Tuple[int, int, int, int, bool]]:
        """``(q, n, r, index, enumerated)`` for every sample, in output order."""
        if self.module is not None:
            return [(*self.cells()[0], 0, False)]

        items = []
        for q, n, r in self.cells():
            if self.exhaustive and sampling.can_enumerate(q, n, r):
                count = sampling.module_count(q, n, r)
                items += [(q, n, r, i, True) for i in range(count)]
                continue

            if self.exhaustive:
                logger.warning(
                    f"Cell q={q}, n={n}, r={r} is too large to enumerate; sampling."
                )
            items += [(q, n, r, i, False) for i in range(self.samples)]

        return items

    def setup(self):
        """Validate the parameters and split the samples across ranks.

        Raises
        ------
        CaputConfigError
        """
        self.validate()
        self._tasks = checks_mod.build_checks(self.checks, self.checks_config)

        items = self.work_items()
        _, start, end = mpiutil.split_local(len(items))
        logger.info(f"Rank {mpiutil.rank} checking samples [{start}, {end}).")

        self._pending = iter(items[start:end])
        self._local = []
        self.exit_code = None

    def next(self) -> dict:
        """Check the next local sample.

        Returns
        -------
        record : dict
            The report record of the sample.
        """
        item = next(self._pending, None)
        if item is None:
            raise pipeline.PipelineStopIteration

        phi = _module(self, item)
        logger.debug(f"Sample {item[3]} of cell {item[:3]}: {phi}")
        ctx = checks_mod.SampleContext(
            phi,
            seed=self.seed,
            index=item[3],
            max_extension_factor=self.max_extension_factor,
            max_field_bits=self.max_field_bits,
        )
        record = evaluate_sample(ctx, self._tasks, timing=self.timing)
        self._local.append(record)
        return record

    def finish(self) -> list:
        """Gather the records of all ranks and set :py:attr:`exit_code`.

        Returns
        -------
        records : list of dict
            One record per sample, in sample order, on every rank.
        """
        comm = mpiutil.world
        chunks = comm.allgather(self._local) if comm is not None else [self._local]
        records = [rec for chunk in chunks for rec in chunk]

        self.exit_code = exit_code(records)
        _log_summary(records, self.exit_code)

        return records


def _module(cfg: VerifyGrid, item):
    q, n, r, index, enumerated = item
    if cfg.module is not None:
        return cfg.parsed_module()
    if enumerated:
        return sampling.module_at(q, n, r, index)
    return sampling.sample_module(q, n, r, cfg.seed, index)


def evaluate_sample(ctx: checks_mod.SampleContext, tasks, timing: bool = True) -> dict:
    """Run the check tasks on one sample and build its report record."""
    phi = ctx.phi
    start = time.perf_counter()

    verdicts = {task.name: task.run(ctx).to_dict() for task in tasks}

    try:
        charpoly, minpoly = str(ctx.P), str(ctx.m)
    except VerificationError:
        charpoly = minpoly = ""

    ms = int(round((time.perf_counter() - start) * 1000)) if timing else 0

    return {
        "q": phi.q,
        "n": phi.n,
        "r": phi.rank,
        "g": ";".join(str(c) for c in phi.g),
        "p": str(phi.prime),
        "d": phi.d,
        "H": phi.height,
        "charpoly": charpoly,
        "minpoly": minpoly,
        "checks": verdicts,
        "ms": ms,
    }


def exit_code(records) -> int:
    """0 if everything passed, 1 on any failure, else 3 if anything was skipped."""
    verdicts = [v for rec in records for v in rec["checks"].values()]
    if any(not v["pass"] and not v.get("skipped") for v in verdicts):
        return EXIT_FAILED
    if any(v.get("skipped") for v in verdicts):
        return EXIT_SKIPPED
    return EXIT_OK


def run(cfg: VerifyGrid, checks_config: dict = None):
    """Drive `cfg` through setup, one step per sample, and finish.

    Parameters
    ----------
    cfg : VerifyGrid
    checks_config : dict, optional
        Per-check settings, keyed by check name. Overrides
        :py:attr:`VerifyGrid.checks_config`.

    Returns
    -------
    records : list of dict
        One record per sample, in sample order. Every rank gets the full list.
    code : int
        Process exit code.
    """
    if checks_config is not None:
        cfg.checks_config = checks_config

    cfg.setup()
    while True:
        try:
            cfg.next()
        except pipeline.PipelineStopIteration:
            break
    records = cfg.finish()

    return records, cfg.exit_code


def _log_summary(records, code: int):
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for rec in records:
        for v in rec["checks"].values():
            key = "skipped" if v.get("skipped") else ("pass" if v["pass"] else "fail")
            counts[key] += 1

    logger.info(
        f"{len(records)} samples, {counts['pass']} checks passed, "
        f"{counts['fail']} failed, {counts['skipped']} skipped; exit code {code}."
    )


def _verdict(v: dict) -> str:
    if v.get("skipped"):
        return "skip"
    return "pass" if v["pass"] else "fail"


def write_records(records, fmt: str, stream):
    """Write records as JSON lines or as csv with fixed columns."""
    if fmt == "json":
        for rec in records:
            stream.write(json.dumps(rec, ensure_ascii=False) + "\n")
        return

    names = list(records[0]["checks"]) if records else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS + names + ["ms"])
    for rec in records:
        row = [rec[col] for col in CSV_COLUMNS]
        row += [_verdict(rec["checks"][name]) for name in names]
        writer.writerow(row + [rec["ms"]])
    stream.write(buf.getvalue())
