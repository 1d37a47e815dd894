"""Method x problem grids and Dolan-More performance profiles.

Run records and profiles are written as plain CSV (UTF-8, ``\\n`` line
endings, floats in shortest round-trip form) so external tools can plot them.
Time-based profiles depend on the machine and are not reproducible.
"""

import csv
import io
import logging
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .directions import MethodSpec
from .solver import CONVERGED, SolverConfig, minimize

log = logging.getLogger(__name__)

RUN_HEADER = ("problem", "method", "status", "iters", "fevals", "gevals", "wall_time", "f_final", "gnorm_final")
METRICS = ("iters", "fevals", "gevals", "time")
FAILED = "failed"

R_M_FLOOR = 4.0


class CsvFormatError(ValueError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class RunRecord:
    problem: str
    method: str
    status: str
    iters: int
    fevals: int
    gevals: int
    wall_time: float
    f_final: float
    gnorm_final: float

    @property
    def solved(self):
        return self.status == CONVERGED

    def cost(self, metric):
        if metric == "time":
            return self.wall_time
        return getattr(self, metric)


def _run_one(entry, method, base):
    config = replace(base, method=replace(base.method, kind=method))
    try:
        rep = minimize(entry.objective, entry.x0, config)
    except Exception as exc:  # a crashing objective only fails its own cell
        log.warning("%s/%s crashed: %s", entry.name, method, exc)
        return RunRecord(entry.name, method, FAILED, 0, 0, 0, 0.0, math.nan, math.nan)
    return RunRecord(
        entry.name, method, rep.status, rep.iters, rep.fevals, rep.gevals,
        rep.wall_time, rep.f_final, rep.gnorm_final,
    )


def run_grid(problems, methods, config=None, jobs=1):
    """Solve every problem with every method.

    ``methods`` are method names; all other settings come from ``config``.
    Records come back sorted by (problem order, method order) regardless of
    ``jobs``.
    """
    if not problems or not methods:
        raise ValueError("need at least one problem and one method")
    base = config if config is not None else SolverConfig()
    methods = [MethodSpec(m).kind for m in methods]
    cells = [(p, m) for p in problems for m in methods]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda c: _run_one(c[0], c[1], base), cells))
    return [_run_one(p, m, base) for p, m in cells]


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RUN_HEADER)
    for r in records:
        w.writerow([_fmt(getattr(r, f.name)) for f in fields(RunRecord)])
    return buf.getvalue()


def write_records(records, path):
    _atomic_write(path, records_to_csv(records))


def parse_records(text):
    rows = csv.reader(io.StringIO(text))
    try:
        header = next(rows)
    except StopIteration:
        raise CsvFormatError("empty file, expected a header", 1) from None
    if tuple(header) != RUN_HEADER:
        raise CsvFormatError(f"bad header {','.join(header)!r}", 1)
    out = []
    for lineno, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != len(RUN_HEADER):
            raise CsvFormatError(f"expected {len(RUN_HEADER)} fields, got {len(row)}", lineno)
        try:
            out.append(RunRecord(
                row[0], row[1], row[2], int(row[3]), int(row[4]), int(row[5]),
                float(row[6]), float(row[7]), float(row[8]),
            ))
        except ValueError as exc:
            raise CsvFormatError(str(exc), lineno) from None
    return out


def read_records(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_records(fh.read())


@dataclass
class ProfileTable:
    """Performance ratios of ``solvers`` (columns) on ``problems`` (rows).

    ``cost`` holds NaN where a solver failed; ``ratios`` holds ``r_M`` there.
    """

    solvers: list
    problems: list
    cost: np.ndarray
    ratios: np.ndarray
    r_m: float
    dropped: list

    def p(self, solver, t):
        """Fraction of problems where ``solver`` is within a factor ``t`` of the best."""
        j = self.solvers.index(solver) if isinstance(solver, str) else solver
        if not self.problems:
            return 0.0
        return float(np.count_nonzero(self.ratios[:, j] <= t)) / len(self.problems)

    def breakpoints(self):
        """Distinct ratio values, where the step functions can jump, plus ``r_M``."""
        pts = np.unique(self.ratios)
        if pts.size == 0 or pts[-1] < self.r_m:
            pts = np.append(pts, self.r_m)
        return [float(v) for v in pts]

    def steps(self):
        """Rows ``(t, P_1(t), ..., P_ns(t))`` at every breakpoint."""
        return [(t, *[self.p(j, t) for j in range(len(self.solvers))]) for t in self.breakpoints()]


def profile_from_costs(cost, solvers, problems):
    """Profile from a cost matrix (problems x solvers); NaN or inf marks failure.

    Problems no solver could solve are dropped and listed in ``dropped``.
    """
    cost = np.asarray(cost, dtype=np.float64)
    if cost.size == 0:
        raise ValueError("empty cost table")
    if cost.shape != (len(problems), len(solvers)):
        raise ValueError("cost shape does not match problem and solver lists")
    ok = np.isfinite(cost)
    if np.any(cost[ok] <= 0):
        raise ValueError("costs must be positive")
    keep = ok.any(axis=1)
    dropped = [p for p, k in zip(problems, keep) if not k]
    for p in dropped:
        log.warning("dropping %s: no solver succeeded", p)
    cost = cost[keep]
    ok = ok[keep]
    problems = [p for p, k in zip(problems, keep) if k]
    ratios = np.full(cost.shape, np.inf)
    if cost.size:
        best = np.min(np.where(ok, cost, np.inf), axis=1, keepdims=True)
        ratios = np.where(ok, cost / best, np.inf)
        # ties at the minimum get exactly 1
        ratios[ok & (cost == best)] = 1.0
    finite = ratios[np.isfinite(ratios)]
    r_m = max(2.0 * float(finite.max()), R_M_FLOOR) if finite.size else R_M_FLOOR
    ratios[~np.isfinite(ratios)] = r_m
    cost = np.where(ok, cost, np.nan)
    return ProfileTable(list(solvers), problems, cost, ratios, r_m, dropped)


def profile(records, metric="iters"):
    """Dolan-More profile of run records under ``metric``.

    Counts of zero (a start that already satisfies the stopping test) are
    raised to one so ratios stay defined; times are floored at 1 ns.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    if not records:
        raise ValueError("empty cost table")
    problems, solvers = [], []
    seen = {}
    for r in records:
        if r.problem not in problems:
            problems.append(r.problem)
        if r.method not in solvers:
            solvers.append(r.method)
        key = (r.problem, r.method)
        if key in seen:
            raise ValueError(f"duplicate record for {key}")
        seen[key] = r
    floor = 1e-9 if metric == "time" else 1.0
    cost = np.full((len(problems), len(solvers)), np.nan)
    for (p, s), r in seen.items():
        if r.solved:
            cost[problems.index(p), solvers.index(s)] = max(float(r.cost(metric)), floor)
    return profile_from_costs(cost, solvers, problems)


def profile_to_csv(table):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", *table.solvers])
    for row in table.steps():
        w.writerow([_fmt(float(v)) for v in row])
    return buf.getvalue()


def write_profile(table, path):
    _atomic_write(path, profile_to_csv(table))


def parse_profile(text):
    """Read a profile CSV back into ``(solvers, rows)``."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or not rows[0] or rows[0][0] != "t":
        raise CsvFormatError("expected header starting with 't'", 1)
    solvers = rows[0][1:]
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(solvers) + 1:
            raise CsvFormatError("wrong number of fields", lineno)
        try:
            out.append(tuple(float(v) for v in row))
        except ValueError as exc:
            raise CsvFormatError(str(exc), lineno) from None
    return solvers, out
