"""Command-line entry point: ``cgkit {solve,bench,profile,heat,noise,denoise}``.

Settings resolve as flag > ``CGKIT_*`` environment variable > default, e.g.
``CGKIT_SIGMA=0.2`` changes the curvature constant unless ``--sigma`` is
given. Reports go to stdout as ``key=value`` lines.

Exit codes: 0 converged / success, 2 iteration cap, 3 line-search failure,
64 usage error, 65 malformed input data, 74 I/O error.
"""

import argparse
import dataclasses
import logging
import os
import sys

import numpy as np

from . import bench, pgm
from .core import norm_inf
from .directions import METHODS, MethodSpec
from .linesearch import STRONG, WEAK, WolfeParams
from .problems import (
    REFERENCE_X,
    DenoiseSpec,
    ImageGray,
    add_gaussian_noise,
    catalog,
    denoise_objective,
    get_problem,
    heat_problem,
    problem_names,
    rmse,
    synthetic_image,
)
from .solver import CONVERGED, ITERATION_CAP, LINE_SEARCH_FAILURE, SolverConfig, minimize

EXIT_OK = 0
EXIT_CAP = 2
EXIT_LS_FAILURE = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_IOERR = 74

ENV_PREFIX = "CGKIT_"

DEFAULTS = {
    "method": "azhs",
    "sigma": 0.1,
    "delta": 0.01,
    "gtol": 1e-6,
    "max_iter": 50_000,
    "t": 0.1,
    "eta": 0.01,
    "line_search": STRONG,
    "lambda": 0.08,
    "eps_smooth": 1e-3,
    "step_rtol": 1e-3,
    "sigma_frac": 0.25,
    "seed": 0,
    "jobs": 1,
}

BENCH_METHODS = ("azhs", "azhs3", "hs+", "prp+", "dl+", "hz", "azprp")

_STATUS_EXIT = {CONVERGED: EXIT_OK, ITERATION_CAP: EXIT_CAP, LINE_SEARCH_FAILURE: EXIT_LS_FAILURE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default(key, cast):
    raw = os.environ.get(ENV_PREFIX + key.upper())
    if raw is None:
        return DEFAULTS[key]
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"{ENV_PREFIX}{key.upper()}={raw!r} is not a valid {cast.__name__}") from None


def _add_solver_flags(p, method=True):
    if method:
        p.add_argument("--method", default=_default("method", str), help=f"one of {', '.join(METHODS)}")
    p.add_argument("--sigma", type=float, default=_default("sigma", float), help="curvature constant")
    p.add_argument("--delta", type=float, default=_default("delta", float), help="sufficient decrease constant")
    p.add_argument("--gtol", type=float, default=_default("gtol", float), help="stop when ||g||_inf <= gtol")
    p.add_argument("--max-iter", type=int, default=_default("max_iter", int))
    p.add_argument("--t", type=float, default=_default("t", float), help="Dai-Liao parameter")
    p.add_argument("--eta", type=float, default=_default("eta", float), help="Hager-Zhang truncation constant")
    p.add_argument("--line-search", choices=(STRONG, WEAK), default=_default("line_search", str))


def _solver_config(args, method=None, gtol=None, step_rtol=None):
    try:
        spec = MethodSpec(method or args.method, t=args.t, eta=args.eta)
        wolfe = WolfeParams(delta=args.delta, sigma=args.sigma, mode=args.line_search)
        return SolverConfig(
            method=spec, wolfe=wolfe,
            gtol=args.gtol if gtol is None else gtol,
            step_rtol=step_rtol, max_iter=args.max_iter,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(**pairs):
    for k, v in pairs.items():
        if isinstance(v, float):
            v = repr(v)
        print(f"{k}={v}")


def _report(rep):
    _emit(
        status=rep.status, iters=rep.iters, fevals=rep.fevals, gevals=rep.gevals,
        f_final=rep.f_final, gnorm_final=rep.gnorm_final,
    )


def cmd_solve(args):
    try:
        entry = get_problem(args.problem)
    except KeyError:
        raise UsageError(f"unknown problem {args.problem!r}; choose from {', '.join(problem_names())}") from None
    config = _solver_config(args)
    rep = minimize(entry.objective, entry.x0, config)
    _emit(problem=entry.name, method=config.method.kind, n=entry.n)
    _report(rep)
    return _STATUS_EXIT[rep.status]


def cmd_heat(args):
    entry = heat_problem()
    config = _solver_config(args)
    rep = minimize(entry.objective, entry.x0, config)
    _emit(method=config.method.kind)
    _report(rep)
    for i, v in enumerate(rep.x_final, start=1):
        _emit(**{f"x{i}": float(v)})
    _emit(max_dist_reference=float(norm_inf(rep.x_final - REFERENCE_X)))
    return _STATUS_EXIT[rep.status]


def _split(text):
    return [s for s in (part.strip() for part in text.split(",")) if s]


def cmd_bench(args):
    if args.problems in ("all", ""):
        problems = catalog()
    else:
        try:
            problems = [get_problem(name) for name in _split(args.problems)]
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    methods = _split(args.methods)
    for m in methods:
        _solver_config(args, method=m)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    records = bench.run_grid(problems, methods, _solver_config(args, method=methods[0]), jobs=args.jobs)
    if args.omit_timing:
        records = [dataclasses.replace(r, wall_time=0.0) for r in records]
    bench.write_records(records, args.out)
    solved = sum(r.solved for r in records)
    _emit(records=len(records), solved=solved, out=args.out)
    return EXIT_OK


def cmd_profile(args):
    try:
        records = bench.read_records(args.runs)
    except bench.CsvFormatError as exc:
        print(f"{args.runs}: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    try:
        table = bench.profile(records, args.metric)
    except ValueError as exc:
        print(f"{args.runs}: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    bench.write_profile(table, args.out)
    _emit(
        metric=args.metric, solvers=",".join(table.solvers), problems=len(table.problems),
        r_m=table.r_m, dropped=",".join(table.dropped), out=args.out,
    )
    return EXIT_OK


class _DataError(Exception):
    pass


def _read_image(path):
    try:
        return pgm.read_pgm(path)
    except pgm.PgmError as exc:
        raise _DataError(f"{path}: {exc}") from None


def cmd_noise(args):
    if not 0.0 <= args.sigma_frac < 1.0:
        raise UsageError("--sigma-frac must lie in [0, 1)")
    if (args.input is None) == (args.synthetic is None):
        raise UsageError("give exactly one of --in and --synthetic")
    if args.input is not None:
        clean = _read_image(args.input)
    else:
        if args.synthetic < 2:
            raise UsageError("--synthetic size must be >= 2")
        clean = synthetic_image(args.synthetic)
        if args.clean_out:
            pgm.write_pgm(clean, args.clean_out, args.format)
    noisy = add_gaussian_noise(clean, args.sigma_frac, args.seed)
    pgm.write_pgm(noisy, args.out, args.format)
    _emit(width=clean.width, height=clean.height, sigma_frac=args.sigma_frac, seed=args.seed, out=args.out)
    return EXIT_OK


def cmd_denoise(args):
    noisy = _read_image(args.input)
    ref = _read_image(args.ref) if args.ref else None
    if ref is not None and (ref.width, ref.height) != (noisy.width, noisy.height):
        raise UsageError("--ref and --in differ in size")
    try:
        spec = DenoiseSpec(noisy, lam=args.lam, eps_smooth=args.eps_smooth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not args.step_rtol > 0:
        raise UsageError("--step-rtol must be > 0")
    config = _solver_config(args, gtol=0.0, step_rtol=args.step_rtol)
    rep = minimize(denoise_objective(spec), noisy.pixels, config)
    restored = ImageGray(noisy.width, noisy.height, np.clip(rep.x_final, 0.0, 1.0))
    pgm.write_pgm(restored, args.out, args.format)
    _emit(method=config.method.kind, status=rep.status, iters=rep.iters, wall_time=rep.wall_time)
    if ref is not None:
        _emit(rmse_noisy=rmse(ref, noisy), rmse_restored=rmse(ref, restored))
    return _STATUS_EXIT[rep.status]


def build_parser():
    parser = _Parser(prog="cgkit", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="minimize a built-in test problem")
    p.add_argument("--problem", required=True)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("heat", help="solve the heat conduction problem")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_heat)

    p = sub.add_parser("bench", help="run a method x problem grid and write a run CSV")
    p.add_argument("--problems", default="all", help="comma-separated names or 'all'")
    p.add_argument("--methods", default=",".join(BENCH_METHODS))
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=_default("jobs", int))
    p.add_argument("--omit-timing", action="store_true", help="write wall_time as 0.0 for byte-stable output")
    _add_solver_flags(p, method=False)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("profile", help="performance profile from a run CSV")
    p.add_argument("--runs", required=True)
    p.add_argument("--metric", choices=bench.METRICS, default="iters")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("noise", help="add Gaussian noise to a PGM image")
    p.add_argument("--in", dest="input")
    p.add_argument("--synthetic", type=int, help="use a built-in piecewise-constant image of this size")
    p.add_argument("--clean-out", help="with --synthetic, also write the clean image here")
    p.add_argument("--out", required=True)
    p.add_argument("--sigma-frac", type=float, default=_default("sigma_frac", float))
    p.add_argument("--seed", type=int, default=_default("seed", int))
    p.add_argument("--format", choices=("P2", "P5"), default="P5")
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("denoise", help="restore a noisy PGM image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ref", help="clean reference image for RMSE")
    p.add_argument("--lambda", dest="lam", type=float, default=_default("lambda", float))
    p.add_argument("--eps-smooth", type=float, default=_default("eps_smooth", float))
    p.add_argument("--step-rtol", type=float, default=_default("step_rtol", float))
    p.add_argument("--format", choices=("P2", "P5"), default="P5")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_denoise)
    return parser


def main(argv=None):
    try:
        parser = build_parser()
    except UsageError as exc:
        print(f"cgkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cgkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DataError as exc:
        print(f"cgkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except OSError as exc:
        print(f"cgkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_IOERR


if __name__ == "__main__":
    sys.exit(main())
