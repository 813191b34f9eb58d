"""Command-line front end: ``fraccauchy {ml,approx,solve,verify}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import verify as verify_mod
from .cauchy import (
    CauchyProblem,
    CauchySolution,
    eval_solution_exp,
    eval_solution_series,
    odd_fraction_for,
    solve,
    verify_initial_conditions,
)
from .errors import (
    ComplexRootsUnsupported,
    NonConvergence,
    RepeatedRoots,
    SearchExhausted,
    SingularSystem,
    ZeroBasisValue,
)
from .ml import SeriesControl, eval_E, eval_E2
from .oddfrac import OddFraction, approximate, from_pair
from .quad import default_order

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_COMPLEX = 3
EXIT_REPEATED = 4
EXIT_CONVERGENCE = 5
EXIT_VERIFY = 6

CSV_HEADER = ("x", "y_series", "y_exp", "abs_diff")


class ProblemFileError(ValueError):
    pass


def fmt(v: float) -> str:
    """17 significant digits: enough for an exact float round trip."""
    return f"{v:.17g}"


@dataclass(frozen=True)
class ProblemFile:
    alpha: float | OddFraction
    a: tuple[float, ...]
    beta: tuple[float, ...]
    x0: float
    x_start: float
    x_end: float
    steps: int
    quadrature_order: int | None = None
    max_terms: int = 500
    tail_tol: float = 1e-15
    alpha_eps: float = 1e-3

    @property
    def control(self) -> SeriesControl:
        return SeriesControl(self.max_terms, self.tail_tol)

    def problem(self) -> CauchyProblem:
        return CauchyProblem(self.alpha, self.a, self.beta, self.x0)

    def grid(self) -> np.ndarray:
        return np.linspace(self.x_start, self.x_end, self.steps)


def _num(obj: dict, key: str, kind=float):
    if key not in obj:
        raise ProblemFileError(f"missing field {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ProblemFileError(f"field {key!r} must be a number")
    if kind is int:
        if float(v) != int(v):
            raise ProblemFileError(f"field {key!r} must be an integer")
        return int(v)
    v = float(v)
    if not math.isfinite(v):
        raise ProblemFileError(f"field {key!r} must be finite")
    return v


def parse_problem(data: dict) -> ProblemFile:
    """Validate a decoded problem JSON object."""
    if not isinstance(data, dict):
        raise ProblemFileError("problem file must hold a JSON object")
    raw_alpha = data.get("alpha")
    if isinstance(raw_alpha, dict):
        try:
            alpha = from_pair(_num(raw_alpha, "m", int), _num(raw_alpha, "n", int))
        except ValueError as exc:
            raise ProblemFileError(f"bad alpha pair: {exc}") from exc
    else:
        alpha = _num(data, "alpha")
        if not 0.0 < alpha <= 1.0:
            raise ProblemFileError("alpha must lie in (0, 1]")
    vecs = {}
    for key in ("a", "beta"):
        v = data.get(key)
        if not isinstance(v, list) or not v:
            raise ProblemFileError(f"field {key!r} must be a non-empty list")
        vecs[key] = tuple(_num({key: e}, key) for e in v)
    if len(vecs["a"]) != len(vecs["beta"]):
        raise ProblemFileError("'a' and 'beta' must have the same length")
    x0 = _num(data, "x0")
    if not x0 > 0.0:
        raise ProblemFileError("x0 must be positive")
    grid = data.get("grid")
    if not isinstance(grid, dict):
        raise ProblemFileError("missing object field 'grid'")
    x_start, x_end = _num(grid, "x_start"), _num(grid, "x_end")
    steps = _num(grid, "steps", int)
    if x_start < x0:
        raise ProblemFileError("grid.x_start must be >= x0")
    if steps < 2:
        raise ProblemFileError("grid.steps must be >= 2")
    if not x_end > x_start:
        raise ProblemFileError("grid.x_end must exceed grid.x_start")
    qorder = None
    if data.get("quadrature_order") is not None:
        qorder = _num(data, "quadrature_order", int)
        if qorder < 1:
            raise ProblemFileError("quadrature_order must be positive")
    series = data.get("series") or {}
    if not isinstance(series, dict):
        raise ProblemFileError("'series' must be an object")
    max_terms = _num(series, "max_terms", int) if "max_terms" in series else 500
    tail_tol = _num(series, "tail_tol") if "tail_tol" in series else 1e-15
    if max_terms < 1 or not tail_tol > 0.0:
        raise ProblemFileError("series.max_terms must be >= 1 and series.tail_tol > 0")
    alpha_eps = _num(data, "alpha_eps") if "alpha_eps" in data else 1e-3
    return ProblemFile(alpha, vecs["a"], vecs["beta"], x0, x_start, x_end, steps,
                       qorder, max_terms, tail_tol, alpha_eps)


def load_problem(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: invalid JSON: {exc}") from exc
    return parse_problem(data)


def sample_solution(pf: ProblemFile) -> tuple[CauchySolution, list[tuple[float, float, float, float]]]:
    """Solve the problem and tabulate both evaluation routes on the grid."""
    sol = solve(pf.problem(), ctl=pf.control)
    frac = odd_fraction_for(pf.alpha, pf.alpha_eps)
    order = pf.quadrature_order or default_order()
    rows = []
    for x in pf.grid():
        x = float(x)
        ys = eval_solution_series(sol, x)
        ye = eval_solution_exp(sol, frac, x, order)
        rows.append((x, ys, ye, abs(ys - ye)))
    return sol, rows


def write_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def read_csv(fh) -> list[tuple[float, ...]]:
    r = csv.reader(fh)
    header = next(r)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [tuple(float(v) for v in row) for row in r]


def plot_script(csv_path: str, script_path: str) -> str:
    """gnuplot script drawing both solution columns from ``csv_path``."""
    rel = os.path.relpath(os.path.abspath(csv_path), os.path.dirname(os.path.abspath(script_path)))
    return (
        "# gnuplot script written by fraccauchy solve\n"
        "# run from this directory: gnuplot -p <this file>\n"
        'set datafile separator ","\n'
        'set xlabel "x"\n'
        'set ylabel "y(x)"\n'
        "set grid\n"
        "set key top right\n"
        f'plot "{rel}" using 1:2 skip 1 with lines lw 2 title "y\\_series", \\\n'
        f'     "{rel}" using 1:3 skip 1 with points pt 7 ps 0.6 title "y\\_exp"\n'
    )


# -- subcommands -----------------------------------------------------------


def cmd_ml(args) -> int:
    ctl = SeriesControl(args.max_terms, args.tail_tol)
    if args.beta is None:
        res = eval_E(args.alpha, args.z, ctl)
    else:
        res = eval_E2(args.alpha, args.beta, args.z, ctl)
    print(fmt(res.value))
    print(f"# terms={res.terms} stop={res.rule}", file=sys.stderr)
    return EXIT_OK


def cmd_approx(args) -> int:
    if args.check is not None:
        m, n = args.check
        f = from_pair(m, n, args.alpha)
        ok = f.err < args.eps
        print(f"m={f.m} n={f.n} value={fmt(f.value)} err={fmt(f.err)} {'OK' if ok else 'REJECTED'}")
        return EXIT_OK if ok else EXIT_VERIFY
    f = approximate(args.alpha, args.eps, args.cap)
    print(f"m={f.m} n={f.n} value={fmt(f.value)} err={fmt(f.err)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    pf = load_problem(args.problem)
    sol, rows = sample_solution(pf)
    print("roots: " + " ".join(fmt(r) for r in sol.roots))
    print("coefficients: " + " ".join(fmt(c) for c in sol.c))
    ic = verify_initial_conditions(sol)
    print("ic_residuals: " + " ".join(f"{r:.3e}" for r in ic.residuals))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        buf = io.StringIO()
        write_csv(rows, buf)
        sys.stdout.write(buf.getvalue())
    if args.plot:
        if not args.out:
            raise ProblemFileError("--plot needs --out (the script reads the CSV)")
        with open(args.plot, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(plot_script(args.out, args.plot))
    return EXIT_OK if ic.ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite == "eigen" and (args.m is not None or args.n is not None):
        if args.m is None or args.n is None:
            raise ProblemFileError("--m and --n go together")
        kwargs = {"m": args.m, "n": args.n}
    cases = verify_mod.run_suite(args.suite, **kwargs)
    for c in cases:
        print(c.line())
    failed = sum(not c.passed for c in cases)
    print(f"{args.suite}: {'PASS' if not failed else 'FAIL'} ({len(cases) - failed}/{len(cases)} cases)")
    return EXIT_OK if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraccauchy", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ml", help="evaluate E_alpha(z) or E_{alpha,beta}(z)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--max-terms", type=int, default=500)
    p.add_argument("--tail-tol", type=float, default=1e-15)
    p.set_defaults(func=cmd_ml)

    p = sub.add_parser("approx", help="odd/odd approximation (2m+1)/(2n+1) of alpha")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--cap", type=int, default=10**7)
    p.add_argument("--check", type=int, nargs=2, metavar=("M", "N"),
                   help="only test whether (2M+1)/(2N+1) is within eps")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("solve", help="solve a Cauchy problem from a JSON file")
    p.add_argument("problem")
    p.add_argument("--out", help="CSV output path (stdout if omitted)")
    p.add_argument("--plot", help="gnuplot script path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("--suite", required=True, choices=sorted(verify_mod.SUITES))
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ComplexRootsUnsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPLEX
    except (RepeatedRoots, SingularSystem) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REPEATED
    except (NonConvergence, SearchExhausted, ZeroBasisValue) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
