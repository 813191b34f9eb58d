"""Built-in verification suites, shared by the CLI and the test-suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cauchy import (
    CauchyProblem,
    eval_classical,
    eval_solution_exp,
    eval_solution_series,
    solve,
)
from .exprepr import ExpReprParams, eval_h_exp, verify_theorem1
from .ml import HParams, eval_h_series
from .oddfrac import OddFraction

__all__ = ["Case", "SUITES", "run_suite", "series_vs_exp", "eigen", "classical_limit", "decay"]

SERIES_VS_EXP_GRID = {
    "n": (1, 2),
    "rho": (-1.5, -1.0, -0.5, 0.5, 1.0),
    "x": (0.25, 0.5, 1.0, 2.0),
}
EIGEN_LAMBDAS = (-2.0, -1.0, 1.0)
CLASSICAL_J = (1, 2, 4, 10)
DECAY_RATIO = 1e-3

# reference problems: p = 1 from the worked example, p = 2 with roots -1, -2
P1_PROBLEM = dict(a=(1.0,), beta=(1.0,), x0=0.5)
P2_PROBLEM = dict(a=(3.0, 2.0), beta=(1.0, 0.0), x0=1.0)


@dataclass(frozen=True)
class Case:
    name: str
    value: float
    tol: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<48s} {self.value:.3e}  (tol {self.tol:.1e})"


def series_vs_exp(rule_order: int | None = None) -> list[Case]:
    """Exponential-integral form against the power series, relative to max(1, |h|)."""
    cases = []
    for n in SERIES_VS_EXP_GRID["n"]:
        for rho in SERIES_VS_EXP_GRID["rho"]:
            for x in SERIES_VS_EXP_GRID["x"]:
                ref = eval_h_series(HParams(1.0 / (2 * n + 1), rho), x).value
                got = eval_h_exp(ExpReprParams(n, rho), x, rule_order)
                rel = abs(got - ref) / max(1.0, abs(ref))
                cases.append(Case(f"n={n} rho={rho:+g} x={x:g}", rel, 1e-6, rel <= 1e-6))
    return cases


def eigen(m: int | None = None, n: int | None = None, x: float = 1.0, K: int = 60) -> list[Case]:
    """Term-wise eigen-identity; discrepancy relative to the summed term magnitudes."""
    if m is None or n is None:
        pairs = [(0, 0)] + [(mm, nn) for nn in (1, 2) for mm in range(nn)]
    else:
        pairs = [(m, n)]
    cases = []
    for mm, nn in pairs:
        tol = 1e-12 if mm == nn == 0 else 1e-8
        for lam in EIGEN_LAMBDAS:
            rep = verify_theorem1(mm, nn, lam, x, K)
            rel = rep.discrepancy / rep.term_scale
            cases.append(Case(f"m={mm} n={nn} lam={lam:+g}", rel, tol, rel <= tol))
    return cases


def classical_limit_distances(
    problem: dict = P2_PROBLEM, js=CLASSICAL_J, points: int = 41
) -> list[tuple[int, float]]:
    """sup |y_alpha - y_classical| on [x0, x0 + 2] for alpha = (2j+1)/(2j+3)."""
    x0 = problem["x0"]
    xs = np.linspace(x0, x0 + 2.0, points)
    out = []
    for j in js:
        sol = solve(CauchyProblem(OddFraction(j, j + 1), **problem))
        dist = max(abs(eval_solution_series(sol, x) - eval_classical(sol, x)) for x in xs)
        out.append((j, dist))
    return out


def classical_limit() -> list[Case]:
    dists = classical_limit_distances()
    cases = [Case(f"j={j} alpha={2 * j + 1}/{2 * j + 3} sup-dist", d, np.inf, True) for j, d in dists]
    for (j1, d1), (j2, d2) in zip(dists, dists[1:]):
        cases.append(Case(f"decrease j={j1}->{j2}", d2 - d1, 0.0, d2 < d1))
    return cases


def decay_ratios(rule_order: int | None = None) -> list[tuple[str, float]]:
    """|y(x0 + 20)| / |y(x0 + 1)| for the all-negative-root test problems."""
    out = []
    for label, frac, prob in (
        ("p=1 alpha=1/3", OddFraction(0, 1), P1_PROBLEM),
        ("p=2 alpha=3/5", OddFraction(1, 2), P2_PROBLEM),
    ):
        sol = solve(CauchyProblem(frac, **prob))
        x0 = prob["x0"]
        # the direct series cannot reach x0 + 20 here (terms peak near e**65)
        near = eval_solution_exp(sol, frac, x0 + 1.0, rule_order)
        far = eval_solution_exp(sol, frac, x0 + 20.0, rule_order)
        out.append((label, abs(far) / abs(near)))
    for rho in (-1.5, -1.0, -0.5):
        p = ExpReprParams(1, rho)
        out.append((f"h n=1 rho={rho:+g}", abs(eval_h_exp(p, 20.0, rule_order)) / abs(eval_h_exp(p, 1.0, rule_order))))
    return out


def decay(rule_order: int | None = None) -> list[Case]:
    return [Case(name, r, DECAY_RATIO, r <= DECAY_RATIO) for name, r in decay_ratios(rule_order)]


SUITES: dict[str, Callable[..., list[Case]]] = {
    "series-vs-exp": series_vs_exp,
    "eigen": eigen,
    "classical-limit": classical_limit,
    "decay": decay,
}


def run_suite(name: str, **kwargs) -> list[Case]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn(**kwargs)
