"""Cauchy problems for linear fractional ODEs with constant coefficients.

Solves::

    D^{a p} y + a_1 D^{a (p-1)} y + ... + a_p y = 0,        x > x0 > 0,
    D^{a k} y(x0) = beta_k,                                   k = 0..p-1,

with the basis ``h_a(x, lam_k)`` over the (real, distinct) roots of the
characteristic polynomial ``lam**p + a_1 lam**(p-1) + ... + a_p``. Since
``D^{a k} h_a(x, lam) = lam**k h_a(x, lam)``, the initial conditions give the
Vandermonde system ``sum_i lam_i**k d_i = beta_k`` for ``d_i = c_i h_a(x0, lam_i)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import (
    ComplexRootsUnsupported,
    NoConvergence,
    RepeatedRoots,
    SingularSystem,
    ZeroBasisValue,
)
from .exprepr import ExpReprParams, eval_h_exp, odd_root
from .ml import DEFAULT_CONTROL, HParams, SeriesControl, eval_h_series
from .oddfrac import OddFraction, approximate

__all__ = [
    "CauchyProblem",
    "CauchySolution",
    "ICReport",
    "char_poly",
    "char_roots",
    "bjorck_pereyra",
    "solve_coefficients",
    "cramer_coefficients",
    "solve",
    "eval_solution_series",
    "eval_solution_exp",
    "eval_classical",
    "verify_initial_conditions",
    "odd_fraction_for",
]

Order = Union[float, OddFraction]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class CauchyProblem:
    """Order, coefficients ``a_1..a_p``, initial data ``beta_0..beta_{p-1}``, base point ``x0``."""

    alpha: Order
    a: tuple[float, ...]
    beta: tuple[float, ...]
    x0: float

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "beta", tuple(float(v) for v in self.beta))
        if len(self.a) < 1:
            raise ValueError("need at least one coefficient (p >= 1)")
        if len(self.beta) != len(self.a):
            raise ValueError(f"expected {len(self.a)} initial values, got {len(self.beta)}")
        if not self.x0 > 0.0:
            raise ValueError("x0 must be positive")
        if not 0.0 < self.alpha_value <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha_value!r}")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def alpha_value(self) -> float:
        if isinstance(self.alpha, OddFraction):
            return self.alpha.value
        return float(self.alpha)


@dataclass(frozen=True)
class CauchySolution:
    """Roots ``lam_k`` (ascending) and mixing coefficients ``c_k``.

    ``d[k] = c[k] * basis_x0[k]`` is the Vandermonde solution; it does not
    depend on which basis normalisation is used, which is what lets the
    exponential form reuse it.
    """

    problem: CauchyProblem
    roots: tuple[float, ...]
    c: tuple[float, ...]
    d: tuple[float, ...]
    basis_x0: tuple[float, ...]
    ctl: SeriesControl = field(default=DEFAULT_CONTROL, compare=False)


def char_poly(a: Sequence[float]) -> np.ndarray:
    """Monic coefficient vector ``[1, a_1, ..., a_p]`` (highest power first)."""
    return np.concatenate(([1.0], np.asarray(a, dtype=float)))


def _aberth(coeffs: np.ndarray, max_iter: int) -> np.ndarray:
    c = coeffs.astype(complex)
    p = len(c) - 1
    dc = np.polyder(c)
    radius = 1.0 + np.max(np.abs(c[1:]))
    center = -c[1] / p
    # off-axis angle keeps real polynomials from starting on a symmetric orbit
    z = center + radius * np.exp(1j * (2.0 * np.pi * np.arange(p) / p + 0.4))
    for _ in range(max_iter):
        pv = np.polyval(c, z)
        dv = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(pv == 0.0, 0.0, pv / dv)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            dz = w / (1.0 - w * np.sum(1.0 / diff, axis=1))
        dz = np.where(np.isfinite(dz), dz, 0.0)
        z = z - dz
        if np.max(np.abs(dz)) <= 4.0 * _EPS * max(1.0, np.max(np.abs(z))):
            return z
    return z


def _root_error_bound(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """First-order backward-error bound for each computed root."""
    absc = np.abs(coeffs)
    mag = np.polyval(absc, np.abs(z))
    dv = np.abs(np.polyval(np.polyder(coeffs.astype(complex)), z))
    with np.errstate(divide="ignore"):
        return np.where(dv > 0.0, 8.0 * _EPS * mag / dv, np.inf)


def char_roots(
    a: Sequence[float],
    tol: float = 1e-10,
    separation_tol: float = 1e-8,
    max_iter: int = 500,
) -> list[float]:
    """Real, distinct roots of ``lam**p + a_1 lam**(p-1) + ... + a_p``, ascending.

    Roots come from Aberth-Ehrlich simultaneous iteration started on a
    perturbed circle, then one Newton step each. Two roots count as repeated
    when their gap is below ``separation_tol`` (relative to the root scale)
    or below their combined perturbation error bound, i.e. when the
    polynomial cannot tell them apart in double precision.

    Raises
    ------
    RepeatedRoots, ComplexRootsUnsupported, NoConvergence
    """
    coeffs = char_poly(a)
    if not np.all(np.isfinite(coeffs)):
        raise ValueError("coefficients must be finite")
    p = len(coeffs) - 1
    if p == 1:
        return [-float(coeffs[1])]

    z = _aberth(coeffs, max_iter)
    dc = np.polyder(coeffs.astype(complex))
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.polyval(coeffs.astype(complex), z) / np.polyval(dc, z)
    z = np.where(np.isfinite(step), z - step, z)

    scale = max(1.0, float(np.max(np.abs(z))))
    err = _root_error_bound(coeffs, z)
    if not np.all(np.isfinite(z)):
        raise NoConvergence("Aberth iteration diverged")
    residual = np.abs(np.polyval(coeffs.astype(complex), z))
    # normwise backward error: a zero coefficient must not demand an exact root
    mag = np.max(np.abs(coeffs)) * np.polyval(np.ones(p + 1), np.abs(z))
    if np.any(residual > 1e4 * _EPS * mag):
        raise NoConvergence("Aberth iteration did not converge")

    for i, j in itertools.combinations(range(p), 2):
        gap = abs(z[i] - z[j])
        if gap <= max(separation_tol * scale, err[i] + err[j]):
            raise RepeatedRoots(
                f"roots {z[i].real:.12g} and {z[j].real:.12g} are not separated (gap {gap:.2e})"
            )

    imag = np.abs(z.imag)
    bad = imag > np.maximum(tol * scale, err)
    if np.any(bad):
        k = int(np.argmax(imag))
        raise ComplexRootsUnsupported(
            f"characteristic polynomial has complex roots, e.g. {z[k].real:.6g}{z[k].imag:+.6g}j"
        )
    return sorted(float(v) for v in z.real)


def bjorck_pereyra(nodes: Sequence[float], rhs: Sequence[float]) -> list[float]:
    """Solve ``sum_i nodes[i]**k d[i] = rhs[k]`` (k = 0..p-1) in O(p^2).

    This is the transposed-interpolation ("dual") Vandermonde system; the
    elimination is Bjorck & Pereyra's, in the form of Golub & Van Loan,
    Algorithm 4.6.2.
    """
    x = [float(v) for v in nodes]
    b = [float(v) for v in rhs]
    n = len(x) - 1
    if len(b) != n + 1:
        raise ValueError("nodes and rhs must have equal length")
    for k in range(n):
        for i in range(n, k, -1):
            b[i] -= x[k] * b[i - 1]
    for k in range(n - 1, -1, -1):
        for i in range(k + 1, n + 1):
            den = x[i] - x[i - k - 1]
            if den == 0.0:
                raise SingularSystem("coincident Vandermonde nodes")
            b[i] /= den
        for i in range(k, n):
            b[i] -= b[i + 1]
    return b


def _basis_at(alpha: float, roots: Sequence[float], x: float, ctl: SeriesControl) -> list[float]:
    return [eval_h_series(HParams(alpha, lam), x, ctl).value for lam in roots]


def solve_coefficients(
    prob: CauchyProblem,
    roots: Sequence[float],
    ctl: SeriesControl = DEFAULT_CONTROL,
    separation_tol: float = 1e-8,
) -> CauchySolution:
    """Mixing coefficients ``c_k`` satisfying the initial conditions.

    Solves the Vandermonde system for ``d_i = c_i h_a(x0, lam_i)`` and
    divides back; same answer as Cramer's rule with the ``h_a(x0, .)``
    factors pulled out of the determinants, without forming them.
    """
    roots = tuple(float(r) for r in roots)
    if len(roots) != prob.p:
        raise ValueError(f"need {prob.p} roots, got {len(roots)}")
    scale = max([1.0] + [abs(r) for r in roots])
    for r1, r2 in itertools.combinations(roots, 2):
        if abs(r1 - r2) <= separation_tol * scale:
            raise SingularSystem(f"Vandermonde determinant vanishes: roots {r1!r}, {r2!r} coincide")
    basis = _basis_at(prob.alpha_value, roots, prob.x0, ctl)
    for lam, hv in zip(roots, basis):
        if not math.isfinite(hv) or abs(hv) < 1e-300:
            raise ZeroBasisValue(f"h_alpha(x0, {lam!r}) = {hv!r}")
    d = bjorck_pereyra(roots, prob.beta)
    c = tuple(di / hv for di, hv in zip(d, basis))
    return CauchySolution(prob, roots, c, tuple(d), tuple(basis), ctl)


def _det(rows: list[list[float]]) -> float:
    """Leibniz expansion; only meant for the tiny matrices of the Cramer check."""
    n = len(rows)
    total = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = -1.0 if inversions % 2 else 1.0
        for i, col in enumerate(perm):
            term *= rows[i][col]
        total.append(term)
    return math.fsum(total)


def cramer_coefficients(
    prob: CauchyProblem, roots: Sequence[float], ctl: SeriesControl = DEFAULT_CONTROL
) -> list[float]:
    """``c_s = Delta_s / Delta`` by explicit determinants.

    ``Delta = prod_i h(x0, lam_i) * det V`` with ``V[k][i] = lam_i**k``;
    ``Delta_s`` replaces column ``s`` of ``V`` by ``beta`` and omits
    ``h(x0, lam_s)`` from the product. Factorial cost; keep p small.
    """
    roots = [float(r) for r in roots]
    p = len(roots)
    basis = _basis_at(prob.alpha_value, roots, prob.x0, ctl)
    V = [[lam**k for lam in roots] for k in range(p)]
    delta = math.prod(basis) * _det(V)
    if delta == 0.0:
        raise SingularSystem("Cramer determinant is zero")
    out = []
    for s in range(p):
        Vs = [row[:s] + [prob.beta[k]] + row[s + 1:] for k, row in enumerate(V)]
        prod_s = math.prod(hv for i, hv in enumerate(basis) if i != s)
        out.append(prod_s * _det(Vs) / delta)
    return out


def solve(
    prob: CauchyProblem,
    ctl: SeriesControl = DEFAULT_CONTROL,
    tol: float = 1e-10,
    separation_tol: float = 1e-8,
) -> CauchySolution:
    """Characteristic roots followed by the coefficient solve."""
    roots = char_roots(prob.a, tol=tol, separation_tol=separation_tol)
    return solve_coefficients(prob, roots, ctl, separation_tol)


def eval_solution_series(sol: CauchySolution, x: float) -> float:
    """``y(x) = sum_k c_k h_a(x, lam_k)`` from the power series."""
    if not x > 0.0:
        raise ValueError("x must be positive")
    alpha = sol.problem.alpha_value
    return math.fsum(
        ck * eval_h_series(HParams(alpha, lam), x, sol.ctl).value
        for ck, lam in zip(sol.c, sol.roots)
        if ck != 0.0
    )


def eval_classical(sol: CauchySolution, x: float) -> float:
    """The alpha = 1 solution with the same roots and data, ``sum_k d_k exp(lam_k (x - x0))``."""
    x0 = sol.problem.x0
    return math.fsum(dk * math.exp(lam * (x - x0)) for dk, lam in zip(sol.d, sol.roots))


def odd_fraction_for(alpha: Order, eps: float = 1e-9) -> OddFraction:
    """OddFraction for an order: passed through, exact 1 -> (0, 0), else searched."""
    if isinstance(alpha, OddFraction):
        return alpha
    alpha = float(alpha)
    if alpha == 1.0:
        return OddFraction(0, 0, 0.0)
    return approximate(alpha, eps)


def eval_solution_exp(
    sol: CauchySolution,
    frac: OddFraction | None,
    x: float,
    rule_order: int | None = None,
) -> float:
    """``y(x)`` through the exponential-integral representation.

    Each basis function is ``phi_k(x) = h_{1/(2n+1)}(x, rho_k)`` with the
    real odd root ``rho_k = lam_k**(1/(2m+1))``, so that ``lam_k**(s/(2m+1))``
    is ``rho_k**s`` and the exponential rate is ``rho_k**(2n+1)``. It is
    normalised at x0 by its own value there, as in the p = 1 closed form
    ``y = beta_0 phi(x) / phi(x0)``::

        y(x) = sum_k d_k phi_k(x) / phi_k(x0)

    For m = 0, ``phi_k`` is ``h_alpha(., lam_k)`` itself and this is the same
    function as :func:`eval_solution_series`. For m = n = 0 it is
    ``sum_k c_k exp(lam_k x)``.
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    if frac is None:
        frac = odd_fraction_for(sol.problem.alpha)
    x0 = sol.problem.x0
    parts = []
    for dk, lam in zip(sol.d, sol.roots):
        if dk == 0.0:
            continue
        ep = ExpReprParams(frac.n, odd_root(lam, 2 * frac.m + 1))
        parts.append(dk * eval_h_exp(ep, x, rule_order) / eval_h_exp(ep, x0, rule_order))
    return math.fsum(parts)


@dataclass(frozen=True)
class ICReport:
    residuals: tuple[float, ...]
    tolerances: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def ok(self) -> bool:
        return all(r <= t for r, t in zip(self.residuals, self.tolerances))


def verify_initial_conditions(sol: CauchySolution, rel_tol: float = 1e-8) -> ICReport:
    """Residuals of ``D^{a k} y(x0) = beta_k``, k = 0..p-1.

    ``D^{a k} h_a(x, lam) = lam**k h_a(x, lam)``, so each derivative is a
    weighted sum of basis values; ``h_a(x0, lam_i)`` is re-evaluated here
    rather than taken from the solution.
    """
    prob = sol.problem
    basis = _basis_at(prob.alpha_value, sol.roots, prob.x0, sol.ctl)
    res, tols = [], []
    for k, bk in enumerate(prob.beta):
        lhs = math.fsum(ci * lam**k * hv for ci, lam, hv in zip(sol.c, sol.roots, basis))
        res.append(abs(lhs - bk))
        tols.append(rel_tol * max(1.0, abs(bk)))
    return ICReport(tuple(res), tuple(tols))
