"""Direct power-series evaluation of Mittag-Leffler type functions.

Three series are provided::

    E_a(z)      = sum_k z**k / Gamma(a k + 1)
    E_{a,b}(z)  = sum_k z**k / Gamma(a k + b)
    h_a(x, lam) = sum_{k>=1} lam**(k-1) x**(k a - 1) / Gamma(k a)
                = x**(a-1) E_{a,a}(lam x**a)

``h_a(., lam)`` is the fractional counterpart of ``exp(lam x)``: for x > 0 its
Riemann-Liouville derivative of order ``a`` equals ``lam * h_a``. The series
here are the reference against which the exponential-integral form in
:mod:`fraccauchy.exprepr` is checked, so they are summed with some care: the
powers ``z**k`` are carried in double-double arithmetic, each term is divided
by Gamma in double-double (with a first-order correction for the rounding of
the Gamma argument ``a k + b``), and the partial sum is formed with
:func:`math.fsum`. At ``|z| <= 5`` this keeps the alternating case within a
few units of 1e-14 relative to ``exp(z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import digamma

from .errors import NonConvergence
from .gamma import GAMMA_MAX, gamma, recip_fact, rgamma

__all__ = [
    "SeriesControl",
    "SeriesResult",
    "HParams",
    "DEFAULT_CONTROL",
    "eval_E",
    "eval_E2",
    "eval_h_series",
    "h_partial_sum",
    "h_terms",
    "frac_deriv_h_truncated",
    "power_rule",
]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy: stop once a term falls below ``tail_tol``."""

    max_terms: int = 500
    tail_tol: float = 1e-15

    def __post_init__(self):
        if int(self.max_terms) < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.tail_tol > 0.0:
            raise ValueError("tail_tol must be positive")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms: int
    rule: str  # "tail_tol" or "max_terms"

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class HParams:
    """Order ``alpha`` in (0, 1] and eigenvalue ``lam`` of ``h_alpha(x, lam)``."""

    alpha: float
    lam: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")


# -- double-double helpers --------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    if not math.isfinite(p):
        return p, 0.0
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    p, e = _two_prod(xh, yh)
    e += xh * yl + xl * yh
    s = p + e
    return s, e - (s - p)


def _dd_div(xh: float, xl: float, d: float) -> tuple[float, float]:
    q = xh / d
    p, e = _two_prod(q, d)
    return q, ((xh - p) - e + xl) / d


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _ml_terms(alpha: float, beta: float, zh: float, zl: float, scale: float, ctl: SeriesControl):
    """Yield (hi, lo) pairs of ``scale * z**k / Gamma(alpha k + beta)``.

    ``alpha k + beta`` is formed exactly as ``arg + arg_lo``. Rounding it to
    one double would cost ``psi(arg) * ulp(arg)`` relative error per term
    (about 5e-14 near arg = 80), which cancelling series amplify.
    """
    ph, pl = scale, 0.0
    for k in range(ctl.max_terms):
        ak, ak_lo = _two_prod(alpha, float(k))
        arg, s_lo = _two_sum(ak, beta)
        arg_lo = ak_lo + s_lo
        if arg <= 0.0 and arg == math.floor(arg) and arg_lo == 0.0:
            yield 0.0, 0.0
        else:
            if arg < GAMMA_MAX:
                hi, lo = _dd_div(ph, pl, gamma(arg))
            else:
                r = rgamma(arg)
                hi, lo = _two_prod(ph, r)
                lo += pl * r
            if arg_lo != 0.0 and hi != 0.0:
                # 1/Gamma(arg + d) = (1 - psi(arg) d) / Gamma(arg) to first order
                lo -= hi * float(digamma(arg)) * arg_lo
            yield hi, lo
        ph, pl = _dd_mul(ph, pl, zh, zl)


def _sum_series(alpha, beta, zh, zl, scale, ctl) -> SeriesResult:
    parts: list[float] = []
    prev = math.inf
    count = 0
    last = math.inf
    for hi, lo in _ml_terms(alpha, beta, zh, zl, scale, ctl):
        parts.append(hi)
        parts.append(lo)
        count += 1
        last = abs(hi)
        if not math.isfinite(hi):
            raise NonConvergence("series term overflowed")
        if last < ctl.tail_tol and last <= prev:
            return SeriesResult(math.fsum(parts), count, "tail_tol")
        prev = last
    if last >= ctl.tail_tol:
        raise NonConvergence(
            f"series not converged after {count} terms (last term {last:.3e} >= {ctl.tail_tol:.1e})"
        )
    return SeriesResult(math.fsum(parts), count, "max_terms")


def eval_E(alpha: float, z: float, ctl: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """One-parameter Mittag-Leffler function ``E_alpha(z)`` for real z."""
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    return _sum_series(float(alpha), 1.0, float(z), 0.0, 1.0, ctl)


def eval_E2(alpha: float, beta: float, z: float, ctl: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """Two-parameter Mittag-Leffler function ``E_{alpha,beta}(z)`` for real z."""
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    return _sum_series(float(alpha), float(beta), float(z), 0.0, 1.0, ctl)


def _h_setup(p: HParams, x: float):
    if not x > 0.0:
        raise ValueError(f"h_alpha(x, lam) needs x > 0, got {x!r}")
    xa = x ** p.alpha
    zh, zl = _two_prod(float(p.lam), xa)
    return zh, zl, x ** (p.alpha - 1.0)


def eval_h_series(p: HParams, x: float, ctl: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """``h_alpha(x, lam)`` summed until the terms drop below ``ctl.tail_tol``.

    The leading term ``x**(alpha-1)/Gamma(alpha)`` blows up as x -> 0+ when
    alpha < 1; that is the function, not an error. x <= 0 is rejected.
    """
    zh, zl, scale = _h_setup(p, x)
    return _sum_series(p.alpha, p.alpha, zh, zl, scale, ctl)


def h_partial_sum(p: HParams, x: float, terms: int) -> float:
    """Sum of exactly the first ``terms`` terms of ``h_alpha(x, lam)``."""
    if terms <= 0:
        return 0.0
    zh, zl, scale = _h_setup(p, x)
    ctl = SeriesControl(max_terms=terms)
    parts: list[float] = []
    for hi, lo in _ml_terms(p.alpha, p.alpha, zh, zl, scale, ctl):
        parts.append(hi)
        parts.append(lo)
    return math.fsum(parts)


def h_terms(p: HParams, terms: int) -> list[tuple[float, float]]:
    """The series as (coefficient, exponent) pairs: ``lam**(k-1) x**(k alpha - 1) / (k alpha - 1)!``."""
    return [(float(p.lam) ** (k - 1), k * p.alpha - 1.0) for k in range(1, terms + 1)]


def power_rule(coef: float, expo: float, order: float, x: float) -> float:
    """Riemann-Liouville derivative of ``coef * x**expo / expo!`` at x.

    ``D^order x**a/a! = x**(a-order)/(a-order)!``; when ``a - order`` is a
    negative integer the factorial is infinite and the term is dropped (the
    delta-function convention, valid for x > 0).
    """
    e = expo - order
    r = recip_fact(e)
    if r == 0.0 or coef == 0.0:
        return 0.0
    return coef * x**e * r


def frac_deriv_h_truncated(p: HParams, x: float, K: int) -> float:
    """Apply ``D^alpha`` term by term to the first ``K`` terms of ``h_alpha``.

    The first term maps onto ``x**-1/(-1)! = 0`` for x > 0, so the result
    should equal ``lam * h_partial_sum(p, x, K - 1)``.
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    if K < 2:
        raise ValueError("K must be >= 2")
    parts = [power_rule(c, e, p.alpha, x) for c, e in h_terms(p, K)]
    return math.fsum(parts)
