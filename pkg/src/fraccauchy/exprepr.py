"""Exponential-integral representation of ``h_{1/(2n+1)}(x, rho)``.

With ``N = 2n + 1`` and ``c = rho**N``, the series for ``h_{1/N}(x, rho)``
splits by residue of the term index mod N into N sub-series. Sub-series
``s`` is ``rho**s`` times the Riemann-Liouville derivative of order
``1 - (s+1)/N`` of ``exp(c x)``, so::

    h_{1/N}(x, rho) = sum_{s=0}^{2n-1} rho**s d/dx int_0^x K_s(x - t) exp(c t) dt
                      + rho**(2n) exp(c x),
    K_s(u) = u**g_s / Gamma(g_s + 1),   g_s = (s - 2n) / N  in (-1, 0).

The ``d/dx`` is never taken numerically: integrating by parts gives
``d/dx int_0^x K_s(x-t) e^{ct} dt = x**g_s / Gamma(g_s+1) + c int_0^x K_s(x-t) e^{ct} dt``
and the remaining integral goes to Gauss-Jacobi quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gamma import recip_fact, rgamma
from .quad import build_rule, default_order, integrate_singular

__all__ = [
    "ExpReprParams",
    "odd_root",
    "kernel_exponent",
    "convolution_integral",
    "conv_deriv_term",
    "eval_h_exp",
    "split_series",
    "Theorem1Report",
    "verify_theorem1",
]


def odd_root(lam: float, k: int) -> float:
    """Real ``k``-th root of ``lam`` for odd ``k``, keeping the sign of ``lam``."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"odd_root needs an odd positive index, got {k}")
    if k == 1:
        return float(lam)
    return math.copysign(abs(lam) ** (1.0 / k), lam)


@dataclass(frozen=True)
class ExpReprParams:
    """Base order ``1/(2n+1)`` and series ratio ``rho``."""

    n: int
    rho: float

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @classmethod
    def from_lambda(cls, lam: float, m: int, n: int) -> "ExpReprParams":
        """The parameters used with eigenvalue ``lam`` and order (2m+1)/(2n+1)."""
        return cls(n, odd_root(lam, 2 * m + 1))

    @property
    def N(self) -> int:
        return 2 * self.n + 1

    @property
    def rate(self) -> float:
        """Exponential rate ``rho**(2n+1)``."""
        return self.rho**self.N


def kernel_exponent(n: int, s: int) -> float:
    return (s - 2 * n) / (2 * n + 1)


def _check_s(p: ExpReprParams, s: int):
    if not 0 <= s <= 2 * p.n - 1:
        raise ValueError(f"s must lie in [0, {2 * p.n - 1}], got {s}")


def convolution_integral(p: ExpReprParams, s: int, x: float, rule_order: int | None = None) -> float:
    """``int_0^x (x-t)**g / Gamma(g+1) * exp(c t) dt`` with ``g = kernel_exponent(n, s)``."""
    _check_s(p, s)
    rule = build_rule(kernel_exponent(p.n, s), rule_order or default_order())
    c = p.rate
    return integrate_singular(rule, x, lambda t: np.exp(c * t))


def conv_deriv_term(p: ExpReprParams, s: int, x: float, rule_order: int | None = None) -> float:
    """x-derivative of :func:`convolution_integral`, by integration by parts."""
    _check_s(p, s)
    if not x > 0.0:
        raise ValueError("x must be positive")
    g = kernel_exponent(p.n, s)
    head = x**g * rgamma(g + 1.0)
    c = p.rate
    if c == 0.0:
        return head
    return head + c * convolution_integral(p, s, x, rule_order)


def eval_h_exp(p: ExpReprParams, x: float, rule_order: int | None = None) -> float:
    """``h_{1/(2n+1)}(x, rho)`` through the exponential-integral form.

    The integration constants that appear when each sub-series is
    integrated and differentiated back are zero: matching the series term
    by term leaves nothing for them to absorb.
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    parts = [p.rho**s * conv_deriv_term(p, s, x, rule_order) for s in range(2 * p.n)]
    # s = 2n: integer exponents, the sub-series sums to an exponential
    parts.append(p.rho ** (2 * p.n) * math.exp(p.rate * x))
    return math.fsum(parts)


def split_series(p: ExpReprParams, x: float, terms: int) -> list[float]:
    """Partial sums ``J_0 .. J_{2n}`` of the split series, ``terms`` terms each.

    ``J_s = sum_j rho**(s + jN) x**((s+1)/N + j - 1) / ((s+1)/N + j - 1)!``.
    Their total equals the first ``terms * N`` terms of ``h_{1/N}(x, rho)``.
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    N = p.N
    out = []
    for s in range(N):
        a0 = (s + 1) / N - 1.0
        out.append(
            math.fsum(p.rho ** (s + j * N) * x ** (a0 + j) * recip_fact(a0 + j) for j in range(terms))
        )
    return out


@dataclass(frozen=True)
class Theorem1Report:
    """Both sides of ``D^{(2m+1)/(2n+1)} h = lam h`` on a truncated series.

    ``singular_dropped`` is the sum of the power-rule images whose exponent
    falls below -1. They are discarded together with the exact delta term;
    the value is kept so callers can see what the convention removes.
    """

    m: int
    n: int
    lam: float
    x: float
    terms: int
    lhs: float
    rhs: float
    singular_dropped: float
    term_scale: float

    @property
    def discrepancy(self) -> float:
        return abs(self.lhs - self.rhs)


def verify_theorem1(m: int, n: int, lam: float, x: float, K: int = 60) -> Theorem1Report:
    """Term-wise check that ``h_{1/N}(., lam**(1/M))`` is an eigenfunction of ``D^{M/N}``.

    Here ``M = 2m+1`` and ``N = 2n+1``. The power rule maps term ``k`` of
    the K-term series onto exponent ``(k - M)/N - 1``. Terms with
    ``k <= M`` land at or below -1: ``k = M`` is the delta term (exactly 0
    for x > 0), the others are dropped by the same convention and reported
    in ``singular_dropped``. The remaining terms must equal
    ``lam * (first K - M terms)``.

    ``term_scale`` is ``max(1, sum |terms|)``. For negative ``lam`` the
    series cancels heavily and rounding in the individual terms, not the
    identity, sets the floor of ``discrepancy``; compare against this scale.
    """
    if m < 0 or n < 0 or m > n:
        raise ValueError("need 0 <= m <= n")
    if not x > 0.0:
        raise ValueError("x must be positive")
    M, N = 2 * m + 1, 2 * n + 1
    if K <= M:
        raise ValueError(f"need K > 2m+1 = {M} terms")
    rho = odd_root(lam, M)
    order = M / N
    lhs_parts, dropped = [], []
    for k in range(1, K + 1):
        coef = rho ** (k - 1)
        expo = k / N - 1.0
        e = expo - order
        val = 0.0 if coef == 0.0 else coef * x**e * recip_fact(e)
        (dropped if k <= M else lhs_parts).append(val)
    rhs_parts = [rho ** (k - 1) * x ** (k / N - 1.0) * recip_fact(k / N - 1.0) for k in range(1, K - M + 1)]
    return Theorem1Report(
        m, n, float(lam), float(x), K,
        lhs=math.fsum(lhs_parts),
        rhs=float(lam) * math.fsum(rhs_parts),
        singular_dropped=math.fsum(dropped),
        term_scale=max(1.0, math.fsum(abs(v) for v in lhs_parts)),
    )
