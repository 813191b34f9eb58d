"""Odd/odd rational approximation of a fractional order.

Any alpha in (0, 1) can be approximated arbitrarily well by (2m+1)/(2n+1).
Odd denominators matter because ``lam ** (1/(2m+1))`` stays real for
negative ``lam``; see :func:`fraccauchy.exprepr.odd_root`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SearchExhausted

__all__ = ["OddFraction", "approximate", "value", "from_pair", "DEFAULT_CAP"]

DEFAULT_CAP = 10**7
_CHUNK = 1 << 16


@dataclass(frozen=True)
class OddFraction:
    """``(2m+1)/(2n+1)`` with ``0 <= m <= n``; ``err`` is the achieved distance to the target."""

    m: int
    n: int
    err: float = 0.0

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be non-negative")
        if self.m > self.n:
            raise ValueError(f"need m <= n, got m={self.m}, n={self.n}")
        if self.err < 0.0:
            raise ValueError("err must be non-negative")

    @property
    def numerator(self) -> int:
        return 2 * self.m + 1

    @property
    def denominator(self) -> int:
        return 2 * self.n + 1

    @property
    def value(self) -> float:
        return self.numerator / self.denominator

    @property
    def is_classical(self) -> bool:
        return self.m == 0 and self.n == 0


def value(f: OddFraction) -> float:
    return f.value


def from_pair(m: int, n: int, alpha: float | None = None) -> OddFraction:
    """Build a fraction from (m, n), filling ``err`` against ``alpha`` if given."""
    f = OddFraction(int(m), int(n))
    if alpha is None:
        return f
    return OddFraction(f.m, f.n, abs(float(alpha) - f.value))


def approximate(alpha: float, eps: float, cap: int = DEFAULT_CAP) -> OddFraction:
    """Smallest-denominator (2m+1)/(2n+1) with ``|alpha - (2m+1)/(2n+1)| < eps``.

    For each n the best m is one of the two odd numerators bracketing
    ``alpha * (2n+1)``; both are tried (clamped to 0..n) and the closer kept.
    The scan over n is vectorised in blocks.

    Raises
    ------
    SearchExhausted
        If no n <= ``cap`` qualifies.
    """
    alpha = float(alpha)
    eps = float(eps)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not eps > 0.0:
        raise ValueError("eps must be positive")

    start = 0
    while start <= cap:
        n = np.arange(start, min(start + _CHUNK, cap + 1), dtype=np.int64)
        den = (2 * n + 1).astype(np.float64)
        m_lo = np.floor((alpha * den - 1.0) / 2.0).astype(np.int64)
        best_m = None
        best_err = None
        for m in (m_lo, m_lo + 1):
            m = np.clip(m, 0, n)
            err = np.abs(alpha - (2 * m + 1) / den)
            if best_err is None:
                best_m, best_err = m, err
            else:
                closer = err < best_err
                best_m = np.where(closer, m, best_m)
                best_err = np.where(closer, err, best_err)
        hits = np.flatnonzero(best_err < eps)
        if hits.size:
            i = hits[0]
            return OddFraction(int(best_m[i]), int(n[i]), float(best_err[i]))
        start += _CHUNK
    raise SearchExhausted(f"no (2m+1)/(2n+1) within {eps:g} of {alpha!r} for n <= {cap}")
