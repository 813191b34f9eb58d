"""Gamma function and the factorial convention ``a! = Gamma(a + 1)``.

Positive arguments go through :func:`math.gamma` (a 13-term Lanczos sum with
g = 6.024680040776729583740234375 and an exact table for small integers, see
CPython ``Modules/mathmodule.c``). Negative non-integers are reflected onto
the positive axis here so the error near each pole stays controlled by
``sin(pi x)`` alone.
"""

from __future__ import annotations

import math

from .errors import PoleError

__all__ = ["gamma", "rgamma", "fact", "recip_fact", "sinpi", "GAMMA_MAX"]

# Largest x with finite Gamma(x) in binary64.
GAMMA_MAX = 171.62437695630272


def sinpi(x: float) -> float:
    """sin(pi * x), exact zeros at integers and no loss for large |x|."""
    if not math.isfinite(x):
        return math.nan
    y = math.fmod(abs(x), 2.0)
    n = round(2.0 * y)
    # y = n/2 + r with |r| <= 1/4
    r = y - 0.5 * n
    if n == 0 or n == 4:
        s = math.sin(math.pi * r)
    elif n == 1:
        s = math.cos(math.pi * r)
    elif n == 2:
        s = -math.sin(math.pi * r)
    else:
        s = -math.cos(math.pi * r)
    if s == 0.0:
        return 0.0
    return -s if x < 0.0 else s


def _is_pole(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Euler Gamma function for real ``x``.

    Raises
    ------
    PoleError
        If ``x`` is 0, -1, -2, ...
    OverflowError
        If the result exceeds the double range (``x > GAMMA_MAX``).
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("gamma of NaN")
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at x = {x:g}")
    if x > 0.0:
        if x > GAMMA_MAX:
            raise OverflowError(f"Gamma({x:g}) exceeds the double range")
        return math.gamma(x)
    # reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    s = sinpi(x)
    if 1.0 - x <= GAMMA_MAX:
        return math.pi / (s * math.gamma(1.0 - x))
    # Gamma(1 - x) overflows; Gamma(x) itself is tiny
    return math.copysign(math.exp(math.log(math.pi / abs(s)) - math.lgamma(1.0 - x)), s)


def rgamma(x: float) -> float:
    """1/Gamma(x); entire, exactly 0 at the poles of Gamma."""
    x = float(x)
    if _is_pole(x):
        return 0.0
    if x > 0.0:
        if x > GAMMA_MAX:
            return math.exp(-math.lgamma(x))
        return 1.0 / math.gamma(x)
    s = sinpi(x)
    if 1.0 - x <= GAMMA_MAX:
        return s * math.gamma(1.0 - x) / math.pi
    try:
        return math.copysign(math.exp(math.lgamma(1.0 - x) - math.log(math.pi / abs(s))), s)
    except OverflowError:
        return math.copysign(math.inf, s)


def fact(a: float) -> float:
    """The factorial convention a! = Gamma(a + 1)."""
    return gamma(float(a) + 1.0)


def recip_fact(a: float) -> float:
    """1/a! for real ``a``.

    Total: at a = -1, -2, ... the factorial is infinite and this returns
    exactly 0.0. That is what drops the ``x**-1 / (-1)!`` (Dirac delta)
    term when power-rule derivatives are taken for x > 0.
    """
    return rgamma(float(a) + 1.0)
