"""Gauss-Jacobi quadrature for weakly singular convolution kernels.

Integrals of the form ``int_0^x (x - t)**g f(t) dt`` with ``-1 < g <= 0`` are
mapped to ``[0, 1]`` by ``t = x u`` and the factor ``(1 - u)**g`` is moved
into the weight, so smooth ``f`` is integrated with spectral accuracy.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError
from .gamma import rgamma

__all__ = [
    "QuadratureRule",
    "build_rule",
    "integrate_singular",
    "default_order",
    "DEFAULT_ORDER",
    "ORDER_ENV",
]

DEFAULT_ORDER = 64
ORDER_ENV = "FRACCAUCHY_QUAD_ORDER"


def default_order() -> int:
    """Quadrature order, overridable through ``FRACCAUCHY_QUAD_ORDER``."""
    raw = os.environ.get(ORDER_ENV)
    if not raw:
        return DEFAULT_ORDER
    order = int(raw)
    if order < 1:
        raise ValueError(f"{ORDER_ENV} must be a positive integer, got {raw!r}")
    return order


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for ``int_0^1 (1 - u)**gamma_exp f(u) du``."""

    gamma_exp: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return len(self.nodes)

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def _jacobi_recurrence(a: float, b: float, order: int):
    """Diagonal and off-diagonal of the Jacobi matrix for weight (1-t)^a (1+t)^b."""
    ab = a + b
    kk = np.arange(1, order, dtype=np.float64)
    s = 2.0 * kk + ab
    diag = np.empty(order)
    diag[0] = (b - a) / (ab + 2.0)
    diag[1:] = (b * b - a * a) / (s * (s + 2.0))
    off = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0))
    return diag, np.sqrt(off)


@functools.lru_cache(maxsize=256)
def _cached_rule(gamma_exp: float, order: int) -> QuadratureRule:
    diag, off = _jacobi_recurrence(gamma_exp, 0.0, order)
    try:
        t, vecs = eigh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(f"Golub-Welsch eigensolve failed: {exc}") from exc
    # total mass of (1-u)^g on [0,1]
    w = vecs[0, :] ** 2 / (gamma_exp + 1.0)
    u = 0.5 * (1.0 + t)
    if not (np.all(np.isfinite(u)) and np.all(w > 0.0)):
        raise ConvergenceError("Golub-Welsch produced invalid nodes or weights")
    # eigen-solvers may put the extreme nodes on the endpoints in round-off
    u = np.clip(u, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
    u.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(gamma_exp, u, w)


def build_rule(gamma_exp: float, order: int = DEFAULT_ORDER) -> QuadratureRule:
    """Gauss-Jacobi rule on [0, 1] for weight ``(1 - u)**gamma_exp``.

    Exact for polynomials of degree ``2 * order - 1``. Rules are cached per
    ``(gamma_exp, order)`` and are read-only, so they can be shared between
    threads.
    """
    gamma_exp = float(gamma_exp)
    order = int(order)
    if not -1.0 < gamma_exp <= 0.0:
        raise ValueError(f"gamma_exp must lie in (-1, 0], got {gamma_exp!r}")
    if order < 1:
        raise ValueError("order must be >= 1")
    return _cached_rule(gamma_exp, order)


def integrate_singular(rule: QuadratureRule, x: float, g: Callable[[np.ndarray], np.ndarray]) -> float:
    """``int_0^x (x - t)**gamma g(t) dt / Gamma(gamma + 1)`` with ``gamma = rule.gamma_exp``.

    ``g`` must accept a numpy array of points in (0, x).
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    ge = rule.gamma_exp
    scale = x ** (ge + 1.0) * rgamma(ge + 1.0)
    return scale * float(np.dot(rule.weights, g(x * rule.nodes)))
