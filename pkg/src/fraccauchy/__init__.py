"""Mittag-Leffler type functions, their exponential-integral representation,
and closed-form solutions of linear fractional Cauchy problems."""

from .cauchy import (
    CauchyProblem,
    CauchySolution,
    char_roots,
    eval_solution_exp,
    eval_solution_series,
    solve,
    solve_coefficients,
    verify_initial_conditions,
)
from .errors import (
    ComplexRootsUnsupported,
    ConvergenceError,
    FracCauchyError,
    NoConvergence,
    NonConvergence,
    PoleError,
    RepeatedRoots,
    SearchExhausted,
    SingularSystem,
    ZeroBasisValue,
)
from .exprepr import ExpReprParams, eval_h_exp, verify_theorem1
from .gamma import fact, gamma, recip_fact
from .ml import HParams, SeriesControl, eval_E, eval_E2, eval_h_series
from .oddfrac import OddFraction, approximate
from .quad import QuadratureRule, build_rule, integrate_singular

__version__ = "0.1.0"
