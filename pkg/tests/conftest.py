import mpmath
import pytest

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def mp50():
    with mpmath.workdps(50):
        yield mpmath


def mp_h_series(alpha, lam, x, dps=60, tol=1e-40, kmax=20000):
    """Brute-force h_alpha(x, lam) in extended precision (independent of fraccauchy)."""
    with mpmath.workdps(dps):
        a, lam, x = mpmath.mpf(alpha), mpmath.mpf(lam), mpmath.mpf(x)
        s = mpmath.mpf(0)
        for k in range(1, kmax):
            t = lam ** (k - 1) * x ** (k * a - 1) * mpmath.rgamma(k * a)
            s += t
            if k > 10 and abs(t) < tol:
                break
        return float(s)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
