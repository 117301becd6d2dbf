from fractions import Fraction

import numpy as np
import pytest

from nullwerte.algebra import INF
from nullwerte.periods import characteristic_dictionary, period_matrix
from nullwerte.symcurve import BranchSet
from nullwerte.theta import RiemannMatrix, ThetaTable

_CRITERIA = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "FAIL (expected, strict xfail)"
        else:
            status = "PASS" if rep.passed else "FAIL"
        _CRITERIA.append((mark.args[0], mark.args[1], status, getattr(rep, "duration", 0.0)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n, text, status, dt in sorted(_CRITERIA, key=lambda c: str(c[0])):
        terminalreporter.write_line(f"criterion {n}: {status:<30} {dt:7.2f}s  {text}")


WENG = [Fraction(c) for c in (0, 1832265664, 0, -3694084, 0, 961, 0, 1)]


class Curve:
    def __init__(self, points, digits=None):
        self.B = BranchSet(list(points))
        self.P = period_matrix(self.B, digits)
        self.D = characteristic_dictionary(self.B, self.P)
        self.T = ThetaTable(self.P.Z, digits)


@pytest.fixture(scope="session")
def quintic():
    return Curve([0, 1, 2, 3, 4, INF])


@pytest.fixture(scope="session")
def septic():
    return Curve([0, 1, 2, 3, 4, 5, 6, INF])


@pytest.fixture(scope="session")
def sextic():
    """Even-degree genus-2 model, no point at infinity."""
    return Curve([Fraction(-3), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(7, 2), Fraction(5)])


def random_rational_roots(rng, n, gap=Fraction(1, 2), lo=-100, hi=100):
    """n sorted distinct rationals in [-10, 10] with denominator 10 and a minimum gap."""
    while True:
        r = sorted(Fraction(int(rng.integers(lo, hi + 1)), 10) for _ in range(n))
        if all(b - a >= gap for a, b in zip(r, r[1:])):
            return r


def random_siegel(g, rng, digits=None):
    A = rng.normal(size=(g, g))
    X = rng.uniform(-0.5, 0.5, size=(g, g))
    return RiemannMatrix((X + X.T) / 2 + 1j * (A @ A.T + 0.5 * np.eye(g)), digits)
