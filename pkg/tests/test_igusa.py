from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nullwerte.algebra import INF, poly_from_roots
from nullwerte.igusa import (IgusaClebschTuple, IgusaError, SymmetricCoefficients2, eq_r_crosscheck,
                             eq_r_weight_check, igusa_from_roots_oracle, igusa_from_symmetric, matches,
                             symmetric_from_igusa)
from nullwerte.symcurve import BranchSet

fractions = st.fractions(min_value=-12, max_value=12, max_denominator=6).filter(lambda x: x != 0)


def model_from_roots(a, b, c):
    """Symmetric quintic with nonzero roots a, b, c, 1/(abc)."""
    rs = [a, b, c, 1 / (a * b * c)]
    p = poly_from_roots(rs)
    return SymmetricCoefficients2(p[3], p[2], p[1]), rs


def random_model(rng):
    def rf():
        return Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
    while True:
        c = SymmetricCoefficients2(rf(), rf(), rf())
        if igusa_from_symmetric(c).I10 != 0:
            return c


def test_zero_model():
    t = igusa_from_symmetric(SymmetricCoefficients2(0, 0, 0))
    assert t.as_list() == [40, -80, -320, 256]


@settings(max_examples=100, deadline=None)
@given(fractions, fractions, fractions)
def test_forward_matches_root_oracle(a, b, c):
    if len({a, b, c, 1 / (a * b * c)}) < 4:
        return
    model, rs = model_from_roots(a, b, c)
    assert igusa_from_symmetric(model) == igusa_from_roots_oracle(BranchSet([0] + rs + [INF]))


@settings(max_examples=30, deadline=None)
@given(fractions, fractions, fractions)
def test_forward_swap_invariance(g1, g2, g3):
    c = SymmetricCoefficients2(g1, g2, g3)
    assert igusa_from_symmetric(c) == igusa_from_symmetric(c.swapped())


@settings(max_examples=30, deadline=None)
@given(fractions, fractions, fractions, fractions)
def test_weighted_equality_under_rescaling(a, b, c, lam):
    t = IgusaClebschTuple(a, b, c, a + b)
    assert t.weighted_equal(t.rescale(lam))
    if t.I10 != 0:
        assert t.absolute() == t.rescale(lam).absolute()


def test_oracle_genus_check():
    with pytest.raises(IgusaError):
        igusa_from_roots_oracle(BranchSet([0, 1, 2, INF]))


def test_eq_r_weights():
    w = eq_r_weight_check()
    assert len(w) == 15 and all(w.values())


@pytest.mark.parametrize("seed", range(5))
def test_eq_r_crosscheck_exact(seed):
    rng = np.random.default_rng(seed)
    t = IgusaClebschTuple(*[Fraction(int(rng.integers(-50, 51)) or 1, int(rng.integers(1, 4))) for _ in range(4)])
    ok, const = eq_r_crosscheck(t)
    assert ok and const != 0


def test_eq_r_crosscheck_numeric():
    rng = np.random.default_rng(11)
    t = IgusaClebschTuple(*[complex(*rng.normal(size=2)) for _ in range(4)])
    assert eq_r_crosscheck(t)[0]


@pytest.mark.parametrize("seed", range(3))
def test_inverse_round_trip_exact(seed):
    c = random_model(np.random.default_rng(100 + seed))
    res = symmetric_from_igusa(igusa_from_symmetric(c), digits=30)
    assert res.eq_r_agrees
    assert any(matches(x, c) for x in res.candidates)
    with mpmath.workdps(40):
        for x in res.candidates:
            assert igusa_from_symmetric(x).weighted_equal(igusa_from_symmetric(c), tol=1e-20)


def test_inverse_rescaled_input():
    t = IgusaClebschTuple(40, -80, -320, 256).rescale(Fraction(3, 7))
    res = symmetric_from_igusa(t)
    assert any(matches(x, SymmetricCoefficients2(0, 0, 0)) for x in res.candidates)


def test_inverse_rejects_singular():
    with pytest.raises(IgusaError):
        symmetric_from_igusa(IgusaClebschTuple(1, 2, 3, 0))
