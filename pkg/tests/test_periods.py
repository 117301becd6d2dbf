import itertools
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from nullwerte.algebra import INF
from nullwerte.periods import (NonRealBranchPointError, PeriodError, characteristic_dictionary,
                               period_matrix)
from nullwerte.symcurve import BranchSet
from nullwerte.theta import ThetaTable, char_add, char_sum, even_characteristics

from conftest import WENG


def _c(M):
    return np.array([[complex(x) for x in row] for row in np.asarray(M)])


def test_square_lattice():
    P = period_matrix(BranchSet([-1, 0, 1, INF]))
    assert abs(complex(P.Z.matrix[0, 0]) - 1j) < 1e-10
    P = period_matrix(BranchSet([-1, 0, 1, INF]), 30)
    assert abs(P.Z.matrix[0, 0] - 1j) < mpmath.mpf(10) ** -28


@pytest.mark.parametrize("points", [[0, 1, 2, 3, 4, INF], [-3, -1, Fraction(1, 2), 2, Fraction(7, 2), 5],
                                    [0, 1, 2, 3, 4, 5, 6, INF]])
def test_riemann_relations(points):
    P = period_matrix(BranchSet(points))
    Z = np.linalg.solve(_c(P.Omega1), _c(P.Omega2))
    assert np.allclose(Z, Z.T, atol=1e-10)
    assert np.linalg.eigvalsh(Z.imag).min() > 0


def test_precision_agreement():
    B = BranchSet([0, 1, 2, 3, 4, INF])
    a, b = _c(period_matrix(B, 30).Z.matrix), _c(period_matrix(B, 60).Z.matrix)
    assert np.abs(a - b).max() < 1e-12
    assert np.abs(a - _c(period_matrix(B).Z.matrix)).max() < 1e-10


def test_dictionary_counts(quintic, septic):
    assert len(set(quintic.D.odd_map().values())) == 6
    assert len(set(septic.D.odd_map().values())) == 28
    assert all(w.is_odd for w in septic.D.odd_map().values())


def test_odd_images_vanish(quintic, septic, sextic):
    for C in (quintic, septic, sextic):
        scale = max(abs(complex(C.T.value(m))) for m in even_characteristics(C.B.genus))
        for w in C.D.odd_map().values():
            assert abs(complex(C.T.value(w))) < 1e-10 * scale


def test_genus3_additivity(septic):
    D = septic.D
    for i, j, k, l in itertools.combinations(D.labels, 4):
        # two odd images differ by the sum of the moved branch-point halves
        lhs = char_add(D.odd(i, j), D.odd(k, l))
        assert lhs == char_sum([D.c[i], D.c[j], D.c[k], D.c[l]], 3)


def test_even_partition_images(quintic):
    D = quintic.D
    evens = {D.even_from_partition(S) for S in itertools.combinations(D.labels, 3)}
    assert len(evens) == 10
    assert all(not w.is_odd for w in evens)


def test_rejects_complex_and_collisions():
    with pytest.raises(NonRealBranchPointError):
        period_matrix(BranchSet([0, 1, 2, 1j, 4, INF]))
    with pytest.raises(PeriodError):
        period_matrix(BranchSet([0, 1, 1 + 1e-12, 3, 4, INF]))


def test_weng_complex_pair():
    B = BranchSet.from_polynomial(WENG, 30)
    with pytest.raises(NonRealBranchPointError):
        period_matrix(B, 30)
    P = period_matrix(B, 30, allow_complex=True)
    Z = _c(P.Z.matrix)
    assert np.allclose(Z, Z.T)
    assert np.linalg.eigvalsh(Z.imag).min() > 0
    D = characteristic_dictionary(B, P)
    assert len(set(D.odd_map().values())) == 28
    T = ThetaTable(P.Z, 30)
    assert max(abs(complex(T.value(w))) for w in D.odd_map().values()) < 1e-20
