"""Symmetric models from a bare normalized period matrix.

Genus 2: the six odd characteristics are the images of the six Weierstrass
points, and l_{12j} = [w_1, w_j] / [w_2, w_j].

Genus 3: the 28 odd characteristics are the images w_{rs} of W_r + W_s.  On
a hyperelliptic Z exactly one even Thetanullwert vanishes, at a
characteristic delta, and the images obey w_{rs} + w_{st} + delta = w_{rt}.
The labeling search below therefore works with x (+) y := x + y + delta.
Labels are 0-based: (0, 1, 2) play the role of the points 1, 2, 3.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import mpmath
import numpy as np

from .symcurve import SymmetricModel
from .theta import Characteristic, ThetaTable, char_sum, even_characteristics, odd_characteristics
from ._numeric import cond, pi, root, working_precision

DEFAULT_VANISH_TOL = 1e-6


class ReconstructionError(ValueError):
    pass


class HyperellipticityError(ReconstructionError):
    pass


def _table(Z, digits, table):
    return table if table is not None else ThetaTable(Z, digits)


@dataclass
class AlgebraicPeriodBasis:
    w_odd: list
    w0: Characteristic
    Omega1: np.ndarray


def choose_w0(T: ThetaTable) -> Characteristic:
    """The even characteristic with the largest |theta[w0]| (first in canonical order on ties)."""
    return max(even_characteristics(T.g), key=lambda m: abs(T.values[m]))


def algebraic_period_basis(Z, w_odd, w0=None, digits=None, table=None, cond_cap=1e12) -> AlgebraicPeriodBasis:
    """Omega1 = J[w_1..w_g] / (2 pi i theta[w0])."""
    T = _table(Z, digits, table)
    w0 = choose_w0(T) if w0 is None else w0
    if w0.is_odd:
        raise ReconstructionError(f"{w0} is odd")
    with working_precision(T.digits):
        t0 = T.value(w0)
        if abs(t0) < 1e-12 * T.even_max:
            raise ReconstructionError(f"theta[{w0}] vanishes")
        J = T.jacobian_matrix(list(w_odd))
        if cond(J) > cond_cap:
            raise ReconstructionError("Jacobian matrix is singular")
        omega = J / (2j * pi(T.digits) * t0)
        return AlgebraicPeriodBasis(list(w_odd), w0, omega)


def canonical_weierstrass_image(Z, basis_w, aux, digits=None, table=None):
    """([w_1, aux..] : ... : [w_g, aux..]) scaled so the largest coordinate is 1."""
    T = _table(Z, digits, table)
    with working_precision(T.digits):
        coords = [T.jacobian([w] + list(aux)) for w in basis_w]
        k = max(range(len(coords)), key=lambda i: abs(coords[i]))
        if abs(coords[k]) == 0:
            raise ReconstructionError("all canonical coordinates vanish")
        return [c / coords[k] for c in coords]


# --- double ratios on a labeled curve ------------------------------------------

def _aux_family(D, W, extra):
    """Pi(D_i + extra) for i = 2..g, with D_i = sum W - W_i."""
    out = []
    for i in range(1, len(W)):
        div = {k: 1 for k in W if k != W[i]}
        for k, n in extra.items():
            div[k] = div.get(k, 0) + n
        out.append(D.image(div))
    return out


def jacobian_double_ratio(D, T: ThetaTable, W, r, s, m, n, family=None):
    """[w_m, w'..][w_n, w''..] / ([w_m, w''..][w_n, w'..]) for labels W (g of them).

    ``D`` is a CharacteristicDictionary.  m and n are positions in ``family``
    (default ``W``), whose w_i = Pi(sum family - family_i).  The value does not
    depend on the family as long as family[m] = W[m] and family[n] = W[n].  With the
    conventions of this package the value is mu_{W_m W_n s r} = 1 / mu_{W_m W_n r s}.
    """
    fam = list(W if family is None else family)
    w = [D.image([k for k in fam if k != fam[i]]) for i in range(len(fam))]
    wp = _aux_family(D, W, {r: 1, W[0]: -1})
    wpp = _aux_family(D, W, {s: 1, W[0]: -1})
    with working_precision(T.digits):
        J = T.jacobian
        return J([w[m]] + wp) * J([w[n]] + wpp) / (J([w[m]] + wpp) * J([w[n]] + wp))


def theta_double_ratio(D, T: ThetaTable, W, r, s, m, n):
    """(theta[w_mr] theta[w_ns] / (theta[w_ms] theta[w_nr]))^2 with w_ab = Pi(D' + W_a + W_b).

    D' is the sum of the Weierstrass points outside W and {r, s}.  Equals
    +- mu_{W_m W_n r s}.
    """
    rest = [k for k in D.labels if k not in W and k not in (r, s)]

    def w(a, b):
        return D.image(rest + [a, b])
    with working_precision(T.digits):
        v = T.value
        return (v(w(W[m], r)) * v(w(W[n], s)) / (v(w(W[m], s)) * v(w(W[n], r)))) ** 2


# --- genus 2 -------------------------------------------------------------------

def _nonzero(x, scale, what):
    if abs(x) <= 1e-12 * scale:
        raise ReconstructionError(f"vanishing Jacobian Nullwert in {what}")
    return x


def genus2_nullwerte_roots(T: ThetaTable, pair=None):
    """(w1, w2, others, [l_{12j} for j >= 3]) via Jacobian Nullwerte."""
    odd = odd_characteristics(2)
    w1, w2 = pair if pair is not None else (odd[0], odd[1])
    rest = [w for w in odd if w not in (w1, w2)]
    with working_precision(T.digits):
        nums = [T.jacobian([w1, w]) for w in rest]
        dens = [T.jacobian([w2, w]) for w in rest]
        scale = max(abs(x) for x in nums + dens)
        roots = [n / _nonzero(d, scale, "l_{12j}") for n, d in zip(nums, dens)]
    return w1, w2, rest, roots


def genus2_symmetric_from_Z(Z, digits=None, table=None, pair=None) -> SymmetricModel:
    """Model X (X - l_123) ... (X - l_126) from the Jacobian Nullwerte of Z."""
    T = _table(Z, digits, table)
    roots = genus2_nullwerte_roots(T, pair)[3]
    with working_precision(T.digits):
        return SymmetricModel(2, roots)


def genus2_discriminant_from_Z(Z, digits=None, table=None, pair=None):
    """[w1, w2]^16 / (prod_{j>=3} [w1, wj])^4."""
    T = _table(Z, digits, table)
    odd = odd_characteristics(2)
    w1, w2 = pair if pair is not None else (odd[0], odd[1])
    with working_precision(T.digits):
        den = 1
        for w in odd:
            if w not in (w1, w2):
                den = den * T.jacobian([w1, w])
        return T.jacobian([w1, w2]) ** 16 / den ** 4


def genus2_roots_from_thetanullwerte(Z, digits=None, table=None):
    """Symmetric roots l_{12k} as quotients of six even Thetanullwerte.

    l_{12k} = +- prod_{r != 1,2,k} theta[w1+wk+wr] / theta[w2+wk+wr]; the sign is
    fixed by comparing with the Jacobian Nullwerte route.  Returns
    (roots, unsigned quotients, set of even characteristics touched).
    """
    T = _table(Z, digits, table)
    w1, w2, rest, reference = genus2_nullwerte_roots(T)
    T.reset_access()
    raw = []
    with working_precision(T.digits):
        for wk in rest:
            num, den = 1, 1
            for wr in rest:
                if wr == wk:
                    continue
                num = num * T.value(char_sum([w1, wk, wr]))
                den = den * T.value(char_sum([w2, wk, wr]))
            raw.append(num / _nonzero(den, T.even_max ** 3, "theta quotient"))
    touched = {m for m in T.accessed if not m.is_odd}
    signed = [q if abs(q - ref) <= abs(q + ref) else -q for q, ref in zip(raw, reference)]
    return signed, raw, touched


# --- genus 3 -------------------------------------------------------------------

@dataclass
class Genus3Labeling:
    """w[(j, k)] = image of W_j + W_k for 0 <= j < k <= 7."""

    delta: Characteristic
    w: dict
    companions: list

    def __call__(self, j, k):
        return self.w[(min(j, k), max(j, k))]

    def even4(self, a, b, c, d):
        """Image of W_a + W_b + W_c + W_d - 2W (an even characteristic)."""
        return char_sum([self(a, b), self(c, d), self.delta])


def vanishing_even(T: ThetaTable, tol=DEFAULT_VANISH_TOL):
    return [m for m in even_characteristics(T.g) if abs(T.values[m]) < tol * T.even_max]


def genus3_label(Z, digits=None, table=None, tol=DEFAULT_VANISH_TOL) -> Genus3Labeling:
    T = _table(Z, digits, table)
    if T.g != 3:
        raise ReconstructionError("genus 3 labeling needs a 3x3 matrix")
    zeros = vanishing_even(T, tol)
    if len(zeros) != 1:
        raise HyperellipticityError(f"expected one vanishing even Thetanullwert, found {len(zeros)}")
    delta = zeros[0]

    def op(x, y):
        return char_sum([x, y, delta])

    odd = odd_characteristics(3)
    for w1, w2 in itertools.combinations(odd, 2):
        w3 = op(w1, w2)
        if not w3.is_odd:
            continue
        # w1 = w_23, w2 = w_13, w3 = w_12
        comp = [w for w in odd if w not in (w2, w3) and op(w2, w).is_odd and op(w3, w).is_odd]
        if len(comp) != 6 or w1 not in comp:
            raise HyperellipticityError(f"found {len(comp)} companions instead of 6")
        rest = [w for w in comp if w != w1]
        first = {1: w3, 2: w2}
        for k, w in enumerate(rest, start=3):
            first[k] = w
        labels = {(0, k): first[k] for k in range(1, 8)}
        for j, k in itertools.combinations(range(1, 8), 2):
            labels[(j, k)] = op(first[j], first[k])
        if labels[(1, 2)] != w1:
            raise HyperellipticityError("labeling does not close")
        if len(set(labels.values())) != 28 or not all(m.is_odd for m in labels.values()):
            raise HyperellipticityError("labels are not 28 distinct odd characteristics")
        return Genus3Labeling(delta, labels, rest)
    raise HyperellipticityError("no pair of odd characteristics with odd sum")


def genus3_mu(L: Genus3Labeling, Z, m, n, r, s, t, digits=None, table=None):
    """mu_{mnrs} as a double ratio of triple Jacobian Nullwerte through the auxiliary t.

    The quotient [w_mt,w_ts,w_sn][w_nt,w_tr,w_rn] / ([w_mt,w_tr,w_rn][w_nt,w_ts,w_sn])
    evaluates to mu_{mnsr} = 1 / mu_{mnrs}, so r and s are exchanged below.
    """
    if len({m, n, r, s, t}) != 5:
        raise ValueError("indices must be distinct")
    r, s = s, r
    T = _table(Z, digits, table)
    with working_precision(T.digits):
        a = T.jacobian([L(m, t), L(t, s), L(s, n)])
        b = T.jacobian([L(n, t), L(t, r), L(r, n)])
        c = T.jacobian([L(m, t), L(t, r), L(r, n)])
        d = T.jacobian([L(n, t), L(t, s), L(s, n)])
        scale = max(abs(a), abs(b), abs(c), abs(d))
        return a * b / (_nonzero(c, scale, "mu") * _nonzero(d, scale, "mu"))


def genus3_mu_family(L, T, tol=1e-7):
    """mu_{01rs} for r != s in 2..7, each computed at two auxiliary indices."""
    fam = {}
    for r, s in itertools.permutations(range(2, 8), 2):
        ts = [t for t in range(2, 8) if t not in (r, s)]
        v1 = genus3_mu(L, None, 0, 1, r, s, ts[0], table=T)
        v2 = genus3_mu(L, None, 0, 1, r, s, ts[1], table=T)
        if abs(v1 - v2) > tol * max(1, abs(v1)):
            raise ReconstructionError(f"mu_{{01{r}{s}}} depends on the auxiliary index")
        fam[(r, s)] = v1
    return fam


def genus3_symmetric_from_Z(Z, digits=None, table=None, tol=1e-7) -> SymmetricModel:
    """l_{012} = sixth root of prod_k mu_{012k}; l_{01k} = l_{012} / mu_{012k}."""
    T = _table(Z, digits, table)
    L = genus3_label(Z, table=T)
    with working_precision(T.digits):
        fam = genus3_mu_family(L, T, tol)
        prod = 1
        for k in range(3, 8):
            prod = prod * fam[(2, k)]
        l2 = root(prod, 6, T.digits)
        roots = [l2] + [l2 / fam[(2, k)] for k in range(3, 8)]
        return SymmetricModel(3, roots)


# (4-subset of 0-based labels, exponent); the product equals l_{012}^3
FROBENIUS_L012 = (
    ((0, 2, 3, 4), 3), ((0, 2, 3, 5), 1), ((0, 3, 5, 6), 1), ((0, 3, 5, 7), 1),
    ((0, 2, 4, 5), 3), ((0, 2, 6, 7), 5),
    ((0, 3, 4, 5), -5), ((0, 3, 6, 7), -3), ((0, 2, 4, 6), -1), ((0, 2, 4, 7), -1),
    ((0, 4, 6, 7), -1), ((0, 5, 6, 7), -3),
)


def genus3_l012_cubed(L: Genus3Labeling, Z, digits=None, table=None):
    """l_{012}^3 as a quotient of twelve even Thetanullwerte; returns (value, touched)."""
    T = _table(Z, digits, table)
    T.reset_access()
    with working_precision(T.digits):
        val = 1
        for subset, e in FROBENIUS_L012:
            val = val * T.value(L.even4(*subset)) ** e
    return val, set(T.accessed)


def genus3_l012_from_thetanullwerte(L: Genus3Labeling, Z, digits=None, table=None, reference=None):
    """l_{012} from twelve even Thetanullwerte, up to a cube root of unity.

    With ``reference`` (e.g. the mu-route value) the cube root of unity is
    chosen to match it.
    """
    T = _table(Z, digits, table)
    val, touched = genus3_l012_cubed(L, Z, table=T)
    with working_precision(T.digits):
        ell = root(val, 3, T.digits)
        if reference is not None:
            w = mpmath.expjpi(mpmath.mpf(2) / 3) if T.Z.mp else np.exp(2j * np.pi / 3)
            ell = min((ell * w ** k for k in range(3)), key=lambda x: abs(x - reference))
    return ell, touched
