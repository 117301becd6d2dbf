"""Numerical checks of the classical theta identities.

Every checker returns an IdentityReport.  Root-ambiguous identities are
compared at a root-free power (8th or 4th) or by magnitude; residuals are
relative, |lhs - rhs| / max(|lhs|, |rhs|, 1e-300).

Conventions: Omega1 is the matrix of a-periods of x^m dx / y from the periods
module; Delta(F) is the product of squared root differences of F with the
point at infinity dropped; theta_1 = -theta[1|1] in genus 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .algebra import INF, _bareiss_det, poly_eval, poly_from_roots
from .periods import CharacteristicDictionary, PeriodData, characteristic_dictionary, period_matrix
from .symcurve import BranchSet
from .theta import (RiemannMatrix, ThetaTable, char_sum, even_characteristics, is_azygetic,
                    odd_characteristics)
from ._numeric import det, inv, matmul, pi, rel_residual, to_scalar, use_mp, working_precision

FLOOR = 1e-300


class IdentityError(ValueError):
    pass


@dataclass
class IdentityReport:
    name: str
    params: dict
    lhs: object
    rhs: object
    residual: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(self.residual < self.tol)


def _report(name, params, lhs, rhs, tol, residual=None):
    if residual is None:
        residual = rel_residual(lhs, rhs, FLOOR)
    return IdentityReport(name, params, lhs, rhs, float(residual), tol)


def _table(P, table):
    return table if table is not None else ThetaTable(P.Z, P.digits)


def _delta(points, exact=False):
    pts = [p for p in points if p is not INF]
    out = Fraction(1) if exact else 1
    for a, b in itertools.combinations(pts, 2):
        out = out * (a - b) ** 2
    return out


def _values(B, labels, digits):
    return [B.points[k] if B.points[k] is INF else to_scalar(B.points[k], digits) for k in labels]


def _complement(B, labels):
    return [k for k in range(len(B.points)) if k not in labels]


def _check_partition(B, part, size):
    part = list(part)
    if len(set(part)) != len(part) or len(part) != size:
        raise IdentityError(f"partition needs {size} distinct labels, got {part}")
    if any(k < 0 or k >= len(B.points) for k in part):
        raise IdentityError("label out of range")
    return part


def _S(B, labels, g, digits):
    """Coefficients (constant first) of prod (X - a_i) over the finite points, padded to length g."""
    fin = [x for x in _values(B, labels, digits) if x is not INF]
    c = poly_from_roots(fin, to_scalar(1, digits))
    out = np.array([to_scalar(0, digits)] * g, dtype=object if use_mp(digits) else complex)
    for k, x in enumerate(c):
        out[k] = x
    return out


def _grad_ratio(grad, v):
    """Common ratio grad / v and the spread of the componentwise ratios."""
    k = max(range(len(v)), key=lambda i: abs(v[i]))
    c = grad[k] / v[k]
    spread = max(abs(grad[i] - c * v[i]) for i in range(len(v))) / max(max(abs(x) for x in grad), FLOOR)
    return c, float(spread)


# --- Thomae ---------------------------------------------------------------------------

def check_thomae_even(B: BranchSet, P: PeriodData, D: CharacteristicDictionary, partition,
                      table=None, tol=1e-8) -> IdentityReport:
    """theta[w_e]^8 = (2 pi)^{-4g} det(Omega1)^4 Delta(G1) Delta(G2)."""
    g = B.genus
    part = _check_partition(B, partition, g + 1)
    we = D.even_from_partition(part)
    if we.is_odd:
        raise IdentityError(f"{we} is odd: dictionary inconsistency")
    T = _table(P, table)
    with working_precision(P.digits):
        lhs = T.value(we) ** 8
        rhs = (2 * pi(P.digits)) ** (-4 * g) * det(P.Omega1) ** 4 \
            * _delta(_values(B, part, P.digits)) * _delta(_values(B, _complement(B, part), P.digits))
        return _report("thomae_even", {"partition": part, "w_e": str(we)}, lhs, rhs, tol)


def check_thomae_jacobian(B, P, D, partition, table=None, tol=1e-8) -> IdentityReport:
    """2 (2 pi)^{g/2} grad theta[w_o] = (Delta(F1) Delta(F2))^{1/8} sqrt(det Omega1) S . Omega1.

    Checked as proportionality of the two vectors plus the 8th power of the factor.
    """
    g = B.genus
    part = _check_partition(B, partition, g - 1)
    wo = D.image(part)
    if not wo.is_odd:
        raise IdentityError(f"{wo} is not odd")
    T = _table(P, table)
    with working_precision(P.digits):
        v = matmul(_S(B, part, g, P.digits), P.Omega1)
        c, spread = _grad_ratio(T.gradient(wo), v)
        lhs = (2 * c) ** 8 * (2 * pi(P.digits)) ** (4 * g)
        rhs = _delta(_values(B, part, P.digits)) * _delta(_values(B, _complement(B, part), P.digits)) \
            * det(P.Omega1) ** 4
        res = max(rel_residual(lhs, rhs, FLOOR), spread)
        return _report("thomae_jacobian", {"partition": part, "w_o": str(wo), "direction_residual": spread},
                       lhs, rhs, tol, res)


def check_thomae_quotient(B, P, D, wo_partition, we_partition, table=None, tol=1e-8) -> IdentityReport:
    """(2 / theta[w_e]) grad theta[w_o] against S . Omega1, in the 8th-root and the 4th-root forms.

    The 4th-root form needs we_partition = wo_partition + {gamma_1, gamma_2}
    with both gammas finite.
    """
    g = B.genus
    wo_part = _check_partition(B, wo_partition, g - 1)
    we_part = _check_partition(B, we_partition, g + 1)
    gammas = [k for k in we_part if k not in wo_part]
    if len(gammas) != 2 or not set(wo_part) <= set(we_part):
        raise IdentityError("we_partition must extend wo_partition by two points")
    if any(B.points[k] is INF for k in gammas):
        raise IdentityError("gamma_1, gamma_2 must be finite")
    wo, we = D.image(wo_part), D.even_from_partition(we_part)
    if not wo.is_odd or we.is_odd:
        raise IdentityError("parity mismatch in the partitions")
    T = _table(P, table)
    dg = P.digits
    with working_precision(dg):
        v = matmul(_S(B, wo_part, g, dg), P.Omega1)
        c, spread = _grad_ratio(2 * T.gradient(wo) / T.value(we), v)
        rest = _complement(B, wo_part)
        ratio8 = _delta(_values(B, wo_part, dg)) * _delta(_values(B, rest, dg)) \
            / (_delta(_values(B, we_part, dg)) * _delta(_values(B, _complement(B, we_part), dg)))
        g1, g2 = _values(B, gammas, dg)
        G2 = [x for x in _values(B, _complement(B, we_part), dg) if x is not INF]
        F1 = [x for x in _values(B, wo_part, dg) if x is not INF]
        num = poly_eval(poly_from_roots(G2), g1) * poly_eval(poly_from_roots(G2), g2)
        den = poly_eval(poly_from_roots(F1), g1) * poly_eval(poly_from_roots(F1), g2)
        ratio4 = num / den
        r8 = rel_residual(c ** 8, ratio8, FLOOR)
        # the 4th-root form is the square root of a square: c^4 = eps * ratio4 with eps = +-1
        eps = 1 if abs(c ** 4 - ratio4) <= abs(c ** 4 + ratio4) else -1
        r4 = rel_residual(c ** 4, eps * ratio4, FLOOR)
        mutual = rel_residual(ratio4 ** 2, ratio8, FLOOR)
        return _report("thomae_quotient",
                       {"wo_partition": wo_part, "we_partition": we_part, "residual_8th": float(r8),
                        "residual_4th": float(r4), "sign_4th": eps, "mutual": float(mutual),
                        "direction_residual": spread},
                       c ** 8, ratio8, tol, max(r8, r4, mutual, spread))


def check_hyperplane(B, P, D, partition, table=None, tol=1e-7) -> IdentityReport:
    """grad theta[w_o] Omega1^{-1} (1, a, ..., a^{g-1})^T = 0 for the points a of w_o's divisor."""
    g = B.genus
    part = _check_partition(B, partition, g - 1)
    wo = D.image(part)
    T = _table(P, table)
    with working_precision(P.digits):
        h = matmul(T.gradient(wo), inv(P.Omega1))
        scale = max(abs(x) for x in h)
        worst = 0.0
        for a in _values(B, part, P.digits):
            if a is INF:
                val, size = h[g - 1], scale
            else:
                val = sum(h[k] * a ** k for k in range(g))
                size = scale * sum(abs(a) ** k for k in range(g))
            worst = max(worst, float(abs(val) / max(size, FLOOR)))
        return _report("hyperplane", {"partition": part, "w_o": str(wo)}, worst, 0, tol, worst)


# --- Rosenhain, Frobenius, Igusa ---------------------------------------------------------

def _rosenhain_sides(T, m1, m2):
    odd = odd_characteristics(2)
    lhs = T.jacobian([m1, m2])
    rhs = pi(T.digits) ** 2
    for m in odd:
        if m not in (m1, m2):
            rhs = rhs * T.value(char_sum([m1, m2, m]))
    return lhs, rhs


def check_rosenhain(Z, m1=None, m2=None, digits=None, tol=1e-9, path_steps=5, step=0.02) -> IdentityReport:
    """[m1, m2] = +- pi^2 prod theta[m1 + m2 + m] for any Z in H_2, with the sign tracked along a path."""
    Z = Z if isinstance(Z, RiemannMatrix) else RiemannMatrix(Z, digits)
    odd = odd_characteristics(2)
    m1, m2 = (odd[0], odd[1]) if m1 is None else (m1, m2)
    T = ThetaTable(Z, Z.digits)
    with working_precision(Z.digits):
        lhs, rhs = _rosenhain_sides(T, m1, m2)
        res = rel_residual(abs(lhs), abs(rhs), FLOOR)
        sign = lhs / rhs
        direction = np.array([[1, 0.5], [0.5, -1]], dtype=complex) * (1 + 0.5j)
        stable = True
        for k in range(1, path_steps + 1):
            Zk = RiemannMatrix(Z.matrix + step * k * direction, Z.digits)
            a, b = _rosenhain_sides(ThetaTable(Zk, Z.digits), m1, m2)
            s = a / b
            stable = stable and abs(s - sign) < 1e-6
        params = {"m1": str(m1), "m2": str(m2), "sign": int(round(float(mpmath.re(sign)))),
                  "sign_stable": bool(stable)}
        if not stable:
            res = max(res, 1.0)
        return _report("rosenhain", params, lhs, rhs, tol, res)


def check_frobenius_g3(B, P, D, i, j, k, table=None, tol=1e-6) -> IdentityReport:
    """[w_ik, w_ij, w_jk] = +- pi^3 prod_{r != i,j,k} theta[w_ijkr], w_ijkr = Pi(W_i + W_j + W_k - W_r)."""
    if B.genus != 3:
        raise IdentityError("genus 3 required")
    T = _table(P, table)
    chars = []
    for r in range(8):
        if r in (i, j, k):
            continue
        m = D.image({i: 1, j: 1, k: 1, r: -1})
        if m.is_odd:
            raise IdentityError(f"w_{i}{j}{k}{r} is odd: dictionary bug")
        chars.append(m)
    with working_precision(P.digits):
        lhs = T.jacobian([D.odd(i, k), D.odd(i, j), D.odd(j, k)])
        rhs = pi(P.digits) ** 3
        for m in chars:
            rhs = rhs * T.value(m)
        return _report("frobenius_g3", {"triplet": [i, j, k]}, lhs, rhs, tol,
                       rel_residual(abs(lhs), abs(rhs), FLOOR))


def fundamental_system(D: CharacteristicDictionary, labels):
    """Images of D - W_i (i in labels) and D + W_i - 2 W_last (other i, last label included)."""
    g = D.g
    labels = list(labels)
    if len(set(labels)) != g:
        raise IdentityError(f"need {g} distinct labels")
    last = D.labels[-1]
    if last in labels:
        raise IdentityError("the last label plays the role of W_{2g+2}")
    out = []
    for w in labels:
        out.append(D.image({k: 1 for k in labels if k != w}))
    for w in D.labels:
        if w in labels:
            continue
        div = {k: 1 for k in labels}
        div[w] = div.get(w, 0) + 1
        div[last] = div.get(last, 0) - 2
        out.append(D.image(div))
    return out


def is_fundamental(chars) -> bool:
    return all(is_azygetic(*t) for t in itertools.combinations(chars, 3))


def check_igusa_product(B, P, D, labels, table=None, tol=1e-6) -> IdentityReport:
    """[m_1..m_g] = +- pi^g prod theta[m_{g+1..2g+2}] on the hyperelliptic fundamental system."""
    g = B.genus
    fs = fundamental_system(D, labels)
    if not is_fundamental(fs):
        raise IdentityError("constructed sequence is not azygetic")
    parity = [m.is_odd for m in fs]
    if parity != [True] * g + [False] * (g + 2):
        raise IdentityError("fundamental system is not special")
    T = _table(P, table)
    with working_precision(P.digits):
        lhs = T.jacobian(fs[:g])
        rhs = pi(P.digits) ** g
        for m in fs[g:]:
            rhs = rhs * T.value(m)
        return _report("igusa_product", {"labels": list(labels), "system": [str(m) for m in fs],
                                         "azygetic": True}, lhs, rhs, tol,
                       rel_residual(abs(lhs), abs(rhs), FLOOR))


def completions(odd_chars):
    """All sets of g+2 even characteristics completing odd_chars to a fundamental system."""
    g = odd_chars[0].g
    evens = even_characteristics(g)
    out = []

    def extend(current, start):
        if len(current) == 2 * g + 2:
            out.append(current[g:])
            return
        for idx in range(start, len(evens)):
            m = evens[idx]
            if all(is_azygetic(a, b, m) for a, b in itertools.combinations(current, 2)):
                extend(current + [m], idx + 1)
    if not is_fundamental(odd_chars):
        return out
    extend(list(odd_chars), 0)
    return out


def nonvanishing_completions(T: ThetaTable, odd_chars, rel_tol=1e-6):
    """(number of completions, number whose theta product does not vanish)."""
    comps = completions(list(odd_chars))
    scale = T.even_max ** (T.g + 2)
    alive = 0
    for comp in comps:
        prod = 1
        for m in comp:
            prod = prod * T.values[m]
        if abs(prod) > rel_tol * scale:
            alive += 1
    return len(comps), alive


# --- genus 1 ------------------------------------------------------------------------------

def check_jacobi_g1(tau, digits=None, tol=1e-12) -> IdentityReport:
    """theta_1'(0) = pi theta_2 theta_3 theta_4 with theta_1 = -theta[1|1]."""
    Z = RiemannMatrix(np.array([[tau]], dtype=object if use_mp(digits) else complex), digits)
    T = ThetaTable(Z, digits)
    odd = odd_characteristics(1)[0]
    with working_precision(digits):
        lhs = -T.gradient(odd)[0]
        rhs = pi(digits)
        for m in even_characteristics(1):
            rhs = rhs * T.value(m)
        return _report("jacobi_g1", {"tau": str(tau)}, lhs, rhs, tol)


# --- eighth power --------------------------------------------------------------------------

def _subset_for(D, m, size):
    for S in itertools.combinations(D.labels, size):
        if D.image(S) == m:
            return list(S)
    raise IdentityError(f"{m} is not the image of a {size}-subset")


def eighth_power_value(B, D, odd_chars, even_chars):
    """det(S)^8 prod Delta(F_i1) Delta(F_i2) / prod Delta(G_j1) Delta(G_j2), exact for rational points."""
    g = B.genus
    exact = B.exact
    rows = []
    num = Fraction(1) if exact else 1
    for m in odd_chars:
        part = _subset_for(D, m, g - 1)
        fin = [B.points[k] for k in part if B.points[k] is not INF]
        c = poly_from_roots([Fraction(x) for x in fin] if exact else fin, Fraction(1) if exact else 1)
        rows.append(list(c) + [0] * (g - len(c)))
        num = num * _delta([B.points[k] for k in part], exact) \
            * _delta([B.points[k] for k in _complement(B, part)], exact)
    den = Fraction(1) if exact else 1
    for m in even_chars:
        part = _subset_for(D, m, g + 1)
        den = den * _delta([B.points[k] for k in part], exact) \
            * _delta([B.points[k] for k in _complement(B, part)], exact)
    if exact:
        dS = _bareiss_det(rows)
    else:
        dS = det(np.array(rows, dtype=complex))
    return dS ** 8 * num / den


def check_eighth_power_rationality(B, P, D, odd_chars, even_chars, table=None, tol=1e-8) -> IdentityReport:
    """(2^g [w_1..w_g] / (det Omega1 prod theta[w_j']))^8 equals the rational Thomae expression.

    The 2^g / det(Omega1) factor equals 1 / (pi^g det(Omega1 / (2 pi))).
    """
    g = B.genus
    if len(odd_chars) != g or len(even_chars) != g:
        raise IdentityError(f"need {g} odd and {g} even characteristics")
    T = _table(P, table)
    with working_precision(P.digits):
        val = 2 ** g * T.jacobian(list(odd_chars)) / det(P.Omega1)
        for m in even_chars:
            val = val / T.value(m)
        lhs = val ** 8
        exact = eighth_power_value(B, D, odd_chars, even_chars)
        rhs = to_scalar(exact, P.digits) if isinstance(exact, Fraction) else exact
        rep = _report("eighth_power", {"odd": [str(m) for m in odd_chars], "even": [str(m) for m in even_chars],
                                       "exact": str(exact) if isinstance(exact, Fraction) else None},
                      lhs, rhs, tol)
        return rep


def check_jacobi_elliptic(B, P, D, i, table=None, tol=1e-10) -> IdentityReport:
    """(theta_1' / (pi theta[w_e]))^4 = omega1^4 (a_i - a_j)(a_i - a_k) for y^2 = cubic.

    w_e = Pi(W_i + W_inf - 2W) and omega1 = Omega1 / (2 pi), the proper period.
    """
    if B.genus != 1 or not B.has_infinity:
        raise IdentityError("genus 1 with a point at infinity required")
    inf = [k for k, p in enumerate(B.points) if p is INF][0]
    if i == inf:
        raise IdentityError("i must be a finite label")
    we = D.even_from_partition([i, inf])
    T = _table(P, table)
    dg = P.digits
    with working_precision(dg):
        odd = odd_characteristics(1)[0]
        lhs = (-T.gradient(odd)[0] / (pi(dg) * T.value(we))) ** 4
        a = _values(B, [i], dg)[0]
        others = [x for k, x in enumerate(_values(B, range(4), dg)) if k not in (i, inf)]
        omega1 = P.Omega1[0, 0] / (2 * pi(dg))
        rhs = omega1 ** 4 * (a - others[0]) * (a - others[1])
        eps = 1 if abs(lhs - rhs) <= abs(lhs + rhs) else -1
        return _report("jacobi_elliptic", {"i": i, "w_e": str(we), "sign": eps}, lhs, eps * rhs, tol)


# --- suites --------------------------------------------------------------------------------

TEST_CURVES = {
    2: [0, 1, 2, 3, 4, INF],
    3: [0, 1, 2, 3, 4, 5, 6, INF],
}


def _setup(points, digits):
    B = BranchSet(list(points))
    P = period_matrix(B, digits)
    D = characteristic_dictionary(B, P)
    return B, P, D, ThetaTable(P.Z, digits)


def random_siegel(g, rng, digits=None):
    A = rng.normal(size=(g, g))
    Y = A @ A.T + 0.5 * np.eye(g)
    X = rng.uniform(-0.5, 0.5, size=(g, g))
    return RiemannMatrix((X + X.T) / 2 + 1j * Y, digits)


def suite_thomae(digits=None, rng=None):
    out = []
    for g, pts in TEST_CURVES.items():
        B, P, D, T = _setup(pts, digits)
        n = 2 * g + 2
        evens = [p for p in itertools.combinations(range(n), g + 1) if 0 in p]
        odds = list(itertools.combinations(range(n), g - 1))
        if g == 3:
            sel = rng.choice(len(evens), 5, replace=False) if rng is not None else range(5)
            evens = [evens[i] for i in sel]
            sel = rng.choice(len(odds), 5, replace=False) if rng is not None else range(5)
            odds = [odds[i] for i in sel]
        tol = 1e-7 if g == 2 else 1e-6
        out += [check_thomae_even(B, P, D, p, T, tol) for p in evens]
        out += [check_thomae_jacobian(B, P, D, p, T, tol) for p in odds]
        out += [check_hyperplane(B, P, D, p, T, 1e-7) for p in odds]
        for wo in odds:
            fin = [k for k in range(n) if k not in wo and B.points[k] is not INF]
            pairs = list(itertools.combinations(fin, 2))
            if g == 3:
                pairs = pairs[:2]
            for a, b in pairs:
                out.append(check_thomae_quotient(B, P, D, wo, sorted(list(wo) + [a, b]), T, tol))
    return out


def suite_rosenhain(digits=None, rng=None, count=20):
    rng = rng if rng is not None else np.random.default_rng(0)
    out = []
    odd = odd_characteristics(2)
    for _ in range(count):
        Z = random_siegel(2, rng, digits)
        out.append(check_rosenhain(Z, odd[0], odd[1], digits))
    Z = random_siegel(2, rng, digits)
    for m1, m2 in itertools.combinations(odd, 2):
        out.append(check_rosenhain(Z, m1, m2, digits, path_steps=1))
    return out


def suite_frobenius(digits=None, rng=None):
    B, P, D, T = _setup(TEST_CURVES[3], digits)
    return [check_frobenius_g3(B, P, D, i, j, k, T) for i, j, k in itertools.combinations(range(8), 3)]


def suite_igusa(digits=None, rng=None):
    out = []
    for g, pts in TEST_CURVES.items():
        B, P, D, T = _setup(pts, digits)
        out.append(check_igusa_product(B, P, D, list(range(g)), T, 1e-8 if g == 2 else 1e-6))
        evens = []
        for S in itertools.combinations(D.labels, g + 1):
            m = D.image(S)
            if m not in evens:
                evens.append(m)
            if len(evens) == g:
                break
        fs = fundamental_system(D, list(range(g)))
        out.append(check_eighth_power_rationality(B, P, D, fs[:g], evens, T, 1e-8 if g == 2 else 1e-5))
    return out


def suite_jacobi(digits=None, rng=None):
    taus = [1j, 0.5 + 2j, -0.3 + 0.8j, 0.25 + 1.5j, 0.1 + 0.6j]
    out = [check_jacobi_g1(t, digits) for t in taus]
    B, P, D, T = _setup([0, 1, 3, INF], digits)
    return out + [check_jacobi_elliptic(B, P, D, i, T) for i in range(3)]


SUITES = {
    "thomae": suite_thomae,
    "rosenhain": suite_rosenhain,
    "frobenius": suite_frobenius,
    "igusa": suite_igusa,
    "jacobi": suite_jacobi,
}


def run_suite(name, seed=0, digits=None):
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        out += SUITES[n](digits=digits, rng=np.random.default_rng(seed))
    return out
