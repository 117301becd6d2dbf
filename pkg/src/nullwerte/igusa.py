"""Igusa-Clebsch invariants of genus 2 symmetric models, forward and inverse.

A symmetric model is Y^2 = X (X^4 + G1 X^3 + G2 X^2 + G3 X + 1).  The inverse
map looks for r and (G1, G2, G3) with I_{2k}(G) = r^k * target_{2k}; it goes
through S1 = G1 + G3 and S2 = G1 G3, eliminates S1^2 and S2, and then G2.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from . import _eq_r
from .algebra import INF, all_exact, is_exact, poly_eval, poly_roots, resultant_eliminate
from .symcurve import BranchSet
from ._numeric import working_precision

WEIGHTS = (1, 2, 3, 5)  # I_{2k} scales like r^k
NUMERIC_DIGITS = 30


class IgusaError(ValueError):
    pass


@dataclass(frozen=True)
class IgusaClebschTuple:
    I2: object
    I4: object
    I6: object
    I10: object

    def as_list(self):
        return [self.I2, self.I4, self.I6, self.I10]

    @property
    def exact(self) -> bool:
        return all_exact(self.as_list())

    def rescale(self, lam) -> "IgusaClebschTuple":
        """I_{2k} -> lam^k I_{2k}."""
        return IgusaClebschTuple(*(x * lam ** w for x, w in zip(self.as_list(), WEIGHTS)))

    def absolute(self):
        """I2^5 / I10, I4^5 / I10^2, I6^5 / I10^3."""
        if self.I10 == 0:
            raise IgusaError("I10 = 0")
        d = Fraction(self.I10) if is_exact(self.I10) else self.I10
        return [self.I2 ** 5 / d, self.I4 ** 5 / d ** 2, self.I6 ** 5 / d ** 3]

    def weighted_equal(self, other: "IgusaClebschTuple", tol=None) -> bool:
        """Equality in weighted projective space: I_a^{w_b} J_b^{w_a} = J_a^{w_b} I_b^{w_a} for all a, b."""
        a, b = self.as_list(), other.as_list()
        for i, j in itertools.combinations(range(4), 2):
            lhs = a[i] ** WEIGHTS[j] * b[j] ** WEIGHTS[i]
            rhs = b[i] ** WEIGHTS[j] * a[j] ** WEIGHTS[i]
            if tol is None:
                if lhs != rhs:
                    return False
            elif abs(lhs - rhs) > tol * max(abs(lhs), abs(rhs), 1e-300):
                return False
        return True


@dataclass(frozen=True)
class SymmetricCoefficients2:
    """Y^2 = X (X^4 + G1 X^3 + G2 X^2 + G3 X + sign)."""

    G1: object
    G2: object
    G3: object
    sign: int = 1

    def as_list(self):
        return [self.G1, self.G2, self.G3]

    def swapped(self) -> "SymmetricCoefficients2":
        return SymmetricCoefficients2(self.G3, self.G2, self.G1, self.sign)

    def quintic(self):
        """Coefficients of X^5 + G1 X^4 + ... + sign X, lowest degree first."""
        return [0, self.sign, self.G3, self.G2, self.G1, 1]


def _forward(G1, G2, G3):
    I2 = 2 * (20 + 3 * G2**2 - 8 * G1 * G3)
    I4 = -4 * (20 + 3 * G1**2 * G2 - 9 * G2**2 - G1 * G3 - G1**2 * G3**2 + 3 * G2 * G3**2)
    I6 = -2 * (160 + 18 * G1**4 - 13 * G1**2 * G2 - 88 * G2**2 + 12 * G1**2 * G2**3 - 36 * G2**4
               - 32 * G1 * G3 - 38 * G1**3 * G2 * G3 + 119 * G1 * G2**2 * G3 - 14 * G1**2 * G3**2
               - 13 * G2 * G3**2 - 4 * G1**2 * G2**2 * G3**2 + 12 * G2**3 * G3**2 + 12 * G1**3 * G3**3
               - 38 * G1 * G2 * G3**3 + 18 * G3**4)
    I10 = (-27 * G1**4 + 144 * G1**2 * G2 - 128 * G2**2 - 4 * G1**2 * G2**3 + 16 * G2**4
           - 192 * G1 * G3 + 18 * G1**3 * G2 * G3 - 80 * G1 * G2**2 * G3 - 6 * G1**2 * G3**2
           + 144 * G2 * G3**2 + G1**2 * G2**2 * G3**2 - 4 * G2**3 * G3**2 - 4 * G1**3 * G3**3
           + 18 * G1 * G2 * G3**3 - 27 * G3**4 + 256)
    return I2, I4, I6, I10


def igusa_from_symmetric(c: SymmetricCoefficients2) -> IgusaClebschTuple:
    """Exact for rational G.  A model with sign -1 is first twisted by X -> zeta X, zeta^4 = -1."""
    G = c.as_list()
    if c.sign == -1:
        z = mpmath.expjpi(mpmath.mpf(1) / 4) if any(isinstance(x, (mpmath.mpf, mpmath.mpc)) for x in G) \
            else complex(mpmath.expjpi(0.25))
        G = [g * z ** -(k + 1) for k, g in enumerate(G)]
    elif c.sign != 1:
        raise ValueError("sign must be +-1")
    G = [Fraction(x) if is_exact(x) else x for x in G]
    return IgusaClebschTuple(*_forward(*G))


# --- independent oracle ---------------------------------------------------------

def _pairings(idx):
    if not idx:
        yield []
        return
    a = idx[0]
    for k in range(1, len(idx)):
        rest = idx[1:k] + idx[k + 1:]
        for p in _pairings(rest):
            yield [(a, idx[k])] + p


def igusa_from_roots_oracle(B: BranchSet) -> IgusaClebschTuple:
    """Classical symmetrized root-difference invariants of prod (X - a_i), infinity allowed.

    I2 sums (12)^2(34)^2(56)^2 over the 15 pairings, I4 sums
    (12)^2(23)^2(31)^2(45)^2(56)^2(64)^2 over the 10 splittings into triples,
    I6 adds (14)^2(25)^2(36)^2 over the 60 matched splittings, I10 is the
    product of all squared differences.  A difference involving infinity is 1.
    """
    if B.genus != 2:
        raise IgusaError("genus 2 branch set required")
    pts = B.points

    def d2(i, j):
        if pts[i] is INF or pts[j] is INF:
            return 1
        return (pts[i] - pts[j]) ** 2

    idx = list(range(6))
    I2 = sum(d2(*p[0]) * d2(*p[1]) * d2(*p[2]) for p in _pairings(idx))
    I4, I6 = 0, 0
    for T1 in itertools.combinations(idx, 3):
        if 0 not in T1:
            continue
        T2 = [k for k in idx if k not in T1]
        base = 1
        for T in (T1, T2):
            for i, j in itertools.combinations(T, 2):
                base = base * d2(i, j)
        I4 += base
        for perm in itertools.permutations(T2):
            I6 += base * d2(T1[0], perm[0]) * d2(T1[1], perm[1]) * d2(T1[2], perm[2])
    I10 = 1
    for i, j in itertools.combinations(idx, 2):
        I10 = I10 * d2(i, j)
    return IgusaClebschTuple(I2, I4, I6, I10)


# --- elimination --------------------------------------------------------------------

_SYM = sympy.symbols("r I2 I4 I6 I10 G2")


@functools.lru_cache(maxsize=None)
def _sym_eq_r():
    r, I2, I4, I6, I10, _ = _SYM
    return sympy.expand(sympy.sympify(_eq_r.EQ_R, locals=dict(r=r, I2=I2, I4=I4, I6=I6, I10=I10)))


@functools.lru_cache(maxsize=None)
def _sym_pair():
    r, I2, I4, I6, I10, G2 = _SYM
    loc = dict(r=r, I2=I2, I4=I4, I6=I6, I10=I10, G2=G2)
    return tuple(sympy.expand(sympy.sympify(s, locals=loc)) for s in _eq_r.G2R_PAIR)


def _to_fraction(x):
    x = sympy.nsimplify(x) if not isinstance(x, sympy.Rational) else x
    return Fraction(int(x.p), int(x.q))


def _sym_to_mp(c):
    re, im = c.as_real_imag()
    return mpmath.mpc(mpmath.mpf(str(sympy.Float(re, 60))), mpmath.mpf(str(sympy.Float(im, 60))))


def _subs_invariants(expr, t: IgusaClebschTuple):
    r, I2, I4, I6, I10, _ = _SYM
    vals = t.as_list()
    if t.exact:
        vals = [sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in vals]
    else:
        vals = [sympy.Float(str(mpmath.re(v)), 60) + sympy.I * sympy.Float(str(mpmath.im(v)), 60) for v in vals]
    return sympy.expand(expr.subs(dict(zip((I2, I4, I6, I10), vals))))


def eq_r_polynomial(t: IgusaClebschTuple):
    """The transcribed degree-15 polynomial in r at t, as a coefficient list (lowest first)."""
    r = _SYM[0]
    p = sympy.Poly(_subs_invariants(_sym_eq_r(), t), r)
    coeffs = list(reversed(p.all_coeffs()))
    return [_to_fraction(c) for c in coeffs] if t.exact else [_sym_to_mp(c) for c in coeffs]


def _pair_in_H(t: IgusaClebschTuple):
    """The (G2, r) pair at t as nested coefficient lists: p[k] = coefficients in r of H^k, H = G2^2."""
    r, *_, G2 = _SYM
    out = []
    for e in _sym_pair():
        P = sympy.Poly(_subs_invariants(e, t), G2, r)
        nested = [[0] * 6 for _ in range(5)]
        for (a, b), c in P.terms():
            if a % 2:
                raise IgusaError("odd power of G2 in the elimination pair")
            nested[a // 2][b] = _to_fraction(c) if t.exact else _sym_to_mp(c)
        out.append(nested)
    return out


def g2_zero_quadratic(t: IgusaClebschTuple):
    """(I2^2 - 64 I4) r^2 - 96 I2 r - 2880: the values of r with a G2 = 0 solution."""
    return [-2880, -96 * t.I2, t.I2 ** 2 - 64 * t.I4]


def _poly_divmod(num, den):
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    return q, num[:len(den) - 1]


def runtime_r_polynomial(t: IgusaClebschTuple, digits=None):
    """Res_H of the pair, divided by its extraneous factor r^5 (g2_zero_quadratic)^2.

    Returns (cleaned coefficient list, extraneous factor, remainder size relative to the resultant).
    """
    p, q = _pair_in_H(t)
    with working_precision(digits):
        full = resultant_eliminate(p, q, digits)
        quad = g2_zero_quadratic(t)
        extra = [0] * 5 + [1]
        for _ in range(2):
            extra = [sum(extra[i] * quad[k - i] for i in range(len(extra)) if 0 <= k - i < len(quad))
                     for k in range(len(extra) + 2)]
        while len(full) > 1 and full[-1] == 0:
            full.pop()
        if not t.exact:
            # numeric interpolation leaves tiny high coefficients
            top = max(abs(c) for c in full)
            while len(full) > len(extra) + 15 and abs(full[-1]) < 1e-20 * top:
                full.pop()
        cleaned, rem = _poly_divmod(full, extra)
        if t.exact:
            return cleaned, extra, max((abs(x) for x in rem), default=0)
        size = max((abs(x) for x in rem), default=0) / max(abs(x) for x in full)
        return cleaned, extra, size


def eq_r_crosscheck(t: IgusaClebschTuple, tol=1e-8, digits=NUMERIC_DIGITS):
    """Does the runtime elimination agree with the transcription up to a constant factor?

    Returns (agrees, constant) with runtime = constant * transcription.
    """
    if not t.exact:
        t = IgusaClebschTuple(*(_mpc(x) for x in t.as_list()))
    with working_precision(digits):
        return _crosscheck(t, tol, digits)


def _crosscheck(t, tol, digits):
    cleaned, _, rem = runtime_r_polynomial(t, None if t.exact else digits)
    ref = eq_r_polynomial(t)
    if len(cleaned) != len(ref):
        return False, None
    k = max(range(len(ref)), key=lambda i: abs(ref[i]))
    const = cleaned[k] / ref[k]
    if t.exact:
        return rem == 0 and all(a == const * b for a, b in zip(cleaned, ref)), const
    scale = max(abs(x) for x in cleaned)
    ok = all(abs(a - const * b) <= tol * scale for a, b in zip(cleaned, ref))
    return ok and rem <= tol, const


def eq_r_weight_check():
    """For each n, is the coefficient of r^n weighted-homogeneous of degree 2n + 10?"""
    r, I2, I4, I6, I10, _ = _SYM
    P = sympy.Poly(_sym_eq_r(), r)
    out = {}
    for (n,), coeff in zip(P.monoms(), P.coeffs()):
        Q = sympy.Poly(coeff, I2, I4, I6, I10)
        out[n] = all(2 * a + 4 * b + 6 * c + 10 * d == 2 * n + 10 for a, b, c, d in Q.monoms())
    return out


# --- inverse pipeline --------------------------------------------------------------

def _sqrt(x, digits):
    """Exact square root of a square Fraction, else a numeric one."""
    if is_exact(x):
        x = Fraction(x)
        if x >= 0:
            n, d = sympy.integer_nthroot(x.numerator, 2), sympy.integer_nthroot(x.denominator, 2)
            if n[1] and d[1]:
                return Fraction(int(n[0]), int(d[0]))
        x = mpmath.mpf(x.numerator) / x.denominator
    return mpmath.sqrt(mpmath.mpc(x))


def _s12(G2, r, t):
    """S1^2 as a function of G2 != 0 and r."""
    num = (36 * G2**4 + 576 * G2**3 - 12 * (r * t.I2 - 240) * G2**2 - 96 * (r * t.I2 - 40) * G2
           + r**2 * t.I2**2 - 96 * r * t.I2 - 64 * r**2 * t.I4 - 2880)
    return num / (768 * G2)


def _s2(G2, r, t):
    return (6 * G2**2 + 40 - r * t.I2) / 16


def _numeric_roots(coeffs, digits):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        return []
    work = [mpmath.mpc(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpc(c) for c in coeffs]
    return poly_roots(work, digits=digits)


def _roots(coeffs, digits):
    """Exact rational roots where available, numeric roots for the remaining factors."""
    if all_exact(coeffs):
        x = sympy.Symbol("x")
        P = sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                        for c in reversed(coeffs)], x)
        out = []
        for fac, _ in P.factor_list()[1]:
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                out.append(_to_fraction(-b / a))
            else:
                fc = [_to_fraction(c) for c in reversed(fac.all_coeffs())]
                out += _numeric_roots(fc, digits)
        return out
    return _numeric_roots(coeffs, digits)


def _near_zero(x, scale, digits):
    if is_exact(x):
        return x == 0
    return abs(x) <= mpmath.mpf(10) ** (-(digits // 2)) * max(scale, 1)


def _common_H_roots(p, q, r0, digits):
    """Roots H of both specialized pair polynomials at r = r0."""
    pa = [poly_eval(c, r0) for c in p]
    qa = [poly_eval(c, r0) for c in q]
    if all_exact(pa + qa):
        x = sympy.Symbol("x")

        def sp(cs):
            return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in map(Fraction, reversed(cs))], x)
        g = sympy.gcd(sp(pa), sp(qa))
        if g.degree() < 1:
            return []
        return _roots([_to_fraction(c) for c in reversed(g.all_coeffs())], digits)
    scale = max(abs(c) for c in qa)
    out = []
    for h in _numeric_roots(pa, digits):
        val = poly_eval(qa, h)
        size = sum(abs(c) * abs(h) ** k for k, c in enumerate(qa))
        if abs(val) <= mpmath.mpf(10) ** (-(digits // 2)) * max(size, scale):
            out.append(h)
    return out


def _verify(G, r0, t, digits):
    img = _forward(*G)
    for a, w, b in zip(img, WEIGHTS, t.as_list()):
        rhs = r0 ** w * b
        if all_exact([a, rhs]):
            if a != rhs:
                return False
        elif abs(_mpc(a) - _mpc(rhs)) > mpmath.mpf(10) ** (-(digits // 2)) * max(abs(_mpc(a)), abs(_mpc(rhs)), 1):
            return False
    return True


def _mpc(x):
    if is_exact(x):
        x = Fraction(x)
        return mpmath.mpc(x.numerator) / x.denominator
    return mpmath.mpc(x)


def _polish(G, r0, t, digits):
    """Newton refinement of (G1, G2, G3, r) on the forward equations."""
    if all_exact(list(G) + [r0]):
        return G, r0
    vals = [_mpc(v) for v in t.as_list()]

    def f(g1, g2, g3, r):
        img = _forward(g1, g2, g3)
        return [a - r ** w * b for a, w, b in zip(img, WEIGHTS, vals)]
    try:
        sol = mpmath.findroot(f, [_mpc(x) for x in list(G) + [r0]], tol=mpmath.mpf(10) ** (-digits))
        return [sol[0], sol[1], sol[2]], sol[3]
    except (ZeroDivisionError, ValueError):
        return G, r0


@dataclass
class InverseResult:
    candidates: list
    r_values: list
    eq_r_agrees: bool


def symmetric_from_igusa(t: IgusaClebschTuple, digits=None, crosscheck=True):
    """All symmetric models whose invariants are weighted-proportional to t.

    Rational t is handled exactly wherever the intermediate values stay
    rational; other branches run numerically at ``digits`` (at least 30).
    Every returned candidate passed forward verification.
    """
    if t.I10 == 0:
        raise IgusaError("I10 = 0: singular curve")
    work_digits = max(digits or 0, NUMERIC_DIGITS)
    with working_precision(work_digits):
        if not t.exact:
            t = IgusaClebschTuple(*(mpmath.mpc(x) for x in t.as_list()))
        cleaned, _, _ = runtime_r_polynomial(t, None if t.exact else work_digits)
        agrees = eq_r_crosscheck(t, digits=work_digits)[0] if crosscheck else None
        p, q = _pair_in_H(t)
        found, r_values = [], []
        branches = [(r0, "G2") for r0 in _roots(cleaned, work_digits)]
        branches += [(r0, "zero") for r0 in _roots(g2_zero_quadratic(t), work_digits)]
        for r0, kind in branches:
            if _near_zero(r0, 1, work_digits):
                continue
            r_values.append(r0)
            if kind == "G2":
                G2s = []
                for h in _common_H_roots(p, q, r0, work_digits):
                    if _near_zero(h, 1, work_digits):
                        continue
                    s = _sqrt(h, work_digits)
                    G2s += [s, -s]
                pairs = [(G2, _s12(G2, r0, t)) for G2 in G2s]
            else:
                S2 = _s2(0, r0, t)
                # r^3 I6 at G2 = 0 is quadratic in u = S1^2
                quad = [2 * (-160 + 32 * S2 - 22 * S2**2 - 12 * S2**3) - r0**3 * t.I6, 144 * S2, -36]
                pairs = [(Fraction(0) if is_exact(r0) else mpmath.mpc(0), u) for u in _roots(quad, work_digits)]
            for G2, s1sq in pairs:
                S2 = _s2(G2, r0, t)
                s1 = _sqrt(s1sq, work_digits)
                for S1 in {s1, -s1} if is_exact(s1) else (s1, -s1):
                    disc = _sqrt(S1 * S1 - 4 * S2, work_digits)
                    G = [(S1 + disc) / 2, G2, (S1 - disc) / 2]
                    if not all_exact(G + [r0]):
                        G = [_mpc(x) for x in G]
                    G, rr = _polish(G, r0, t, work_digits)
                    if _verify(G, rr, t, work_digits):
                        found.append(_normalize(G, digits))
        return InverseResult(_dedup(found), r_values, agrees)


def _normalize(G, digits):
    if all_exact(G):
        a, b = sorted([G[0], G[2]])
        return SymmetricCoefficients2(a, G[1], b)
    conv = (lambda x: mpmath.mpc(x)) if digits else (lambda x: complex(x))
    G = [conv(x) for x in G]
    a, b = sorted([G[0], G[2]], key=lambda z: (round(float(z.real), 9), round(float(z.imag), 9)))
    return SymmetricCoefficients2(a, G[1], b)


def _dedup(cands):
    out = []
    for c in cands:
        if not any(_same(c, d) for d in out):
            out.append(c)
    return out


def _same(a, b, tol=1e-12):
    xs, ys = a.as_list(), b.as_list()
    if all_exact(xs + ys):
        return xs == ys
    return all(abs(x - y) <= tol * max(1, abs(x)) for x, y in zip(xs, ys))


def matches(c: SymmetricCoefficients2, target: SymmetricCoefficients2, tol=None) -> bool:
    """Equal up to the G1 <-> G3 swap (exactly when tol is None)."""
    for cand in (c, c.swapped()):
        xs, ys = cand.as_list(), target.as_list()
        if tol is None and xs == ys:
            return True
        if tol is not None and all(abs(x - y) <= tol * max(1, abs(y)) for x, y in zip(xs, ys)):
            return True
    return False
