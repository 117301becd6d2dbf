"""Polynomial arithmetic, roots, discriminants, resultants and Moebius maps.

Polynomials are coefficient sequences, lowest degree first.  Coefficients may
be ints/Fractions (exact paths are taken) or floats/complex/mpmath numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import sympy

from ._numeric import use_mp, working_precision


class RootFindingError(ArithmeticError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(x) -> bool:
    return x is INF


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(seq) -> bool:
    return all(is_exact(c) for c in seq)


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial, lowest degree first, trailing zeros stripped."""

    coeffs: tuple

    def __init__(self, coeffs):
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __call__(self, x):
        return poly_eval(self.coeffs, x)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]


def _coeffs(p):
    c = list(p.coeffs if isinstance(p, Polynomial) else p)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_eval(p, x):
    acc = 0
    for c in reversed(_coeffs(p)):
        acc = acc * x + c
    return acc


def poly_mul(p, q):
    p, q = _coeffs(p), _coeffs(q)
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_add(p, q):
    p, q = _coeffs(p), _coeffs(q)
    n = max(len(p), len(q))
    return _coeffs([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)])


def poly_scale(p, s):
    return [c * s for c in _coeffs(p)]


def poly_derivative(p):
    p = _coeffs(p)
    return [k * p[k] for k in range(1, len(p))] or [0]


def poly_from_roots(roots, lead=1):
    """lead * prod (X - r); finite roots only."""
    out = [lead]
    for r in roots:
        out = poly_mul(out, [-r, 1])
    return out


# --- roots ------------------------------------------------------------------

def _newton(p, dp, x, tol, maxit=200):
    for _ in range(maxit):
        d = poly_eval(dp, x)
        if d == 0:
            break
        step = poly_eval(p, x) / d
        x = x - step
        if abs(step) <= tol * max(1, abs(x)):
            return x, True
    return x, False


def poly_roots(p, tol=None, digits=None):
    """All complex roots, sorted by (re, im).

    Companion-matrix eigenvalues seed a Newton polish on the original
    polynomial; if polishing fails or merges two seeds the mpmath
    Durand-Kerner solver is used instead.
    """
    c = _coeffs(p)
    n = len(c) - 1
    if n < 1:
        raise ValueError("polynomial of degree 0 has no roots")
    mp_mode = use_mp(digits) or any(isinstance(x, (mpmath.mpf, mpmath.mpc)) for x in c)
    if tol is None:
        tol = mpmath.mpf(10) ** (-(digits or 50)) if mp_mode else 1e-13
    with working_precision(digits if use_mp(digits) else (50 if mp_mode else None)):
        if mp_mode:
            work = [mpmath.mpc(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpc(x) for x in c]
        else:
            work = [complex(x) for x in c]
        seeds = np.roots([complex(x) for x in reversed(work)])
        dp = poly_derivative(work)
        out, ok = [], True
        for s in seeds:
            x, conv = _newton(work, dp, mpmath.mpc(s) if mp_mode else complex(s), tol)
            ok = ok and conv
            out.append(x)
        if len(out) != n:
            ok = False
        if ok:
            scale = min((abs(a - b) for i, a in enumerate(out) for b in out[i + 1:]), default=1)
            ok = scale > 1e3 * tol * max(1, max(abs(x) for x in out))
        if not ok:
            # roots with multiplicity or bad seeds: fall back to simultaneous iteration
            try:
                out = mpmath.polyroots(list(reversed(work)), maxsteps=400, extraprec=200)
            except mpmath.libmp.NoConvergence as exc:
                raise RootFindingError("root finding did not converge", partial=out) from exc
            if not mp_mode:
                out = [complex(x) for x in out]
            else:
                out = [mpmath.mpc(x) for x in out]
        return sorted(out, key=lambda z: (float(z.real), float(z.imag)))


def rational_roots(p):
    """Rational roots (with multiplicity) of a polynomial with rational coefficients."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
                       for c in reversed(_coeffs(p))], x)
    out = []
    for fac, mult in poly.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = sympy.Rational(-b, a)
            out += [Fraction(int(r.p), int(r.q))] * mult
    return sorted(out)


# --- resultants and discriminants -----------------------------------------------

def _bareiss_det(m):
    """Fraction-free determinant of an integer/Fraction matrix (list of lists)."""
    m = [list(row) for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                # exact division is guaranteed by Sylvester's identity
                m[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else Fraction(num) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix(p, q):
    p, q = _coeffs(p), _coeffs(q)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(p)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(q)) + [0] * (size - n - 1 - i))
    return rows


def resultant(p, q):
    """Res(p, q) via the Sylvester determinant (exact for rational input)."""
    p, q = _coeffs(p), _coeffs(q)
    if len(p) == 1 and len(q) == 1:
        raise ValueError("resultant of two constants")
    if len(p) == 1:
        return p[0] ** (len(q) - 1)
    if len(q) == 1:
        return q[0] ** (len(p) - 1)
    s = sylvester_matrix(p, q)
    if all_exact(p) and all_exact(q):
        den = math.lcm(*(Fraction(x).denominator for x in p + q))
        # clear denominators so Bareiss runs on integers
        ip, iq = [int(Fraction(x) * den) for x in p], [int(Fraction(x) * den) for x in q]
        d = _bareiss_det(sylvester_matrix(ip, iq))
        return Fraction(d) / Fraction(den) ** (len(p) + len(q) - 2)
    if any(isinstance(x, (mpmath.mpf, mpmath.mpc)) for x in p + q):
        return mpmath.det(mpmath.matrix(s))
    return complex(np.linalg.det(np.array(s, dtype=complex)))


def poly_discriminant(p):
    """Discriminant a_n^(2n-2) prod_{r<s} (rho_r - rho_s)^2, via Res(p, p')."""
    c = _coeffs(p)
    n = len(c) - 1
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = resultant(c, poly_derivative(c))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / c[-1]


def resultant_eliminate(p, q, digits=None):
    """Res_u(p, q) for p, q polynomials in u whose coefficients are polynomials in v.

    ``p[k]`` is the coefficient of u^k, itself a coefficient list in v.  The
    result is a coefficient list in v.  Rational input is handled exactly by
    sympy; other input by evaluation at roots of unity and interpolation.
    """
    p = [_coeffs(c) if not np.isscalar(c) else [c] for c in p]
    q = [_coeffs(c) if not np.isscalar(c) else [c] for c in q]
    while len(p) > 1 and all(x == 0 for x in p[-1]):
        p.pop()
    while len(q) > 1 and all(x == 0 for x in q[-1]):
        q.pop()
    if len(p) == 1 and len(q) == 1:
        raise ValueError("both inputs are constant in u")
    flat = [x for c in p + q for x in c]
    if all_exact(flat):
        u, v = sympy.symbols("u v")

        def to_sym(poly):
            return sum(sympy.Rational(x.numerator, x.denominator) * u ** i * v ** j
                       for i, c in enumerate(poly) for j, x in enumerate(c) if x != 0)
        res = sympy.Poly(sympy.resultant(to_sym(p), to_sym(q), u), v)
        return [Fraction(int(x.p), int(x.q)) for x in reversed(res.all_coeffs())]
    # degree bound in v of the Sylvester determinant
    dp, dq = len(p) - 1, len(q) - 1
    bound = dq * max(len(c) - 1 for c in p) + dp * max(len(c) - 1 for c in q)
    n = bound + 1
    with working_precision(digits):
        mp_mode = use_mp(digits)
        vals = []
        for k in range(n):
            w = mpmath.expjpi(mpmath.mpf(2 * k) / n) if mp_mode else np.exp(2j * np.pi * k / n)
            pu = [poly_eval(c, w) for c in p]
            qu = [poly_eval(c, w) for c in q]
            vals.append(resultant(pu, qu))
        if mp_mode:
            return [sum(vals[k] * mpmath.expjpi(-mpmath.mpf(2 * k * j) / n) for k in range(n)) / n
                    for j in range(n)]
        return list(np.fft.fft(np.array(vals, dtype=complex)) / n)


# --- Moebius maps -------------------------------------------------------------

@dataclass(frozen=True)
class MoebiusMap:
    """x -> (A x + B) / (C x + D)."""

    A: object
    B: object
    C: object
    D: object

    def __post_init__(self):
        if self.A * self.D - self.B * self.C == 0:
            raise ValueError("singular Moebius map")

    def __call__(self, x):
        return moebius_apply(self, x)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self o other."""
        a, b, c, d = self.A, self.B, self.C, self.D
        e, f, g, h = other.A, other.B, other.C, other.D
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _div(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) / b
    return a / b


def moebius_apply(m: MoebiusMap, x):
    if x is INF:
        return INF if m.C == 0 else _div(m.A, m.C)
    den = m.C * x + m.D
    if den == 0:
        return INF
    return _div(m.A * x + m.B, den)
