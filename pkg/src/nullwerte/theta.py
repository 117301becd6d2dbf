"""Riemann theta functions with half-integer characteristics.

The series evaluated is

    theta[m](z, Z) = sum_n exp(pi i (n+m')Z(n+m') + 2 pi i (n+m').(z+m''))

truncated to the ellipsoid ||T(n + m' + c)|| <= R, where T is the upper
Cholesky factor of Im Z and c recentres the sum for Im z != 0.  R is the
smallest radius (on a 0.1 grid) for which a ball-packing bound on the
discarded terms falls below ``eps``.

Binary64 sums run in :mod:`nullwerte._kernels`; the mpmath path is a plain
Python loop that bins terms by their fourth-root-of-unity phase so that each
lattice point costs one exponential for all 2^g lower characteristics.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import _kernels
from ._numeric import (as_complex, cholesky_upper, default_eps, det, to_array,
                       use_mp, working_precision)

MAX_LATTICE_POINTS = 4_000_000


class ThetaError(ValueError):
    pass


class TruncationError(ThetaError):
    """The radius needed for the requested accuracy exceeds the configured cap."""


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1


@dataclass(frozen=True, order=True)
class Characteristic:
    """A theta characteristic stored as bits: entry 1 means 1/2."""

    top: tuple
    bottom: tuple

    def __post_init__(self):
        if len(self.top) != len(self.bottom):
            raise ValueError("top and bottom rows differ in length")
        if any(b not in (0, 1) for b in self.top + self.bottom):
            raise ValueError("characteristic entries must be 0 or 1/2")

    @classmethod
    def from_halves(cls, m_prime, m_double):
        def bit(x):
            x = Fraction(x).limit_denominator(2) % 1
            if x not in (0, Fraction(1, 2)):
                raise ValueError(f"entry {x} is not 0 or 1/2")
            return int(2 * x)
        return cls(tuple(bit(x) for x in m_prime), tuple(bit(x) for x in m_double))

    @classmethod
    def zero(cls, g):
        return cls((0,) * g, (0,) * g)

    @property
    def g(self) -> int:
        return len(self.top)

    @property
    def m_prime(self):
        return tuple(Fraction(b, 2) for b in self.top)

    @property
    def m_double(self):
        return tuple(Fraction(b, 2) for b in self.bottom)

    @property
    def bits(self):
        return self.top + self.bottom

    def parity(self) -> Parity:
        return Parity(sum(a * b for a, b in zip(self.top, self.bottom)) % 2)

    @property
    def is_odd(self) -> bool:
        return self.parity() is Parity.ODD

    @property
    def sign(self) -> int:
        return -1 if self.is_odd else 1

    def __add__(self, other):
        return char_add(self, other)

    def direct_sum(self, other):
        return Characteristic(self.top + other.top, self.bottom + other.bottom)

    def __str__(self):
        return "[" + "".join(map(str, self.top)) + "|" + "".join(map(str, self.bottom)) + "]"


def parity(m: Characteristic) -> Parity:
    return m.parity()


def char_add(m1: Characteristic, m2: Characteristic) -> Characteristic:
    if m1.g != m2.g:
        raise ValueError("characteristics of different genus")
    return Characteristic(tuple(a ^ b for a, b in zip(m1.top, m2.top)),
                          tuple(a ^ b for a, b in zip(m1.bottom, m2.bottom)))


def char_sum(chars, g=None) -> Characteristic:
    chars = list(chars)
    out = Characteristic.zero(g if g is not None else chars[0].g)
    for m in chars:
        out = char_add(out, m)
    return out


def all_characteristics(g: int):
    """All 4^g characteristics, lexicographic on (top bits, bottom bits)."""
    out = []
    for bits in itertools.product((0, 1), repeat=2 * g):
        out.append(Characteristic(tuple(bits[:g]), tuple(bits[g:])))
    return out


def odd_characteristics(g: int):
    return [m for m in all_characteristics(g) if m.is_odd]


def even_characteristics(g: int):
    return [m for m in all_characteristics(g) if not m.is_odd]


def is_azygetic(m1, m2, m3) -> bool:
    return m1.sign * m2.sign * m3.sign * char_sum([m1, m2, m3]).sign == -1


def azygetic_sequence(chars) -> bool:
    return all(is_azygetic(a, b, c) for a, b, c in itertools.combinations(chars, 3))


@dataclass
class RiemannMatrix:
    """A point of the Siegel upper half space, validated on construction."""

    matrix: np.ndarray
    digits: int = None
    tol: float = 1e-8
    chol: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        with working_precision(self.digits):
            m = to_array(self.matrix, self.digits)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ThetaError("Riemann matrix must be square")
            c = as_complex(m)
            scale = max(1.0, float(np.abs(c).max()))
            if np.abs(c - c.T).max() > self.tol * scale:
                raise ThetaError("Riemann matrix is not symmetric")
            # symmetrize exactly
            self.matrix = (m + m.T) / 2
        try:
            self.chol = cholesky_upper(c.imag)
        except ValueError as exc:
            raise ThetaError(str(exc)) from exc

    @property
    def g(self) -> int:
        return self.matrix.shape[0]

    @property
    def mp(self) -> bool:
        return use_mp(self.digits)


def as_riemann_matrix(Z, digits=None) -> RiemannMatrix:
    if isinstance(Z, RiemannMatrix):
        if digits is None or digits == Z.digits:
            return Z
        return RiemannMatrix(Z.matrix, digits)
    return RiemannMatrix(np.asarray(Z), digits)


# --- truncation -------------------------------------------------------------

def _shortest_vector(T) -> float:
    r0 = float(np.min(np.linalg.norm(T, axis=0)))
    pts = _kernels.lattice_points(T, np.zeros(T.shape[0]), r0 * (1 + 1e-9))
    norms = np.linalg.norm(pts @ T.T, axis=1)
    return float(norms[norms > 1e-12].min())


def _gauss_moment(j: int, a):
    """Integral of s^j exp(-pi s^2) over [a, inf), a >= 0."""
    s = mpmath.mpf(j + 1) / 2
    return mpmath.gammainc(s, mpmath.pi * mpmath.mpf(a) ** 2) / (2 * mpmath.pi ** s)


def tail_bound(radius, g, rho, grad_scale=0.0, grad_shift=0.0):
    """Bound on the discarded terms of a (shifted) lattice Gaussian sum.

    With ``grad_scale`` nonzero the terms are weighted by
    2 pi (grad_scale * s + grad_shift), bounding a gradient component.
    """
    a = radius - rho
    if a < 0:
        return mpmath.inf
    if grad_scale and a < 1 / math.sqrt(2 * math.pi):
        return mpmath.inf
    half = mpmath.mpf(rho) / 2
    total = mpmath.mpf(0)
    for j in range(g):
        coef = math.comb(g - 1, j) * half ** (g - 1 - j)
        if grad_scale:
            total += coef * 2 * mpmath.pi * (grad_scale * _gauss_moment(j + 1, a) + grad_shift * _gauss_moment(j, a))
        else:
            total += coef * _gauss_moment(j, a)
    return g * (2 / mpmath.mpf(rho)) ** g * total


def choose_radius(T, eps, gradient=True, shift_norm=0.0) -> float:
    g = T.shape[0]
    rho = _shortest_vector(T)
    tinv = float(np.linalg.norm(np.linalg.inv(T), 2))
    radius = rho + 0.5
    while True:
        b = tail_bound(radius, g, rho)
        if gradient:
            b = max(b, tail_bound(radius, g, rho, tinv, shift_norm))
        if b < eps:
            break
        radius += 0.1
        est = math.pi ** (g / 2) / math.gamma(g / 2 + 1) * radius ** g / abs(np.prod(np.diag(T)))
        if est > MAX_LATTICE_POINTS:
            raise TruncationError(f"truncation radius {radius:.1f} exceeds the lattice point cap")
    return radius


# --- evaluation ---------------------------------------------------------------

def _points(T, top_bits, radius, extra_center=None):
    c = np.asarray(top_bits, dtype=float) / 2
    center = c if extra_center is None else c + extra_center
    n = _kernels.lattice_points(T, center, radius)
    return n + c


def _mp_nullwerte(v, Z, bottoms):
    g = Z.shape[0]
    zc = [[Z[k, l] * (1 if k == l else 2) for l in range(g)] for k in range(g)]
    nb = len(bottoms)
    bins = [[mpmath.mpc(0)] * 4 for _ in range(nb)]
    gbins = [[[mpmath.mpc(0)] * g for _ in range(4)] for _ in range(nb)]
    twice = np.rint(2 * v).astype(np.int64)
    phases = (twice @ np.asarray(bottoms, dtype=np.int64).T) % 4
    for a in range(len(v)):
        row = v[a]
        q = mpmath.mpc(0)
        for k in range(g):
            if row[k]:
                for l in range(k, g):
                    if row[l]:
                        q += zc[k][l] * (float(row[k]) * float(row[l]))
        e = mpmath.expjpi(q)
        ev = [e * float(row[k]) for k in range(g)]
        for b in range(nb):
            p = phases[a, b]
            bins[b][p] += e
            gb = gbins[b][p]
            for k in range(g):
                gb[k] += ev[k]
    units = [mpmath.mpc(1), mpmath.mpc(0, 1), mpmath.mpc(-1), mpmath.mpc(0, -1)]
    two_pi_i = 2j * mpmath.pi
    vals, grads = [], []
    for b in range(nb):
        vals.append(sum((units[p] * bins[b][p] for p in range(4)), mpmath.mpc(0)))
        grads.append([two_pi_i * sum((units[p] * gbins[b][p][k] for p in range(4)), mpmath.mpc(0))
                      for k in range(g)])
    return vals, grads


class ThetaTable:
    """All 4^g Thetanullwerte and z-gradients at 0 for one Riemann matrix.

    Every accessed characteristic is recorded in ``accessed`` so callers can
    count how many distinct values a formula touches.
    """

    def __init__(self, Z, digits=None, eps=None):
        self.Z = as_riemann_matrix(Z, digits)
        self.digits = self.Z.digits if digits is None else digits
        self.g = self.Z.g
        self.eps = default_eps(self.digits) if eps is None else eps
        self.values = {}
        self.gradients = {}
        self.accessed = set()
        self._compute()

    def _compute(self):
        g = self.g
        T = self.Z.chol
        radius = choose_radius(T, self.eps)
        self.radius = radius
        bottoms = list(itertools.product((0, 1), repeat=g))
        with working_precision(self.digits):
            for top in itertools.product((0, 1), repeat=g):
                v = _points(T, top, radius)
                if self.Z.mp:
                    vals, grads = _mp_nullwerte(v, self.Z.matrix, bottoms)
                else:
                    vals, grads = _kernels.nullwerte_sums(v, self.Z.matrix, np.array(bottoms))
                for b, bot in enumerate(bottoms):
                    m = Characteristic(tuple(top), tuple(bot))
                    self.values[m] = vals[b]
                    self.gradients[m] = np.array(grads[b], dtype=object if self.Z.mp else complex)
        self.even_max = max(abs(self.values[m]) for m in self.values if not m.is_odd)

    def reset_access(self):
        self.accessed = set()

    def value(self, m: Characteristic):
        self.accessed.add(m)
        return self.values[m]

    def gradient(self, m: Characteristic):
        if not m.is_odd:
            raise ThetaError(f"gradient at 0 requested for even characteristic {m}")
        self.accessed.add(m)
        return self.gradients[m]

    def jacobian_matrix(self, chars):
        if len(chars) != self.g:
            raise ThetaError(f"need exactly {self.g} characteristics")
        rows = [self.gradient(m) for m in chars]
        return np.array(rows, dtype=object if self.Z.mp else complex)

    def jacobian(self, chars):
        """Jacobian Nullwert [m_1, ..., m_g] = det of the gradient rows."""
        with working_precision(self.digits):
            return det(self.jacobian_matrix(chars))

    def vanishing_even(self, rel_tol=1e-6):
        return [m for m in even_characteristics(self.g)
                if abs(self.values[m]) < rel_tol * self.even_max]


def theta_value(m: Characteristic, z, Z, eps=None, digits=None):
    """theta[m](z, Z) at a general point z."""
    return _theta_at(m, z, Z, eps, digits)[0]


def theta_gradient(m: Characteristic, z, Z, eps=None, digits=None):
    return _theta_at(m, z, Z, eps, digits)[1]


def _theta_at(m, z, Z, eps, digits):
    Z = as_riemann_matrix(Z, digits)
    digits = Z.digits if digits is None else digits
    g = Z.g
    if m.g != g:
        raise ThetaError("characteristic genus does not match Z")
    eps = default_eps(digits) if eps is None else eps
    T = Z.chol
    zc = as_complex(np.atleast_1d(np.asarray(z, dtype=object if use_mp(digits) else complex)))
    y = as_complex(Z.matrix).imag
    shift = np.linalg.solve(y, zc.imag)
    growth = math.exp(math.pi * float(zc.imag @ shift))
    radius = choose_radius(T, eps / growth, shift_norm=float(np.linalg.norm(shift)))
    v = _points(T, m.top, radius, extra_center=shift)
    mdd = np.asarray(m.bottom, dtype=float) / 2
    with working_precision(digits):
        if Z.mp:
            w = [mpmath.mpc(zk) + float(mdd[k]) for k, zk in enumerate(np.atleast_1d(z))]
            total = mpmath.mpc(0)
            grad = [mpmath.mpc(0)] * g
            for row in v:
                q = sum((Z.matrix[k, l] * (float(row[k]) * float(row[l])) for k in range(g) for l in range(g)),
                        mpmath.mpc(0))
                q += 2 * sum((w[k] * float(row[k]) for k in range(g)), mpmath.mpc(0))
                t = mpmath.expjpi(q)
                total += t
                for k in range(g):
                    grad[k] += 2j * mpmath.pi * float(row[k]) * t
            return total, np.array(grad, dtype=object)
        total, grad = _kernels.theta_sum(v, Z.matrix, zc + mdd)
        return complex(total), grad


def theta_nullwert(m: Characteristic, Z, eps=None, digits=None):
    return ThetaTable(Z, digits, eps).value(m)


def theta_gradient0(m: Characteristic, Z, eps=None, digits=None):
    """z-gradient of theta[m] at z = 0 for odd m."""
    if not m.is_odd:
        raise ThetaError(f"characteristic {m} is even")
    return ThetaTable(Z, digits, eps).gradient(m)


def jacobian_nullwerte(chars, Z, eps=None, digits=None):
    """Jacobian Nullwert of g odd characteristics."""
    chars = list(chars)
    for m in chars:
        if not m.is_odd:
            raise ThetaError(f"characteristic {m} is even")
    return ThetaTable(Z, digits, eps).jacobian(chars)
