"""Symmetric ratios, symmetric roots and symmetric models of hyperelliptic curves.

Branch points are addressed by their index in ``BranchSet.points``.  A
branch point at infinity is the ``INF`` sentinel; every difference involving
it is replaced by 1, so formulas never see a large float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
import sympy

from .algebra import INF, all_exact, is_exact, poly_discriminant, poly_from_roots
from ._numeric import root, use_mp, working_precision


class BranchSetError(ValueError):
    pass


@dataclass
class BranchSet:
    """The 2g+2 branch points of y^2 = prod (x - a_i); at most one is INF."""

    points: list

    def __post_init__(self):
        pts = list(self.points)
        if len(pts) < 4 or len(pts) % 2:
            raise BranchSetError("a hyperelliptic branch set has 2g+2 >= 4 points")
        if sum(p is INF for p in pts) > 1:
            raise BranchSetError("at most one branch point may be at infinity")
        fin = [p for p in pts if p is not INF]
        for a in range(len(fin)):
            for b in range(a + 1, len(fin)):
                if fin[a] == fin[b]:
                    raise BranchSetError("branch points must be distinct")
        self.points = [Fraction(p) if isinstance(p, int) and not isinstance(p, bool) else p for p in pts]

    @property
    def genus(self) -> int:
        return len(self.points) // 2 - 1

    @property
    def finite(self):
        return [p for p in self.points if p is not INF]

    @property
    def has_infinity(self) -> bool:
        return any(p is INF for p in self.points)

    @property
    def exact(self) -> bool:
        return all_exact(self.finite)

    def polynomial(self):
        """Monic f with the finite branch points as roots (lowest degree first)."""
        return poly_from_roots(self.finite)

    @classmethod
    def from_polynomial(cls, coeffs, digits=None):
        """Branch set of y^2 = f; odd-degree f gets a point at infinity.

        f is made monic first (a constant factor does not change the curve up to
        a twist).  Rational roots are kept exact when f factors over Q.
        """
        from .algebra import poly_roots, rational_roots
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if all_exact(c):
            rr = rational_roots(c)
            if len(rr) == len(c) - 1:
                roots = rr
            else:
                roots = poly_roots(c, digits=digits)
        else:
            roots = poly_roots(c, digits=digits)
        if len(roots) % 2:
            roots = list(roots) + [INF]
        return cls(list(roots))


def _diff(a, b):
    """a - b with differences involving INF replaced by 1."""
    if a is INF or b is INF:
        return 1
    return a - b


def _ratio(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) / b
    return a / b


def _prod(seq):
    out = 1
    for x in seq:
        out = out * x
    return out


def fprime(B: BranchSet, i: int):
    """f'(a_i) = prod_{r != i} (a_i - a_r) with the INF convention."""
    return _prod(_diff(B.points[i], B.points[r]) for r in range(len(B.points)) if r != i)


def _check(B, idx, t=None):
    n = len(B.points)
    if len(set(idx)) != len(idx):
        raise ValueError("indices must be pairwise distinct")
    if any(not 0 <= k < n for k in idx):
        raise ValueError("branch point index out of range")
    if t is not None and not 1 <= t <= 4 * B.genus:
        raise ValueError(f"root of unity index must be in 1..{4 * B.genus}")


def _num(x, digits):
    if isinstance(x, Fraction):
        x = mpmath.mpf(x.numerator) / x.denominator if use_mp(digits) else x.numerator / x.denominator
    return mpmath.mpc(x) if use_mp(digits) else complex(x)


def zeta(t: int, g: int, digits=None):
    """e^{2 pi i t / 4g}."""
    if use_mp(digits):
        return mpmath.expjpi(mpmath.mpf(2 * t) / (4 * g))
    return complex(np.exp(2j * np.pi * t / (4 * g)))


def symmetric_ratio(B: BranchSet, i: int, j: int, t: int = None, digits=None):
    """p_{ijt} = zeta_t (-f'(a_j)/f'(a_i))^{1/2g}, principal root."""
    g = B.genus
    t = 4 * g if t is None else t
    _check(B, (i, j), t)
    with working_precision(digits):
        q = _ratio(-fprime(B, j), fprime(B, i))
        return zeta(t, g, digits) * root(_num(q, digits), 2 * g, digits)


def symmetric_roots(B: BranchSet, i: int, j: int, t: int = None, digits=None):
    """[l_{ijtk} for k not in {i, j}] in input order."""
    p = symmetric_ratio(B, i, j, t, digits)
    with working_precision(digits):
        out = []
        for k in range(len(B.points)):
            if k in (i, j):
                continue
            ratio = _ratio(_diff(B.points[i], B.points[k]), _diff(B.points[j], B.points[k]))
            out.append(p * _num(ratio, digits))
        return out


@dataclass
class SymmetricModel:
    """Y^2 = X^{2g+1} + G_1 X^{2g} + ... + G_{2g-1} X^2 + s X with s = +-1."""

    g: int
    roots: list
    coeffs: list = field(default=None)

    def __post_init__(self):
        if len(self.roots) != 2 * self.g:
            raise ValueError("a symmetric model has 2g nonzero roots")
        if self.coeffs is None:
            self.coeffs = poly_from_roots([0] + list(self.roots))

    @property
    def G(self):
        """(G_1, ..., G_{2g-1})."""
        return [self.coeffs[2 * self.g + 1 - k] for k in range(1, 2 * self.g)]

    @property
    def linear(self):
        return self.coeffs[1]

    @property
    def linear_sign(self) -> int:
        return 1 if float(mpmath.re(self.linear)) > 0 else -1

    def check(self, tol=1e-8):
        prod = _prod(self.roots)
        return abs(abs(prod) - 1) < tol and abs(self.coeffs[0]) < tol and abs(abs(self.linear) - 1) < tol

    def reversed(self):
        """The model with roots inverted: coefficient list (G_{2g-1}, ..., G_1) up to the sign."""
        return SymmetricModel(self.g, [1 / r for r in self.roots])

    def branch_set(self) -> BranchSet:
        return BranchSet([0] + list(self.roots) + [INF])


def symmetric_model(B: BranchSet, i: int, j: int, t: int = None, digits=None) -> SymmetricModel:
    roots = symmetric_roots(B, i, j, t, digits)
    with working_precision(digits):
        return SymmetricModel(B.genus, roots)


def all_symmetric_models(B: BranchSet, digits=None):
    """Every (i, j, t): (2g+2)(2g+1)/2 unordered pairs times 4g roots of unity."""
    g = B.genus
    n = len(B.points)
    return [((i, j, t), symmetric_model(B, i, j, t, digits))
            for i in range(n) for j in range(i + 1, n) for t in range(1, 4 * g + 1)]


def discriminant_of_roots(roots):
    return _prod((a - b) ** 2 for k, a in enumerate(roots) for b in roots[k + 1:])


def symmetric_discriminant(B: BranchSet, i: int, j: int, t: int = None, digits=None):
    """The literal product prod_{r<s} (l_r - l_s)^2 over the symmetric roots."""
    roots = symmetric_roots(B, i, j, t, digits)
    with working_precision(digits):
        return discriminant_of_roots(roots)


def finite_discriminant(B: BranchSet):
    """Delta(f) = prod_{r<s} (a_r - a_s)^2 over the finite branch points."""
    fin = B.finite
    if B.exact:
        return poly_discriminant([Fraction(c) for c in poly_from_roots(fin)])
    return discriminant_of_roots(fin)


def symmetric_discriminant_formula(B: BranchSet, i: int, j: int, digits=None):
    """(a_i - a_j)^{2g(2g+1)} Delta(f) / (f'(a_i) f'(a_j))^{2g+1}; exact for rational B.

    Agrees with :func:`symmetric_discriminant` up to sign.
    """
    _check(B, (i, j))
    g = B.genus
    with working_precision(digits):
        d = _diff(B.points[i], B.points[j])
        num = Fraction(d) ** (2 * g * (2 * g + 1)) if is_exact(d) else d ** (2 * g * (2 * g + 1))
        return num * finite_discriminant(B) / (fprime(B, i) * fprime(B, j)) ** (2 * g + 1)


def curve_discriminant(coeffs):
    """2^{4g} disc(f) for y^2 = f with deg f in {2g+1, 2g+2}."""
    g = (len(coeffs) - 2) // 2
    return 2 ** (4 * g) * poly_discriminant(coeffs)


def mu_invariant(B: BranchSet, i: int, j: int, r: int, s: int, digits=None):
    """(a_i - a_r)(a_j - a_s) / ((a_i - a_s)(a_j - a_r))."""
    _check(B, (i, j, r, s))
    a = B.points
    num = _diff(a[i], a[r]) * _diff(a[j], a[s])
    den = _diff(a[i], a[s]) * _diff(a[j], a[r])
    if is_exact(num) and is_exact(den):
        return Fraction(num) / den
    with working_precision(digits):
        return _num(num, digits) / _num(den, digits)


@dataclass
class MuFamily:
    """mu_{ijrs} for fixed (i, j), keyed by (r, s); ``labels`` lists the r's in order."""

    i: object
    j: object
    labels: list
    values: dict

    def __getitem__(self, rs):
        return self.values[rs]


def mu_family(B: BranchSet, i: int, j: int, digits=None) -> MuFamily:
    labels = [k for k in range(len(B.points)) if k not in (i, j)]
    vals = {(r, s): mu_invariant(B, i, j, r, s, digits) for r in labels for s in labels if r != s}
    return MuFamily(i, j, labels, vals)


class MuCoherenceError(ValueError):
    pass


def symmetric_model_from_mu(fam: MuFamily, g: int, digits=None, tol=1e-8) -> SymmetricModel:
    """Symmetric model from a mu-family.

    The pivot root is the principal 4g-th root of prod_r mu_{ij k0 r}^2; the
    others follow from l_r / l_s = mu_{ijrs}.
    """
    labels = fam.labels
    if len(labels) != 2 * g:
        raise ValueError("mu-family size does not match the genus")
    with working_precision(digits):
        k0 = labels[0]
        prod = _prod(_num(fam[(k0, r)], digits) ** 2 for r in labels[1:])
        l0 = root(prod, 4 * g, digits)
        roots = [l0] + [l0 / _num(fam[(k0, s)], digits) for s in labels[1:]]
        for a, r in enumerate(labels):
            for b, s in enumerate(labels):
                if r != s:
                    want = _num(fam[(r, s)], digits)
                    if abs(roots[a] / roots[b] - want) > tol * max(1, abs(want)):
                        raise MuCoherenceError(f"mu-family is incoherent at {(r, s)}")
        return SymmetricModel(g, roots)


def mu_multiset(points, digits=None):
    """Cross-ratios over all ordered 4-tuples of distinct branch points."""
    B = points if isinstance(points, BranchSet) else BranchSet(list(points))
    n = len(B.points)
    out = []
    for i in range(n):
        for j in range(n):
            for r in range(n):
                for s in range(n):
                    if len({i, j, r, s}) == 4:
                        out.append(complex(mu_invariant(B, i, j, r, s, digits)))
    return out


def match_multisets(a, b, tol):
    """Greedy nearest matching of two equal-size complex multisets; returns the worst relative error."""
    a = np.asarray(a, dtype=complex)
    b = list(np.asarray(b, dtype=complex))
    if len(a) != len(b):
        return math.inf
    worst = 0.0
    for x in sorted(a, key=lambda z: (z.real, z.imag)):
        d = [abs(x - y) / max(1.0, abs(x)) for y in b]
        k = int(np.argmin(d))
        worst = max(worst, d[k])
        b.pop(k)
    return worst


def _factor(q: Fraction):
    out = {}
    for p, e in sympy.factorint(abs(q.numerator)).items():
        out[int(p)] = int(e)
    for p, e in sympy.factorint(q.denominator).items():
        out[int(p)] = out.get(int(p), 0) - int(e)
    return out


def discriminant_factorizations(B: BranchSet):
    """Exact D_{ij} for every unordered pair with its prime factorization."""
    if not B.exact:
        raise BranchSetError("rational branch points required")
    n = len(B.points)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = Fraction(symmetric_discriminant_formula(B, i, j))
            out[(i, j)] = (d, _factor(d))
    return out


def bad_reduction_locus_odd(B: BranchSet):
    """Primes at which some symmetric discriminant has negative valuation."""
    primes = set()
    for _, fac in discriminant_factorizations(B).values():
        primes |= {p for p, e in fac.items() if e < 0}
    return primes
