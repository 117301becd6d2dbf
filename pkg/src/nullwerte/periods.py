"""Period matrices of y^2 = prod (x - e_i) and the label/characteristic dictionary.

Conventions (all Nullwerte signs inherit them):

* The finite branch points are sorted by real part, e_0 < e_1 < ... (after a
  rotation x -> e^{-i phi} x when some are complex, chosen so that real parts
  stay well separated).
* y is the product of the square roots sqrt(x - e_i), each with its cut on
  the downward vertical ray from e_i in the rotated frame.  This branch is
  analytic on every open segment (e_j, e_{j+1}).
* seg_j = integral of x^m dx / y over [e_j, e_{j+1}] for m = 0..g-1.
  The closed lift of that segment to both sheets has period 2 seg_j.
* a_k = 2 seg_{2k},  b_k = 2 (seg_{2k+1} + seg_{2k+3} + ... + seg_{2g-1}),
  k = 0..g-1.  On the segments with odd index y is imaginary for real branch
  points, and these sums are the cycles dual to the a_k.
  Omega1 has columns a_k, Omega2 has columns b_k, Z = Omega1^{-1} Omega2.
* The Abel-Jacobi image of e_j from base e_0 is the partial sum of seg_i,
  i < j; with infinity present its image is the sum of all finite images.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .algebra import INF
from .symcurve import BranchSet
from .theta import Characteristic, RiemannMatrix, char_add, char_sum
from ._numeric import as_complex, cond, inv, matmul, to_scalar, use_mp, working_precision


class PeriodError(ValueError):
    pass


class NonRealBranchPointError(PeriodError):
    pass


class ConvergenceError(ArithmeticError):
    pass


MAX_NODES = 1 << 15
GAP_TOL = 1e-8


@dataclass
class PeriodData:
    Omega1: np.ndarray
    Omega2: np.ndarray
    Z: RiemannMatrix
    segments: list
    order: list
    digits: int = None

    @property
    def g(self):
        return self.Omega1.shape[0]

    @property
    def condition(self) -> float:
        return cond(self.Omega1)


def _arg_c(w):
    """arg with branch (-pi/2, 3pi/2]."""
    a = mpmath.arg(w) if isinstance(w, (mpmath.mpc, mpmath.mpf)) else np.angle(w)
    half_pi = mpmath.pi / 2 if isinstance(w, (mpmath.mpc, mpmath.mpf)) else np.pi / 2
    return a + 2 * (2 * half_pi) if a <= -half_pi else a


def _choose_rotation(points):
    if all(abs(p.imag) == 0 for p in points):
        return 0.0
    scale = max(abs(p) for p in points)
    best, best_gap = 0.0, -1.0
    for k in range(24):
        phi = k * math.pi / 24 + 0.05
        re = sorted((complex(p) * complex(np.exp(-1j * phi))).real for p in points)
        gap = min(b - a for a, b in zip(re, re[1:])) / scale
        if gap > best_gap + 1e-12:
            best, best_gap = phi, gap
    return best


def _segment(a, b, others, rot, rot_half, g, n_nodes, mp_mode):
    """x^m dx / y over [a, b], m = 0..g-1, with n_nodes Gauss-Chebyshev nodes."""
    mid, half = (a + b) / 2, (b - a) / 2
    if mp_mode:
        theta = _arg_c(rot * half) + _arg_c(-rot * half)
        pref = half / (abs(half) * rot_half ** 2 * mpmath.expj(theta / 2))
        acc = [mpmath.mpc(0)] * g
        w = mpmath.pi / n_nodes
        for k in range(1, n_nodes + 1):
            t = mpmath.cos((2 * k - 1) * mpmath.pi / (2 * n_nodes))
            x = mid + half * t
            r = mpmath.mpc(1)
            for e in others:
                d = rot * (x - e)
                r *= rot_half * mpmath.sqrt(abs(d)) * mpmath.expj(_arg_c(d) / 2)
            val = 1 / r
            for m in range(g):
                acc[m] += val
                val *= x
        return [pref * w * s for s in acc]
    theta = _arg_c(rot * half) + _arg_c(-rot * half)
    pref = half / (abs(half) * rot_half ** 2 * np.exp(1j * theta / 2))
    k = np.arange(1, n_nodes + 1)
    t = np.cos((2 * k - 1) * np.pi / (2 * n_nodes))
    x = mid + half * t
    r = np.ones_like(x, dtype=complex)
    for e in others:
        d = rot * (x - e)
        ang = np.angle(d)
        ang = np.where(ang <= -np.pi / 2, ang + 2 * np.pi, ang)
        r *= rot_half * np.sqrt(np.abs(d)) * np.exp(0.5j * ang)
    powers = x[None, :] ** np.arange(g)[:, None]
    return list(pref * (np.pi / n_nodes) * (powers / r[None, :]).sum(axis=1))


def _integrate(a, b, others, rot, rot_half, g, mp_mode, tol):
    n = 32
    prev = _segment(a, b, others, rot, rot_half, g, n, mp_mode)
    while n < MAX_NODES:
        n *= 2
        cur = _segment(a, b, others, rot, rot_half, g, n, mp_mode)
        err = max(abs(c - p) for c, p in zip(cur, prev))
        size = max(max(abs(c) for c in cur), 1e-300)
        if err <= tol * size:
            return cur
        prev = cur
    raise ConvergenceError("segment quadrature did not converge")


def period_matrix(B: BranchSet, digits=None, allow_complex=False) -> PeriodData:
    """Omega1, Omega2 and Z for the basis x^m dx / y, m = 0..g-1."""
    g = B.genus
    mp_mode = use_mp(digits)
    with working_precision(digits):
        idx = [k for k, p in enumerate(B.points) if p is not INF]
        pts = [to_scalar(B.points[k], digits) for k in idx]
        if any(abs(complex(p).imag) > 0 for p in pts) and not allow_complex:
            raise NonRealBranchPointError("real branch points required")
        scale = max(1.0, max(abs(complex(p)) for p in pts))
        for a, b in itertools.combinations(pts, 2):
            if abs(complex(a) - complex(b)) < GAP_TOL * scale:
                raise PeriodError("branch points nearly collide")
        phi = _choose_rotation([complex(p) for p in pts])
        if mp_mode:
            rot, rot_half = mpmath.expj(-phi), mpmath.expj(phi / 2)
        else:
            rot, rot_half = complex(np.exp(-1j * phi)), complex(np.exp(0.5j * phi))
        order = sorted(range(len(pts)), key=lambda k: (complex(pts[k]) * complex(np.exp(-1j * phi))).real)
        e = [pts[k] for k in order]
        tol = mpmath.mpf(10) ** (-(digits + 3)) if mp_mode else 1e-14
        segs = []
        for j in range(len(e) - 1):
            others = [x for k, x in enumerate(e) if k not in (j, j + 1)]
            segs.append(_integrate(e[j], e[j + 1], others, rot, rot_half, g, mp_mode, tol))
        dtype = object if mp_mode else complex
        O1 = np.empty((g, g), dtype=dtype)
        O2 = np.empty((g, g), dtype=dtype)
        for k in range(g):
            for m in range(g):
                O1[m, k] = 2 * segs[2 * k][m]
                O2[m, k] = 2 * sum((segs[j][m] for j in range(2 * k + 1, 2 * g, 2)), 0 * segs[0][m])
        Zm = matmul(inv(O1), O2)
        try:
            Z = RiemannMatrix(Zm, digits, tol=1e-6)
        except ValueError as exc:
            raise PeriodError(f"period matrix failed the Riemann relations: {exc}") from exc
        # branch-point order: input indices of the sorted finite points
        return PeriodData(O1, O2, Z, segs, [idx[k] for k in order], digits)


# --- characteristic dictionary ------------------------------------------------

def _to_characteristic(u, Z, tol):
    """Half period u = Z m' + m'' (normalized coordinates) to a characteristic."""
    zc = as_complex(Z.matrix)
    uc = as_complex(u)
    mp_ = np.linalg.solve(zc.imag, uc.imag)
    mpp = uc.real - zc.real @ mp_
    top2, bot2 = 2 * mp_, 2 * mpp
    if max(np.abs(top2 - np.rint(top2)).max(), np.abs(bot2 - np.rint(bot2)).max()) > tol:
        raise PeriodError("Abel-Jacobi image of a branch point is not a half period")
    return Characteristic(tuple(int(x) % 2 for x in np.rint(top2)), tuple(int(x) % 2 for x in np.rint(bot2)))


class DictionaryError(PeriodError):
    pass


@dataclass
class CharacteristicDictionary:
    """Theta characteristics of divisors supported on Weierstrass points.

    ``c[i]`` is the half period of W_i - W_0 for input index i and ``shift``
    the constant making images of degree g-1 divisors land on the theta
    divisor: Pi(sum n_i W_i) = sum n_i c_i + shift.  A divisor of another
    degree d is first moved to degree g-1 with (g-1-d) copies of the point
    ``base`` (infinity when present, else the last label).
    """

    g: int
    c: dict
    shift: Characteristic
    candidates: list
    inf_label: int = None

    @property
    def labels(self):
        return sorted(self.c)

    @property
    def base(self):
        return self.labels[-1] if self.inf_label is None else self.inf_label

    def image(self, divisor) -> Characteristic:
        """Pi of a divisor given as {label: multiplicity} or an iterable of labels."""
        if not isinstance(divisor, dict):
            mult = {}
            for k in divisor:
                mult[k] = mult.get(k, 0) + 1
            divisor = mult
        terms = [self.c[k] for k, n in divisor.items() if n % 2]
        if (sum(divisor.values()) - self.g + 1) % 2:
            terms.append(self.c[self.base])
        return char_add(char_sum(terms, self.g), self.shift)

    def odd(self, *labels) -> Characteristic:
        """w for a (g-1)-subset of labels: w_i (g=2), w_ij (g=3)."""
        if len(set(labels)) != self.g - 1:
            raise DictionaryError(f"expected {self.g - 1} distinct labels")
        return self.image(labels)

    def odd_map(self):
        return {S: self.image(S) for S in itertools.combinations(self.labels, self.g - 1)}

    def subset_of(self, m: Characteristic):
        for S, w in self.odd_map().items():
            if w == m:
                return S
        raise DictionaryError(f"{m} is not the image of a (g-1)-subset")

    def even_from_partition(self, part) -> Characteristic:
        """w_e = Pi(W_{i_1} + ... + W_{i_{g+1}} - 2W) for a (g+1)-subset."""
        part = list(part)
        if len(set(part)) != self.g + 1:
            raise DictionaryError(f"expected {self.g + 1} distinct labels")
        return self.image(part)


def characteristic_dictionary(B: BranchSet, P: PeriodData, tol=1e-6) -> CharacteristicDictionary:
    g = B.genus
    with working_precision(P.digits):
        O1inv = inv(P.Omega1)
        c = {}
        acc = None
        for pos, label in enumerate(P.order):
            if pos == 0:
                c[label] = Characteristic.zero(g)
                acc = [0 * P.segments[0][m] for m in range(g)]
                continue
            acc = [acc[m] + P.segments[pos - 1][m] for m in range(g)]
            u = matmul(O1inv, np.array(acc, dtype=object if P.Z.mp else complex))
            c[label] = _to_characteristic(u, P.Z, tol)
    labels = list(range(len(B.points)))
    inf_label = [k for k in labels if B.points[k] is INF]
    if inf_label:
        c[inf_label[0]] = char_sum([c[k] for k in P.order], g)
    elif char_sum(list(c.values()), g) != Characteristic.zero(g):
        raise DictionaryError("branch point half periods do not sum to zero")
    from .theta import all_characteristics
    subsets = list(itertools.combinations(labels, g - 1))
    cands = []
    for delta in all_characteristics(g):
        if all(char_add(char_sum([c[k] for k in S], g), delta).is_odd for S in subsets):
            cands.append(delta)
    if not cands:
        raise DictionaryError("no shift makes every image odd")
    if len(cands) > 1:
        raise DictionaryError("ambiguous shift: " + ", ".join(map(str, cands)))
    return CharacteristicDictionary(g, c, cands[0], cands, inf_label[0] if inf_label else None)
