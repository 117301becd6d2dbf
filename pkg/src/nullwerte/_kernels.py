"""Hot loops of the binary64 theta evaluation.

Each kernel has a numba version and a pure numpy version with identical
signatures.  Setting ``NULLWERTE_NO_NUMBA=1`` in the environment (or numba
being unavailable) selects the numpy versions.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

USE_NUMBA = njit is not None and os.environ.get("NULLWERTE_NO_NUMBA", "") not in ("1", "true", "yes")


def _nullwerte_numpy(v, Z, bottoms):
    # v: (N, g) half-integer points n + m', bottoms: (B, g) bits of m''
    q = np.einsum("ak,kl,al->a", v, Z, v)
    e = np.exp(1j * np.pi * q)
    twice = np.rint(2 * v).astype(np.int64)
    p = (twice @ bottoms.T) % 4  # (N, B)
    t = e[:, None] * (1j ** p)
    vals = t.sum(axis=0)
    grads = 2j * np.pi * np.einsum("ab,ak->bk", t, v)
    return vals, grads


def _theta_numpy(v, Z, w):
    # sum over v of exp(pi i vZv + 2 pi i v.w) and its gradient in w
    q = np.einsum("ak,kl,al->a", v, Z, v) + 2.0 * (v @ w)
    t = np.exp(1j * np.pi * q)
    return t.sum(), 2j * np.pi * (t @ v)


if USE_NUMBA:

    @njit(cache=True)
    def _nullwerte_numba(v, Z, bottoms):
        n_pts, g = v.shape
        n_b = bottoms.shape[0]
        vals = np.zeros(n_b, dtype=np.complex128)
        grads = np.zeros((n_b, g), dtype=np.complex128)
        phase = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])
        twice = np.empty(g, dtype=np.int64)
        for a in range(n_pts):
            q = 0.0j
            for k in range(g):
                twice[k] = int(np.rint(2.0 * v[a, k]))
                for l in range(g):
                    q += v[a, k] * Z[k, l] * v[a, l]
            e = np.exp(1j * np.pi * q)
            for b in range(n_b):
                p = 0
                for k in range(g):
                    p += twice[k] * bottoms[b, k]
                t = e * phase[p % 4]
                vals[b] += t
                for k in range(g):
                    grads[b, k] += 2j * np.pi * v[a, k] * t
        return vals, grads

    @njit(cache=True)
    def _theta_numba(v, Z, w):
        n_pts, g = v.shape
        total = 0.0j
        grad = np.zeros(g, dtype=np.complex128)
        for a in range(n_pts):
            q = 0.0j
            for k in range(g):
                q += 2.0 * v[a, k] * w[k]
                for l in range(g):
                    q += v[a, k] * Z[k, l] * v[a, l]
            t = np.exp(1j * np.pi * q)
            total += t
            for k in range(g):
                grad[k] += 2j * np.pi * v[a, k] * t
        return total, grad


def nullwerte_sums(v, Z, bottoms):
    """Values and z-gradients at 0 for one m' class and several m'' patterns."""
    v = np.ascontiguousarray(v, dtype=np.float64)
    Z = np.ascontiguousarray(Z, dtype=np.complex128)
    bottoms = np.ascontiguousarray(bottoms, dtype=np.int64)
    if USE_NUMBA:
        return _nullwerte_numba(v, Z, bottoms)
    return _nullwerte_numpy(v, Z, bottoms)


def theta_sum(v, Z, w):
    v = np.ascontiguousarray(v, dtype=np.float64)
    Z = np.ascontiguousarray(Z, dtype=np.complex128)
    w = np.ascontiguousarray(w, dtype=np.complex128)
    if USE_NUMBA:
        return _theta_numba(v, Z, w)
    return _theta_numpy(v, Z, w)


def lattice_points(T, center, radius):
    """Integer points n with ||T (n + center)|| <= radius, T upper triangular.

    Enumerates from the last coordinate down, expanding all partial prefixes
    at once.
    """
    T = np.asarray(T, dtype=float)
    center = np.asarray(center, dtype=float)
    g = T.shape[0]
    # prefixes hold coordinates i..g-1; partial[i] holds the squared norm of rows i..g-1
    pts = np.zeros((1, 0), dtype=np.int64)
    used = np.zeros(1)
    for i in range(g - 1, -1, -1):
        if pts.shape[1]:
            x_tail = pts + center[i + 1:]
            shift = x_tail @ T[i, i + 1:]
        else:
            shift = np.zeros(len(pts))
        room = np.sqrt(np.maximum(radius * radius - used, 0.0))
        # T_ii (n_i + c_i) + shift in [-room, room]
        lo = np.ceil((-room - shift) / T[i, i] - center[i]).astype(np.int64)
        hi = np.floor((room - shift) / T[i, i] - center[i]).astype(np.int64)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        rep = np.repeat(np.arange(len(pts)), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        n_i = lo[rep] + offsets
        new_used = used[rep] + (T[i, i] * (n_i + center[i]) + shift[rep]) ** 2
        pts = np.column_stack([n_i, pts[rep]]) if pts.shape[1] else n_i[:, None]
        used = new_used
    return pts
