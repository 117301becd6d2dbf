"""Precision plumbing shared by the numeric modules.

Two working modes exist.  ``digits`` of ``None`` (or at most 15) means
binary64 with numpy complex arrays; anything larger switches to mpmath at
``digits`` decimal places with numpy object arrays holding ``mpc`` values.
"""
from __future__ import annotations

import contextlib
from fractions import Fraction

import mpmath
import numpy as np

FLOAT_DIGITS = 15
GUARD_DIGITS = 10


def use_mp(digits) -> bool:
    return digits is not None and digits > FLOAT_DIGITS


@contextlib.contextmanager
def working_precision(digits):
    """Set mpmath precision for the block; a no-op in float mode."""
    if use_mp(digits):
        with mpmath.workdps(digits + GUARD_DIGITS):
            yield
    else:
        yield


def default_eps(digits) -> float:
    if use_mp(digits):
        return mpmath.mpf(10) ** (-(digits + 3))
    return 1e-18


def is_mp_array(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def to_scalar(x, digits):
    """Coerce a number (Fraction, int, float, complex, mpc) to the working type."""
    if isinstance(x, Fraction):
        if use_mp(digits):
            return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
        return complex(x.numerator / x.denominator)
    if use_mp(digits):
        return mpmath.mpc(x)
    return complex(x)


def to_array(a, digits) -> np.ndarray:
    a = np.asarray(a, dtype=object if use_mp(digits) else complex)
    if use_mp(digits):
        out = np.empty(a.shape, dtype=object)
        for idx in np.ndindex(a.shape):
            out[idx] = to_scalar(a[idx], digits)
        return out
    return a.astype(complex)


def as_complex(a) -> np.ndarray:
    """Round an array (object or numeric) down to complex128."""
    a = np.asarray(a)
    if a.dtype == object:
        out = np.empty(a.shape, dtype=complex)
        for idx in np.ndindex(a.shape):
            out[idx] = complex(a[idx])
        return out
    return a.astype(complex)


def _mp_matrix(a):
    return mpmath.matrix([[a[i, j] for j in range(a.shape[1])] for i in range(a.shape[0])])


def _from_mp_matrix(m) -> np.ndarray:
    out = np.empty((m.rows, m.cols), dtype=object)
    for i in range(m.rows):
        for j in range(m.cols):
            out[i, j] = mpmath.mpc(m[i, j])
    return out


def det(a):
    if is_mp_array(a):
        return mpmath.mpc(mpmath.det(_mp_matrix(a)))
    return complex(np.linalg.det(a))


def inv(a) -> np.ndarray:
    if is_mp_array(a):
        return _from_mp_matrix(mpmath.inverse(_mp_matrix(a)))
    return np.linalg.inv(a)


def matmul(a, b) -> np.ndarray:
    if is_mp_array(a) or is_mp_array(b):
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        return np.dot(a, b)
    return a @ b


def cond(a) -> float:
    return float(np.linalg.cond(as_complex(a)))


def cholesky_upper(y):
    """Upper-triangular T with y = T^T T, or ValueError if y is not positive definite."""
    y = np.asarray(y, dtype=float)
    try:
        low = np.linalg.cholesky(y)
    except np.linalg.LinAlgError as exc:
        raise ValueError("imaginary part is not positive definite") from exc
    return low.T


def absval(x) -> float:
    return float(abs(x))


def root(x, n: int, digits=None):
    """Principal n-th root."""
    if use_mp(digits) or isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return mpmath.root(mpmath.mpc(x), n)
    return complex(x) ** (1.0 / n)


def exp_i_pi(x, digits=None):
    """exp(i*pi*x) in the working mode."""
    if use_mp(digits):
        return mpmath.expjpi(x)
    return complex(np.exp(1j * np.pi * complex(x)))


def pi(digits=None):
    return +mpmath.pi if use_mp(digits) else np.pi


def rel_residual(lhs, rhs, floor: float = 1e-300) -> float:
    """|lhs - rhs| / max(|lhs|, |rhs|, floor) for scalars or vectors."""
    lhs = np.atleast_1d(np.asarray(lhs, dtype=object))
    rhs = np.atleast_1d(np.asarray(rhs, dtype=object))
    num = max(float(abs(a - b)) for a, b in zip(lhs.ravel(), rhs.ravel()))
    den = max(max(float(abs(a)) for a in lhs.ravel()), max(float(abs(b)) for b in rhs.ravel()), floor)
    return num / den


def fmt(x, digits) -> str:
    """Decimal string for a real number at the working precision."""
    if isinstance(x, Fraction):
        return str(x)
    if use_mp(digits):
        return mpmath.nstr(mpmath.mpf(x), digits)
    return repr(float(x))
