"""Time the Thetanullwerte kernel: numba against the numpy fallback.

    python3 benchmarks/bench_theta.py [--repeat 5]

Both kernels get the same lattice points, and the script checks they agree
before timing them.  Without numba only the numpy timing is printed.
"""
import argparse
import itertools
import timeit

import numpy as np

from nullwerte import _kernels
from nullwerte.theta import RiemannMatrix, _points, choose_radius


def setup(g, eps, seed=0):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(g, g))
    X = rng.uniform(-0.5, 0.5, size=(g, g))
    Z = RiemannMatrix((X + X.T) / 2 + 1j * (A @ A.T / g + 0.4 * np.eye(g)))
    radius = choose_radius(Z.chol, eps)
    v = _points(Z.chol, (1,) * g, radius)
    bottoms = np.array(list(itertools.product((0, 1), repeat=g)), dtype=np.int64)
    return v, np.asarray(Z.matrix, dtype=complex), bottoms


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--eps", type=float, default=1e-15)
    args = ap.parse_args()
    print(f"{'g':>2} {'points':>8} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for g in (1, 2, 3, 4):
        v, Z, bottoms = setup(g, args.eps)
        t_np = min(timeit.repeat(lambda: _kernels._nullwerte_numpy(v, Z, bottoms), number=1, repeat=args.repeat))
        if _kernels.USE_NUMBA:
            ref = _kernels._nullwerte_numpy(v, Z, bottoms)
            got = _kernels._nullwerte_numba(v, Z, bottoms)  # first call compiles
            assert np.allclose(ref[0], got[0], rtol=1e-12, atol=1e-14)
            assert np.allclose(ref[1], got[1], rtol=1e-12, atol=1e-12)
            t_nb = min(timeit.repeat(lambda: _kernels._nullwerte_numba(v, Z, bottoms), number=1,
                                     repeat=args.repeat))
            print(f"{g:>2} {len(v):>8} {1e3 * t_np:>10.3f} {1e3 * t_nb:>10.3f} {t_np / t_nb:>8.1f}")
        else:
            print(f"{g:>2} {len(v):>8} {1e3 * t_np:>10.3f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
