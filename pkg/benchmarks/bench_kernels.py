"""Time each integer kernel under numba and under plain numpy.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported in one process (the module exposes the two
kernel tables), results are compared for equality before timing.
"""

import argparse
import time

import numpy as np

from qmix import _kernels
from qmix.zq import Submodule, all_vectors


def _cases(rng):
    G = Submodule(3, 10, rng.integers(0, 3, size=(3, 10)))
    elems = G.elements()
    reps = all_vectors(3, 10)[:4000]
    S = rng.integers(-50, 50, size=(729, 27)).astype(np.int64)
    V = all_vectors(3, 7)
    conn = V[rng.choice(len(V), size=40, replace=False)]
    bins = rng.integers(0, 60, size=3 ** 9).astype(np.int64)
    res = rng.integers(0, 3, size=3 ** 9).astype(np.int64)
    hist = _kernels.NUMPY_KERNELS["residue_histograms"](bins, res, 3, 60)
    return {
        "coset_weight_histograms": (elems, reps, 3),
        "cyclic_autocorrelation": (S,),
        "orthogonal_counts": (V, conn, 3),
        "residue_histograms": (bins, res, 3, 60),
        "pair_difference_counts": (hist,),
    }


def _best(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _kernels.NUMBA_KERNELS:
        print("numba unavailable; only the numpy backend can be timed")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':28s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for name, a in _cases(rng).items():
        np_fn = _kernels.NUMPY_KERNELS[name]
        t_np = _best(np_fn, a, args.repeat)
        if _kernels.NUMBA_KERNELS:
            nb_fn = _kernels.NUMBA_KERNELS[name]
            if not np.array_equal(np_fn(*a), nb_fn(*a)):
                raise SystemExit(f"{name}: backends disagree")
            t_nb = _best(nb_fn, a, args.repeat)
            print(f"{name:28s} {t_np * 1e3:11.3f} {t_nb * 1e3:11.3f} {t_np / t_nb:8.1f}")
        else:
            print(f"{name:28s} {t_np * 1e3:11.3f} {'-':>11s} {'-':>8s}")


if __name__ == "__main__":
    main()
