"""Hot integer loops, compiled with numba when available.

Every kernel has a pure-numpy twin with identical semantics. The numba
versions are used unless ``QMIX_DISABLE_NUMBA`` is set to a truthy value
or numba cannot be imported. ``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("QMIX_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and not _DISABLED


# ---------------------------------------------------------------------------
# numpy implementations


def _coset_weight_histograms_np(elements, reps, q):
    m, d = elements.shape
    out = np.zeros((reps.shape[0], d + 1), dtype=np.int64)
    # bound the broadcast block to ~4M cells
    step = max(1, (1 << 22) // max(1, m * d))
    for lo in range(0, reps.shape[0], step):
        block = reps[lo:lo + step]
        shifted = (elements[None, :, :] + block[:, None, :]) % q
        weights = np.count_nonzero(shifted, axis=2)
        for i in range(block.shape[0]):
            out[lo + i] = np.bincount(weights[i], minlength=d + 1)
    return out


def _cyclic_autocorrelation_np(S):
    n, L = S.shape
    out = np.empty((n, L), dtype=np.int64)
    for k in range(L):
        out[:, k] = (S * np.roll(S, k, axis=1)).sum(axis=1)
    return out


def _orthogonal_counts_np(vectors, conn, q):
    if conn.shape[0] == 0:
        return np.zeros(vectors.shape[0], dtype=np.int64)
    out = np.zeros(vectors.shape[0], dtype=np.int64)
    step = max(1, (1 << 22) // max(1, conn.shape[0]))
    for lo in range(0, vectors.shape[0], step):
        prods = (vectors[lo:lo + step] @ conn.T) % q
        out[lo:lo + step] = np.count_nonzero(prods == 0, axis=1)
    return out


def _residue_histograms_np(bins, residues, q, width):
    flat = residues.astype(np.int64) * width + bins.astype(np.int64)
    return np.bincount(flat, minlength=q * width).reshape(q, width).astype(np.int64)


def _pair_difference_counts_np(hist):
    # out[j] = sum_rho sum_i hist[rho, i] * hist[rho, i + j - (width - 1)]
    q, width = hist.shape
    out = np.zeros(2 * width - 1, dtype=np.int64)
    for rho in range(q):
        row = hist[rho]
        if row.any():
            out += np.correlate(row, row, mode="full")
    return out


# ---------------------------------------------------------------------------
# numba implementations

if numba is not None:

    @numba.njit(cache=True)
    def _coset_weight_histograms_nb(elements, reps, q):
        m, d = elements.shape
        r = reps.shape[0]
        out = np.zeros((r, d + 1), dtype=np.int64)
        for i in range(r):
            for e in range(m):
                w = 0
                for j in range(d):
                    if (elements[e, j] + reps[i, j]) % q != 0:
                        w += 1
                out[i, w] += 1
        return out

    @numba.njit(cache=True)
    def _cyclic_autocorrelation_nb(S):
        n, L = S.shape
        out = np.zeros((n, L), dtype=np.int64)
        for i in range(n):
            for j in range(L):
                sj = S[i, j]
                if sj == 0:
                    continue
                for k in range(L):
                    out[i, k] += sj * S[i, (j - k) % L]
        return out

    @numba.njit(cache=True)
    def _orthogonal_counts_nb(vectors, conn, q):
        N, d = vectors.shape
        m = conn.shape[0]
        out = np.zeros(N, dtype=np.int64)
        for a in range(N):
            cnt = 0
            for c in range(m):
                s = 0
                for j in range(d):
                    s += vectors[a, j] * conn[c, j]
                if s % q == 0:
                    cnt += 1
            out[a] = cnt
        return out

    @numba.njit(cache=True)
    def _residue_histograms_nb(bins, residues, q, width):
        out = np.zeros((q, width), dtype=np.int64)
        for i in range(bins.shape[0]):
            out[residues[i], bins[i]] += 1
        return out

    @numba.njit(cache=True)
    def _pair_difference_counts_nb(hist):
        q, width = hist.shape
        out = np.zeros(2 * width - 1, dtype=np.int64)
        for rho in range(q):
            for i in range(width):
                hi = hist[rho, i]
                if hi == 0:
                    continue
                for k in range(width):
                    hk = hist[rho, k]
                    if hk != 0:
                        out[i - k + width - 1] += hi * hk
        return out


NUMPY_KERNELS = {
    "coset_weight_histograms": _coset_weight_histograms_np,
    "cyclic_autocorrelation": _cyclic_autocorrelation_np,
    "orthogonal_counts": _orthogonal_counts_np,
    "residue_histograms": _residue_histograms_np,
    "pair_difference_counts": _pair_difference_counts_np,
}

if numba is not None:
    NUMBA_KERNELS = {
        "coset_weight_histograms": _coset_weight_histograms_nb,
        "cyclic_autocorrelation": _cyclic_autocorrelation_nb,
        "orthogonal_counts": _orthogonal_counts_nb,
        "residue_histograms": _residue_histograms_nb,
        "pair_difference_counts": _pair_difference_counts_nb,
    }
else:  # pragma: no cover
    NUMBA_KERNELS = {}

_ACTIVE = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def coset_weight_histograms(elements, reps, q: int) -> np.ndarray:
    """Row i is the Hamming-weight histogram of ``elements + reps[i]`` mod q."""
    return _ACTIVE["coset_weight_histograms"](_i64(elements), _i64(reps), int(q))


def cyclic_autocorrelation(S) -> np.ndarray:
    """Coefficients of ``s(x) * s(1/x)`` mod ``x^L - 1`` for each row s of S."""
    return _ACTIVE["cyclic_autocorrelation"](_i64(S))


def orthogonal_counts(vectors, conn, q: int) -> np.ndarray:
    """For each vector a, the number of rows c of ``conn`` with <a, c> = 0 mod q."""
    return _ACTIVE["orthogonal_counts"](_i64(vectors), _i64(conn), int(q))


def residue_histograms(bins, residues, q: int, width: int) -> np.ndarray:
    return _ACTIVE["residue_histograms"](_i64(bins), _i64(residues), int(q), int(width))


def pair_difference_counts(hist) -> np.ndarray:
    """Index ``j`` counts same-residue pairs whose bin difference is ``j - (width-1)``."""
    return _ACTIVE["pair_difference_counts"](_i64(hist))
