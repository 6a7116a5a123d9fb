"""Continuous-time quantum walk U(t) = exp(itA) and flatness decisions.

Three evaluation routes:

* character sums for Cayley graphs over Z_q^d (exact in Z[zeta_L] when the
  time is a rational multiple of 2*pi and the eigenvalues are integers,
  otherwise an inverse FFT over the character group);
* a dense eigendecomposition oracle for any real symmetric matrix;
* weight-class sums for graphs in the Hamming scheme, using Krawtchouk
  numbers, which stays exact for d in the hundreds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .cayley import CayleyGraph
from .cyclotomic import Cyclo, lcm, reduction_matrix
from .scheme import SchemeGraphSpec, krawtchouk_table
from .walktime import WalkTime, as_time
from .zq import Submodule, ZqVector, check_cap, minimum_distance

DENSE_CAP = 1024
FLOAT_TOL = 1e-9
SUSPECT_BAND = (1e-12, 1e-6)

__all__ = [
    "WalkTime",
    "MixingVerdict",
    "TransitionRow",
    "transition_row",
    "dense_transition",
    "is_uniform_mixing",
    "is_local_uniform_mixing",
    "cartesian_product",
    "mullin_entry",
    "mullin_entry_exact",
    "mullin_flatness",
    "scheme_transition_class",
    "scheme_class_verdict",
]


@dataclass
class MixingVerdict:
    """``max_deviation`` is max over entries of | |U_uv|^2 n - 1 |."""

    flat: bool
    max_deviation: float
    method: str
    exact: bool = False
    suspect: bool = False
    witness: int | None = None
    cross_check: float | None = None

    def to_dict(self) -> dict:
        out = {"flat": self.flat, "max_deviation": self.max_deviation, "method": self.method,
               "exact": self.exact}
        if self.suspect:
            out["suspect"] = True
        if self.witness is not None:
            out["witness"] = self.witness
        if self.cross_check is not None:
            out["cross_check_deviation"] = self.cross_check
        return out


def _float_verdict(sq_moduli: np.ndarray, n: int, method: str, tol: float) -> MixingVerdict:
    dev = np.abs(sq_moduli * n - 1.0)
    i = int(np.argmax(dev))
    worst = float(dev[i])
    suspect = SUSPECT_BAND[0] <= worst <= SUSPECT_BAND[1]
    return MixingVerdict(worst <= tol, worst, method, False, suspect, None if worst <= tol else i)


# ---------------------------------------------------------------------------
# character-sum rows


@dataclass
class TransitionRow:
    """First row of U(t). ``coeffs[g]`` (exact path) holds c with
    U_{0,g} = sum_k c_k zeta_L^k / n."""

    values: np.ndarray
    n: int
    method: str
    coeffs: np.ndarray | None = None
    L: int | None = None

    @property
    def exact(self) -> bool:
        return self.coeffs is not None

    def entry(self, g) -> complex:
        return complex(self.values[int(g)])

    def cyclo(self, g) -> Cyclo:
        if self.coeffs is None:
            raise ValueError("row was computed on the floating-point path")
        return Cyclo(self.L, [int(c) for c in self.coeffs[int(g)]], self.n)


def _exact_row_coeffs(theta: np.ndarray, q: int, d: int, t: WalkTime) -> tuple[np.ndarray, int]:
    L = lcm(t.den, q)
    N = q ** d
    expo = (theta.astype(object) * t.num * (L // t.den)) % L
    f = np.zeros((N, L), dtype=np.int64)
    f[np.arange(N), np.array(expo, dtype=np.int64)] = 1
    arr = f.reshape((q,) * d + (L,))
    step = L // q
    for axis in range(d):
        src = np.moveaxis(arr, axis, 0)
        out = np.zeros_like(src)
        for g in range(q):
            for a in range(q):
                out[g] += np.roll(src[a], (a * g * step) % L, axis=-1)
        arr = np.moveaxis(out, 0, axis)
    return np.ascontiguousarray(arr.reshape(N, L)), L


def _coeffs_to_complex(coeffs: np.ndarray, L: int, n: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(L) / L)
    return coeffs.astype(float) @ roots / n


def _exact_allowed(X: CayleyGraph, t: WalkTime) -> bool:
    return t.is_rational and X.integer_eigenvalues is not None


def transition_row(X: CayleyGraph, t, exact: bool | None = None) -> TransitionRow:
    """U(t)_{0,g} = q^-d sum_a exp(i psi_a(C) t) psi_a(g) for every g (index order)."""
    t = as_time(t)
    check_cap(X.n, "transition row")
    if exact is None:
        exact = _exact_allowed(X, t)
    if exact:
        if not _exact_allowed(X, t):
            raise ValueError("exact path needs a rational time and integer eigenvalues")
        coeffs, L = _exact_row_coeffs(X.integer_eigenvalues, X.q, X.d, t)
        return TransitionRow(_coeffs_to_complex(coeffs, L, X.n), X.n, "character-sum", coeffs, L)
    phases = np.exp(1j * X.eigenvalues() * float(t)).reshape((X.q,) * X.d)
    # ifftn supplies the 1/n factor and the sign exp(+2 pi i <a,g>/q)
    row = np.fft.ifftn(phases).reshape(X.n)
    return TransitionRow(row, X.n, "character-sum")


def _reduced_norms(coeffs: np.ndarray, L: int) -> np.ndarray:
    """Rows of |s|^2 reduced modulo Phi_L (integer coefficient vectors)."""
    norms = _kernels.cyclic_autocorrelation(coeffs)
    R = reduction_matrix(L)
    bound = int(np.abs(norms).max(initial=0)) * L * int(np.abs(R).max(initial=1))
    if bound >= 2 ** 62:
        return norms.astype(object).dot(R.astype(object))
    return norms @ R


def _row_verdict(row: TransitionRow, tol: float) -> MixingVerdict:
    n = row.n
    if not row.exact:
        return _float_verdict(np.abs(row.values) ** 2, n, row.method, tol)
    red = _reduced_norms(row.coeffs, row.L)
    target = np.zeros(red.shape[1], dtype=red.dtype)
    target[0] = n
    bad = np.flatnonzero(~(red == target).all(axis=1))
    if not len(bad):
        return MixingVerdict(True, 0.0, row.method, exact=True)
    dev = np.abs(np.abs(row.values) ** 2 * n - 1.0)
    return MixingVerdict(False, float(dev.max()), row.method, exact=True, witness=int(bad[0]))


# ---------------------------------------------------------------------------
# dense oracle


def _as_symmetric(A, max_n: int) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if A.shape[0] > max_n:
        raise ValueError(f"dense oracle is limited to {max_n} vertices, got {A.shape[0]}")
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix is not symmetric")
    return A


def dense_transition(A, t, max_n: int = DENSE_CAP) -> np.ndarray:
    """exp(itA) from the real symmetric eigendecomposition of A."""
    A = _as_symmetric(A, max_n)
    w, V = np.linalg.eigh(A)
    return (V * np.exp(1j * w * float(as_time(t)))) @ V.T


def is_local_uniform_mixing(A, t, u: int, tol: float = FLOAT_TOL) -> MixingVerdict:
    U = dense_transition(A, t)
    return _float_verdict(np.abs(U[:, u]) ** 2, U.shape[0], "dense-oracle", tol)


def cartesian_product(A1, A2) -> np.ndarray:
    A1, A2 = np.asarray(A1), np.asarray(A2)
    n1, n2 = A1.shape[0], A2.shape[0]
    check_cap((n1 * n2) ** 2, "cartesian product")
    return np.kron(A1, np.eye(n2, dtype=A1.dtype)) + np.kron(np.eye(n1, dtype=A2.dtype), A2)


# ---------------------------------------------------------------------------
# dispatcher


def is_uniform_mixing(X, t, *, method: str = "auto", tol: float = FLOAT_TOL,
                      cross_check: bool = False) -> MixingVerdict:
    """Flatness of U(t) for a CayleyGraph, a SchemeGraphSpec or a dense matrix.

    Vertex-transitive inputs are judged on their first row only.
    ``method`` is one of auto, exact, float, dense.
    """
    t = as_time(t)
    if isinstance(X, SchemeGraphSpec):
        return scheme_class_verdict(X.d, X.q, X.eigenvalues(), t)
    if isinstance(X, CayleyGraph):
        if method == "dense":
            return is_uniform_mixing(X.adjacency(), t, tol=tol)
        exact = {"auto": None, "exact": True, "float": False}[method]
        verdict = _row_verdict(transition_row(X, t, exact=exact), tol)
        if cross_check:
            other = _row_verdict(transition_row(X, t, exact=False), tol)
            verdict.cross_check = other.max_deviation
        return verdict
    U = dense_transition(X, t)
    return _float_verdict((np.abs(U) ** 2).ravel(), U.shape[0], "dense-oracle", tol)


# ---------------------------------------------------------------------------
# closed form for quotients of Hamming graphs


def _coset_histogram(G: Submodule, v) -> np.ndarray:
    vec = v.array() if isinstance(v, ZqVector) else np.asarray(v, dtype=np.int64) % G.q
    return _kernels.coset_weight_histograms(G.elements(), vec[None, :], G.q)[0]


def _check_distance(G: Submodule) -> None:
    if G.rank > 0 and minimum_distance(G) < 3:
        raise ValueError("closed form needs minimum distance at least three")


def _mullin_float(hist, q: int, d: int, t: float) -> complex:
    x = np.exp(1j * q * t)
    X, Y = x + q - 1, x - 1
    total = sum(int(c) * X ** (d - w) * Y ** w for w, c in enumerate(hist) if c)
    return complex((np.exp(-1j * t) / q) ** d * total)


def _mullin_exact(hist, q: int, d: int, t: WalkTime) -> Cyclo:
    n = t.den
    x = Cyclo.root(n, q * t.num)
    X, Y = x + (q - 1), x - 1
    Xp, Yp = [Cyclo.integer(n, 1)], [Cyclo.integer(n, 1)]
    for _ in range(d):
        Xp.append(Xp[-1] * X)
        Yp.append(Yp[-1] * Y)
    total = Cyclo.integer(n, 0)
    for w, c in enumerate(hist):
        if c:
            total = total + Xp[d - w] * Yp[w] * int(c)
    return Cyclo.root(n, -t.num * d) * total * Fraction(1, q ** d)


def mullin_entry(G: Submodule, v, t) -> complex:
    """U(t)_{0,v} on H(d,q)/G from the weight distribution of the coset G + v."""
    _check_distance(G)
    return _mullin_float(_coset_histogram(G, v), G.q, G.d, float(as_time(t)))


def mullin_entry_exact(G: Submodule, v, t) -> Cyclo:
    t = as_time(t)
    if not t.is_rational:
        raise ValueError("exact closed form needs a rational multiple of 2*pi")
    _check_distance(G)
    return _mullin_exact(_coset_histogram(G, v), G.q, G.d, t)


def mullin_flatness(G: Submodule, t, exact: bool | None = None, tol: float = FLOAT_TOL) -> MixingVerdict:
    """Flatness of the quotient walk, one evaluation per distinct coset weight distribution."""
    from .zq import coset_weight_table

    t = as_time(t)
    _check_distance(G)
    exact = t.is_rational if exact is None else exact
    _, hists = coset_weight_table(G)
    ncos = hists.shape[0]
    seen: dict[tuple, float] = {}
    worst, witness, flat = 0.0, None, True
    for i, h in enumerate(hists):
        key = tuple(int(c) for c in h)
        if key in seen:
            continue
        if exact:
            val = _mullin_exact(key, G.q, G.d, t)
            sq = val.abs2().as_rational()
            ok = sq == Fraction(1, ncos)
            dev = abs(abs(complex(val)) ** 2 * ncos - 1.0)
        else:
            dev = abs(abs(_mullin_float(key, G.q, G.d, float(t))) ** 2 * ncos - 1.0)
            ok = dev <= tol
        seen[key] = dev
        if not ok and flat:
            flat, witness = False, i
        if not ok or not exact:
            worst = max(worst, dev)
    v = MixingVerdict(flat, worst, "closed-form", exact=exact, witness=witness)
    if not exact:
        v.suspect = SUSPECT_BAND[0] <= worst <= SUSPECT_BAND[1]
    return v


# ---------------------------------------------------------------------------
# Hamming-scheme weight classes


def _scheme_time(t) -> WalkTime:
    t = as_time(t)
    if not t.is_rational:
        raise ValueError("weight-class path needs a rational multiple of 2*pi")
    return t


def _class_sums(d: int, q: int, theta, t: WalkTime) -> list[list[int]]:
    L = t.den
    P = krawtchouk_table(d, q)
    slots = [(int(th) * t.num) % L for th in theta]
    out = []
    for w in range(d + 1):
        c = [0] * L
        row = P.values[w]
        for s in range(d + 1):
            c[slots[s]] += row[s]
        out.append(c)
    return out


def scheme_transition_class(d: int, q: int, theta, t) -> dict[int, Cyclo]:
    """U(t)_{0,g} for wt(g) = w, as exact cyclotomic numbers keyed by w.

    Uses sum_{wt(a)=s} psi_a(g) = p_s(wt(g)).
    """
    t = _scheme_time(t)
    if len(theta) != d + 1:
        raise ValueError("need one eigenvalue per class s = 0..d")
    return {w: Cyclo(t.den, c, q ** d) for w, c in enumerate(_class_sums(d, q, theta, t))}


def scheme_class_verdict(d: int, q: int, theta, t) -> MixingVerdict:
    t = _scheme_time(t)
    N = q ** d
    worst, witness = 0.0, None
    for w, c in enumerate(_class_sums(d, q, theta, t)):
        s = Cyclo(t.den, c)
        norm = s.abs2().as_rational()
        if norm == N:
            continue
        dev = abs(complex(s.abs2()).real / N - 1.0)
        if witness is None:
            witness = w
        worst = max(worst, dev)
    return MixingVerdict(witness is None, worst, "scheme-class", exact=True, witness=witness)

