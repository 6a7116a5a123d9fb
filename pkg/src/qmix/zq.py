"""Vectors, submodules and cosets of Z_q^d with Hamming-weight machinery."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from math import comb, gcd
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels

DEFAULT_CAP = 1 << 24


class CapExceededError(ValueError):
    """Raised when an enumeration would exceed the configured element cap."""


class NonFreeModuleError(ValueError):
    """The generators do not admit a unit-pivot systematic form over Z_q."""


def enumeration_cap() -> int:
    return int(os.environ.get("QMIX_CAP", DEFAULT_CAP))


def check_cap(count: int, what: str = "enumeration") -> None:
    cap = enumeration_cap()
    if count > cap:
        raise CapExceededError(f"{what} needs {count} elements, cap is {cap} (set QMIX_CAP)")


@dataclass(frozen=True)
class ZqVector:
    q: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("modulus must be at least 2")
        coords = tuple(int(c) % self.q for c in self.coords)
        if not coords:
            raise ValueError("vectors need at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def parse(cls, text: str, q: int) -> "ZqVector":
        return cls(q, tuple(int(t) for t in text.replace(" ", "").split(",") if t != ""))

    @classmethod
    def zero(cls, q: int, d: int) -> "ZqVector":
        return cls(q, (0,) * d)

    @classmethod
    def ones(cls, q: int, d: int) -> "ZqVector":
        return cls(q, (1,) * d)

    @classmethod
    def unit(cls, q: int, d: int, j: int) -> "ZqVector":
        return cls(q, tuple(1 if i == j else 0 for i in range(d)))

    @property
    def d(self) -> int:
        return len(self.coords)

    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def _check(self, other: "ZqVector") -> None:
        if self.q != other.q or self.d != other.d:
            raise ValueError(f"mismatched vectors: Z_{self.q}^{self.d} vs Z_{other.q}^{other.d}")

    def __add__(self, other: "ZqVector") -> "ZqVector":
        self._check(other)
        return ZqVector(self.q, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ZqVector") -> "ZqVector":
        self._check(other)
        return ZqVector(self.q, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ZqVector":
        return ZqVector(self.q, tuple(-a for a in self.coords))

    def scale(self, lam: int) -> "ZqVector":
        return ZqVector(self.q, tuple(lam * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return ",".join(map(str, self.coords))


def hamming_weight(v: ZqVector) -> int:
    return sum(1 for c in v.coords if c)


def inner_product(u: ZqVector, v: ZqVector) -> int:
    u._check(v)
    return sum(a * b for a, b in zip(u.coords, v.coords)) % u.q


def all_vectors(q: int, d: int) -> np.ndarray:
    """Every vector of Z_q^d, in lexicographic (base-q index) order."""
    check_cap(q ** d, f"Z_{q}^{d}")
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * d, dtype=np.int64)
    return grids.reshape(d, -1).T.copy()


def vector_index(v: np.ndarray, q: int) -> np.ndarray:
    """Base-q index of each row (first coordinate most significant)."""
    v = np.atleast_2d(v)
    d = v.shape[1]
    weights = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (v % q) @ weights


def unit_inverse(x: int, q: int) -> int:
    return pow(int(x), -1, q)


def is_unit(x: int, q: int) -> bool:
    return gcd(int(x), q) == 1


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def rank_mod_p(rows: np.ndarray, p: int) -> int:
    """Rank over the prime field F_p."""
    M = np.array(rows, dtype=np.int64) % p
    if M.size == 0:
        return 0
    rank = 0
    nrows, ncols = M.shape
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if M[r, col] % p), None)
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        M[rank] = (M[rank] * unit_inverse(M[rank, col], p)) % p
        for r in range(nrows):
            if r != rank and M[r, col]:
                M[r] = (M[r] - M[r, col] * M[rank]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


@dataclass(frozen=True)
class SystematicForm:
    basis: np.ndarray  # k x d, identity on the pivot columns
    pivots: tuple[int, ...]
    nonpivots: tuple[int, ...]


def systematic_form(gens: np.ndarray, q: int) -> SystematicForm:
    """Row-reduce with unit pivots; every leftover row must vanish."""
    M = np.array(gens, dtype=np.int64) % q
    nrows = M.shape[0]
    d = M.shape[1]
    row = 0
    pivots = []
    for col in range(d):
        piv = next((r for r in range(row, nrows) if is_unit(M[r, col], q)), None)
        if piv is None:
            continue
        M[[row, piv]] = M[[piv, row]]
        M[row] = (M[row] * unit_inverse(M[row, col], q)) % q
        for r in range(nrows):
            if r != row and M[r, col]:
                M[r] = (M[r] - M[r, col] * M[row]) % q
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    if M[row:].any():
        raise NonFreeModuleError(
            f"generators over Z_{q} have no unit-pivot systematic form"
        )
    nonpivots = tuple(c for c in range(d) if c not in pivots)
    return SystematicForm(M[:row].copy(), tuple(pivots), nonpivots)


class Submodule:
    """The Z_q-span of a set of generators in Z_q^d."""

    def __init__(self, q: int, d: int, generators: Union[np.ndarray, Sequence] = ()):
        if q < 2 or d < 1:
            raise ValueError("need q >= 2 and d >= 1")
        self.q = int(q)
        self.d = int(d)
        rows = []
        for g in generators:
            coords = g.coords if isinstance(g, ZqVector) else tuple(int(x) for x in g)
            if len(coords) != d:
                raise ValueError(f"generator of length {len(coords)} in Z_{q}^{d}")
            rows.append(coords)
        self.generators = np.array(rows, dtype=np.int64).reshape(len(rows), d) % self.q

    @classmethod
    def from_vectors(cls, vectors: Sequence[ZqVector]) -> "Submodule":
        if not vectors:
            raise ValueError("need at least one vector to infer q and d")
        return cls(vectors[0].q, vectors[0].d, vectors)

    @classmethod
    def zero(cls, q: int, d: int) -> "Submodule":
        return cls(q, d)

    @classmethod
    def whole(cls, q: int, d: int) -> "Submodule":
        return cls(q, d, np.eye(d, dtype=np.int64))

    def generator_vectors(self) -> list[ZqVector]:
        return [ZqVector(self.q, tuple(int(x) for x in row)) for row in self.generators]

    @cached_property
    def systematic(self) -> SystematicForm:
        return systematic_form(self.generators, self.q)

    @cached_property
    def is_free(self) -> bool:
        try:
            self.systematic
        except NonFreeModuleError:
            return False
        return True

    @property
    def rank(self) -> int:
        if self.is_free:
            return len(self.systematic.pivots)
        # minimal number of generators of a Z_q-module: max rank over residue fields
        return max(rank_mod_p(self.generators, p) for p in prime_factors(self.q))

    @property
    def size(self) -> int:
        if self.is_free:
            return self.q ** self.rank
        return len(self.elements())

    def elements(self) -> np.ndarray:
        """All elements as rows, ordered by their coordinates in the systematic basis."""
        cached = self.__dict__.get("_elements")
        if cached is not None:
            return cached
        if self.is_free:
            k = self.rank
            check_cap(self.q ** k, "submodule enumeration")
            coeffs = all_vectors(self.q, k) if k else np.zeros((1, 0), dtype=np.int64)
            elems = (coeffs @ self.systematic.basis) % self.q if k else np.zeros((1, self.d), dtype=np.int64)
        else:
            elems = np.zeros((1, self.d), dtype=np.int64)
            for g in self.generators:
                multiples = (np.arange(self.q)[:, None] * g[None, :]) % self.q
                elems = np.unique(((elems[:, None, :] + multiples[None, :, :]) % self.q).reshape(-1, self.d), axis=0)
                check_cap(len(elems), "submodule enumeration")
        self.__dict__["_elements"] = elems
        return elems

    def coefficient_grid(self) -> np.ndarray:
        """Coefficient vectors y aligned with :meth:`elements` (free modules only)."""
        k = self.rank
        return all_vectors(self.q, k) if k else np.zeros((1, 0), dtype=np.int64)

    def contains(self, v: ZqVector) -> bool:
        if self.is_free:
            Q, _ = parity_check_matrix(self)
            return not ((Q @ v.array()) % self.q).any()
        return bool((self.elements() == v.array()).all(axis=1).any())

    def dual(self) -> "Submodule":
        if self.is_free:
            Q, _ = parity_check_matrix(self)
            return Submodule(self.q, self.d, Q)
        # no systematic form: search the whole space (desk scale only)
        check_cap(self.q ** self.d, "dual enumeration")
        V = all_vectors(self.q, self.d)
        return Submodule(self.q, self.d, V[~((V @ self.generators.T) % self.q).any(axis=1)])

    def transversal(self) -> np.ndarray:
        """One representative per coset: vectors supported on the non-pivot columns.

        Row order is lexicographic in the syndrome, so row i has syndrome i.
        """
        free = self.systematic.nonpivots
        check_cap(self.q ** len(free), "coset transversal")
        reps = np.zeros((self.q ** len(free), self.d), dtype=np.int64)
        if free:
            reps[:, list(free)] = all_vectors(self.q, len(free))
        return reps

    def cosets(self) -> list["Coset"]:
        return [Coset(self, ZqVector(self.q, tuple(int(x) for x in r))) for r in self.transversal()]

    def __repr__(self):
        gens = ";".join(",".join(map(str, r)) for r in self.generators)
        return f"Submodule(q={self.q}, d={self.d}, gens=[{gens}])"


@dataclass(frozen=True)
class Coset:
    base: Submodule
    representative: ZqVector

    def elements(self) -> np.ndarray:
        return (self.base.elements() + self.representative.array()[None, :]) % self.base.q

    def __eq__(self, other):
        if not isinstance(other, Coset):
            return NotImplemented
        if other.base is not self.base:
            same = (other.base.q == self.base.q and other.base.d == self.base.d
                    and np.array_equal(np.unique(other.base.elements(), axis=0),
                                       np.unique(self.base.elements(), axis=0)))
            if not same:
                return False
        return self.base.contains(self.representative - other.representative)

    def __hash__(self):
        return hash((self.base.q, self.base.d))


Enumerable = Union[Submodule, Coset]


def _base_and_shift(S: Enumerable) -> tuple[Submodule, np.ndarray]:
    if isinstance(S, Coset):
        return S.base, S.representative.array()
    return S, np.zeros(S.d, dtype=np.int64)


def enumerate_submodule(G: Submodule) -> set[ZqVector]:
    return {ZqVector(G.q, tuple(int(x) for x in row)) for row in G.elements()}


def minimum_distance(G: Submodule) -> int:
    elems = G.elements()
    weights = np.count_nonzero(elems, axis=1)
    nonzero = weights[weights > 0]
    if nonzero.size == 0:
        raise ValueError("the zero module has no minimum distance")
    return int(nonzero.min())


@dataclass(frozen=True)
class WeightEnumerator:
    counts: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.counts) - 1

    @property
    def size(self) -> int:
        return sum(self.counts)

    def evaluate(self, x, y):
        """Homogeneous evaluation sum_w counts[w] x^(d-w) y^w."""
        d = self.d
        return sum(c * x ** (d - w) * y ** w for w, c in enumerate(self.counts) if c)


def weight_enumerator(S: Enumerable) -> WeightEnumerator:
    base, shift = _base_and_shift(S)
    hist = _kernels.coset_weight_histograms(base.elements(), shift[None, :], base.q)[0]
    return WeightEnumerator(tuple(int(c) for c in hist))


def coset_weight_table(G: Submodule) -> tuple[np.ndarray, np.ndarray]:
    """Transversal and the weight histogram of every coset (one row each)."""
    reps = G.transversal()
    return reps, _kernels.coset_weight_histograms(G.elements(), reps, G.q)


def macwilliams_transform(W: WeightEnumerator, size: int, q: int, d: int) -> WeightEnumerator:
    """Weight enumerator of the dual code.

    Expands (1/size) * sum_w counts[w] (x + (q-1) y)^(d-w) (x - y)^w.
    """
    if len(W.counts) != d + 1:
        raise ValueError("enumerator length does not match d")
    if sum(W.counts) != size:
        raise ValueError("size does not match the enumerator total")
    out = []
    for j in range(d + 1):
        total = 0
        for w, c in enumerate(W.counts):
            if not c:
                continue
            # [y^j] (1 + (q-1)y)^(d-w) (1 - y)^w
            coeff = 0
            for h in range(max(0, j - (d - w)), min(w, j) + 1):
                coeff += comb(w, h) * (-1) ** h * comb(d - w, j - h) * (q - 1) ** (j - h)
            total += c * coeff
        if total % size or total < 0:
            raise ValueError(f"transform gives a non-integral or negative count at weight {j}")
        out.append(total // size)
    return WeightEnumerator(tuple(out))


@dataclass(frozen=True)
class WeightClassTriple:
    n0: int
    n1: int
    n2: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n0, self.n1, self.n2)

    def sorted(self) -> tuple[int, int, int]:
        return tuple(sorted(self.as_tuple()))


def weight_class_triple(S: Enumerable) -> WeightClassTriple:
    counts = weight_enumerator(S).counts
    n = [0, 0, 0]
    for w, c in enumerate(counts):
        n[w % 3] += c
    return WeightClassTriple(*n)


def parity_check_matrix(G: Submodule) -> tuple[np.ndarray, tuple[int, ...]]:
    """Parity-check matrix Q (original column order) and the column permutation.

    ``Q[:, perm]`` is the systematic block (I | -R S^-1): the non-pivot
    columns come first, the pivot columns of the generator matrix last.
    Q has d - rank rows and annihilates every element of G.
    """
    form = G.systematic
    q = G.q
    k = len(form.pivots)
    perm = form.nonpivots + form.pivots
    r = G.d - k
    Q = np.zeros((r, G.d), dtype=np.int64)
    if r:
        X = form.basis[:, list(form.nonpivots)] if k else np.zeros((0, r), dtype=np.int64)
        Q[:, list(form.nonpivots)] = np.eye(r, dtype=np.int64)
        if k:
            Q[:, list(form.pivots)] = (-X.T) % q
    return Q, perm


# ---------------------------------------------------------------------------
# text formats


def parse_vector(text: str, q: int) -> ZqVector:
    return ZqVector.parse(text, q)


def parse_generators(text: str, q: int) -> list[ZqVector]:
    """Vectors separated by newlines or semicolons; '#' starts a comment."""
    out = []
    for chunk in text.replace(";", "\n").splitlines():
        chunk = chunk.split("#", 1)[0].strip()
        if chunk:
            out.append(ZqVector.parse(chunk, q))
    if out and len({v.d for v in out}) != 1:
        raise ValueError("generators have different lengths")
    return out


def format_generators(vectors: Iterable[ZqVector]) -> str:
    return "\n".join(str(v) for v in vectors)


# ---------------------------------------------------------------------------
# the binary quadratic-residue code of length 17


def _gf2_poly_mulmod(a: int, b: int, modulus: int, deg: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return out


def quadratic_residue_code(p: int = 17) -> Submodule:
    """Binary cyclic code of prime length p whose generator vanishes on the QR powers.

    Works in GF(2^m), m = order of 2 mod p, which must equal (p-1)/2 so that the
    quadratic residues form a single cyclotomic coset.
    """
    m = 1
    while pow(2, m, p) != 1:
        m += 1
    if m != (p - 1) // 2:
        raise ValueError(f"2 must have order (p-1)/2 modulo {p}")
    modulus = _primitive_gf2_polynomial(m)
    # alpha: an element of multiplicative order p
    g = 2  # the class of x is primitive
    alpha = 1
    for _ in range((2 ** m - 1) // p):
        alpha = _gf2_poly_mulmod(alpha, g, modulus, m)
    residues = sorted({(x * x) % p for x in range(1, p)})
    # product of (X - alpha^r) over the residues, coefficients in GF(2^m)
    poly = [1]
    for r in residues:
        root = 1
        for _ in range(r):
            root = _gf2_poly_mulmod(root, alpha, modulus, m)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] ^= c
            nxt[i] ^= _gf2_poly_mulmod(c, root, modulus, m)
        poly = nxt
    if any(c not in (0, 1) for c in poly):
        raise AssertionError("QR generator polynomial is not defined over GF(2)")
    k = p - (len(poly) - 1)
    rows = np.zeros((k, p), dtype=np.int64)
    for i in range(k):
        rows[i, i:i + len(poly)] = poly
    return Submodule(2, p, rows)


def _primitive_gf2_polynomial(m: int) -> int:
    order = 2 ** m - 1
    factors = prime_factors(order)
    for cand in range(1 << m, 1 << (m + 1)):
        if not cand & 1:
            continue
        # x must have order exactly 2^m - 1 modulo cand (implies irreducibility)
        def xpow(e):
            result, base = 1, 2
            while e:
                if e & 1:
                    result = _gf2_poly_mulmod(result, base, cand, m)
                base = _gf2_poly_mulmod(base, base, cand, m)
                e >>= 1
            return result
        if xpow(order) == 1 and all(xpow(order // f) != 1 for f in factors):
            return cand
    raise AssertionError("no primitive polynomial found")
