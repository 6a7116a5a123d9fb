"""Mixing times of linear Cayley graphs over Z_q^d through the polynomials F_g.

With x = exp(iqt), the graph is flat at t iff x is a common zero of

    F_g(x) = sum_{a,b : <a-b, g> = 0} x^((theta_a - theta_b)/q) - q^d

over all g (g = 0 included; it encodes the diagonal entry).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd

import numpy as np

from . import _kernels
from .cayley import CayleyGraph, multiples_connection_set
from .polynomials import (
    LaurentPolynomial,
    add,
    cyclotomic_polynomial,
    degree,
    euler_phi,
    gcd_poly,
    multiplicity,
    palindromic_to_z,
    power,
    primitive_part,
    real_roots,
    scale,
    trim,
)
from .walktime import WalkTime, as_time
from .zq import ZqVector, all_vectors, check_cap


def _require_linear(X: CayleyGraph) -> np.ndarray:
    if not X.linear:
        raise ValueError("F_g polynomials are defined for linear Cayley graphs")
    theta = X.integer_eigenvalues
    if theta is None:
        raise ValueError("graph has irrational eigenvalues")
    if np.any((theta - theta[0]) % X.q):
        raise ValueError("eigenvalue differences are not divisible by q")
    return theta


def build_Fg(X: CayleyGraph, g) -> LaurentPolynomial:
    """F_g, aggregated through (exponent, <a,g> residue) histograms."""
    theta = _require_linear(X)
    check_cap(X.n, "F_g construction")
    gv = g.array() if isinstance(g, ZqVector) else np.asarray(g, dtype=np.int64) % X.q
    u = (theta - theta.min()) // X.q
    width = int(u.max()) + 1
    residues = (X.vertices() @ gv) % X.q
    hist = _kernels.residue_histograms(u, residues, X.q, width)
    counts = _kernels.pair_difference_counts(hist)
    coeffs = {j - (width - 1): int(c) for j, c in enumerate(counts) if c}
    coeffs[0] = coeffs.get(0, 0) - X.n
    return LaurentPolynomial(coeffs)


def g_transversal(q: int, d: int) -> list[ZqVector]:
    """Zero plus one representative of each nonzero vector up to unit scaling."""
    units = [u for u in range(1, q) if gcd(u, q) == 1]
    seen: set[tuple] = set()
    out = [ZqVector.zero(q, d)]
    for row in all_vectors(q, d)[1:]:
        key = tuple(int(x) for x in row)
        if key in seen:
            continue
        for u in units:
            seen.add(tuple((u * x) % q for x in key))
        out.append(ZqVector(q, key))
    return out


def mixing_time_gcd(X: CayleyGraph) -> LaurentPolynomial:
    """Primitive gcd of the normalized nonzero F_g (zero polynomial if every F_g vanishes)."""
    acc: list = []
    for g in g_transversal(X.q, X.d):
        F = build_Fg(X, g)
        if F.is_zero():
            continue
        acc = primitive_part(F.normalized()) if not acc else gcd_poly(acc, F.normalized())
        if degree(acc) == 0:
            break
    if not acc:
        return LaurentPolynomial()
    acc = primitive_part(acc)
    return LaurentPolynomial.from_dense(acc, -(degree(acc) // 2))


def cyclotomic_divisibility(P, N: int) -> bool:
    if N < 1:
        raise ValueError("N must be positive")
    poly = P.normalized() if isinstance(P, LaurentPolynomial) else trim(P)
    return multiplicity(cyclotomic_polynomial(N), poly, limit=1) >= 1


@dataclass
class MixingTimeReport:
    """Times t = 2*pi*m/(qN), gcd(m, N) = 1, for each listed N."""

    q: int
    cyclotomic_times: list[tuple[int, int]] = field(default_factory=list)
    real_roots_z: list[float] = field(default_factory=list)
    gcd_degree: int = 0
    every_time: bool = False

    def times(self, N: int) -> list[WalkTime]:
        return [WalkTime.rational(m, self.q * N) for m in range(1, N + 1) if gcd(m, N) == 1]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "every_time": self.every_time,
            "gcd_degree": self.gcd_degree,
            "cyclotomic_times": [
                {"N": N, "multiplicity": m, "times": [str(t) for t in self.times(N)]}
                for N, m in self.cyclotomic_times
            ],
            "real_roots_z": self.real_roots_z,
        }


def mixing_time_report(X: CayleyGraph, scan_N: int = 50) -> MixingTimeReport:
    G = mixing_time_gcd(X)
    rep = MixingTimeReport(X.q)
    if G.is_zero():
        rep.every_time = True
        return rep
    poly = G.normalized()
    rep.gcd_degree = degree(poly)
    for N in range(1, scan_N + 1):
        m = multiplicity(cyclotomic_polynomial(N), poly)
        if m:
            rep.cyclotomic_times.append((N, m))
    R = palindromic_to_z(poly)
    if R is not None and degree(R) > 0:
        rep.real_roots_z = real_roots(R, Fraction(-2), Fraction(2))
    return rep


# ---------------------------------------------------------------------------
# totient bound


def totient_bound(q: int, n: int) -> Fraction:
    """(q-1)/2 * (phi(n) + q - 1): the claimed lower bound on |C| for mixing at 2*pi/(qn)."""
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    return Fraction((q - 1) * (euler_phi(n) + q - 1), 2)


def totient_bound_ceiling(q: int, n: int) -> int:
    return ceil(totient_bound(q, n))


def time_index(t, q: int) -> int | None:
    """n with t = 2*pi/(qn), or None when t has another form."""
    t = as_time(t)
    if not t.is_rational or t.num != 1 or t.den % q:
        return None
    return t.den // q


# ---------------------------------------------------------------------------
# folded Hamming graphs


def folded_graph(q: int, d: int) -> CayleyGraph:
    """X(Z_q^d, nonzero multiples of e_1..e_d and 1), i.e. H(d+1, q)/<1>."""
    cols = [ZqVector.unit(q, d, j).coords for j in range(d)] + [ZqVector.ones(q, d).coords]
    return CayleyGraph(multiples_connection_set(q, cols))


def folded_polynomial(q: int, d: int) -> list[Fraction]:
    """F_1 in z = x + 1/x:
    (1/q)((q-1)z + (q-1)^2 + 1)^d + ((q-1)/q)(2 - z)^d - q^d."""
    if q < 2 or d < 1:
        raise ValueError("need q >= 2 and d >= 1")
    a = power([(q - 1) ** 2 + 1, q - 1], d)
    b = scale(power([2, -1], d), q - 1)
    total = add(a, b)
    out = [Fraction(c, q) for c in total]
    out[0] -= q ** d
    return trim(out)


def folded_roots(q: int, d: int) -> list[float] | None:
    """Roots in [-2, 2]; None when the polynomial vanishes (d = 1, where 1 = e_1)."""
    F = folded_polynomial(q, d)
    if not F:
        return None
    return real_roots(F, Fraction(-2), Fraction(2))


@dataclass(frozen=True)
class FoldedVerdict:
    q: int
    d: int
    family: str

    @property
    def empty(self) -> bool:
        return self.family == "empty"

    def contains(self, t) -> bool:
        t = as_time(t)
        if self.empty or not t.is_rational:
            return False
        if self.family == "k*pi/4, k odd":
            k = Fraction(8 * t.num, t.den)
            return k.denominator == 1 and k.numerator % 2 == 1
        k = Fraction(9 * t.num, t.den)
        return k.denominator == 1 and k.numerator % 3 != 0

    def representatives(self, count: int = 4) -> list[WalkTime]:
        if self.empty:
            return []
        if self.family == "k*pi/4, k odd":
            return [WalkTime.pi_fraction(k, 4) for k in range(1, 2 * count, 2)]
        ks = [k for k in range(1, 3 * count) if k % 3][:count]
        return [WalkTime.rational(k, 9) for k in ks]


def folded_verdict(q: int, d: int, confirm: bool = True) -> FoldedVerdict:
    """Times at which X(Z_q^d, multiples of e_j and 1) is flat.

    The z-polynomial allows only 2 cos(qt) = 2 - q, so q >= 5 gives nothing.
    Whether the graph is flat at those times at all is settled exactly
    at tau_q when ``confirm`` is set.
    """
    from .walk import is_uniform_mixing

    if q >= 5 or q < 2:
        return FoldedVerdict(q, d, "empty")
    family = "2k*pi/9, 3 does not divide k" if q == 3 else "k*pi/4, k odd"
    verdict = FoldedVerdict(q, d, family)
    if confirm:
        t = verdict.representatives(1)[0]
        if not is_uniform_mixing(folded_graph(q, d), t, method="exact").flat:
            return FoldedVerdict(q, d, "empty")
    return verdict
