"""Coset weight-distribution criteria for uniform mixing on quotients of H(d, q)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclotomic import Cyclo, eisenstein_norm, gaussian_norm
from .walktime import WalkTime, as_time
from .zq import (
    Coset,
    Submodule,
    ZqVector,
    coset_weight_table,
    hamming_weight,
    inner_product,
    macwilliams_transform,
    minimum_distance,
    weight_class_triple,
    weight_enumerator,
)

TAU = {2: WalkTime.pi_fraction(1, 4), 3: WalkTime.rational(1, 9), 4: WalkTime.pi_fraction(1, 4)}


def tau(q: int) -> WalkTime:
    """Earliest mixing time of K_q for q in {2, 3, 4}."""
    try:
        return TAU[q]
    except KeyError:
        raise ValueError("tau_q is defined for q in {2, 3, 4}") from None


# ---------------------------------------------------------------------------
# dual enumerator


def dual_condition(G: Submodule, t) -> bool:
    """|W_{G-perp}(e^{qit}, 1)|^2 == |G-perp|, necessary for mixing at t."""
    t = as_time(t)
    q, d = G.q, G.d
    W = weight_enumerator(G)
    dual_size = q ** d // W.size
    Wd = macwilliams_transform(W, W.size, q, d)
    if t.is_rational:
        x = Cyclo.root(t.den, q * t.num)
        val = Wd.evaluate(x, 1)
        if not isinstance(val, Cyclo):
            val = Cyclo.integer(t.den, int(val))
        return val.abs2().as_rational() == dual_size
    val = Wd.evaluate(np.exp(1j * q * float(t)), 1)
    return abs(abs(val) ** 2 - dual_size) <= 1e-9 * dual_size


# ---------------------------------------------------------------------------
# per-coset conditions at tau_q


def coset_value_norm(counts, q: int) -> int:
    """|W(z, 1)|^2 with z = i (q=2), e^{2 pi i/3} (q=3), -1 (q=4), as an exact integer."""
    d = len(counts) - 1
    if q == 2:
        parts = [0, 0, 0, 0]
        for w, c in enumerate(counts):
            parts[(d - w) % 4] += int(c)
        return gaussian_norm(parts[0] - parts[2], parts[1] - parts[3])
    if q == 3:
        a = b = 0
        for w, c in enumerate(counts):
            e = (d - w) % 3
            # omega^2 = -1 - omega
            if e == 0:
                a += int(c)
            elif e == 1:
                b += int(c)
            else:
                a -= int(c)
                b -= int(c)
        return eisenstein_norm(a, b)
    if q == 4:
        v = sum(int(c) * (-1) ** (d - w) for w, c in enumerate(counts))
        return v * v
    raise ValueError("coset conditions exist for q in {2, 3, 4}")


@dataclass
class CosetEntry:
    representative: tuple[int, ...]
    norm: int
    ok: bool
    structure: tuple[int, int, int] | None = None


def coset_report(G: Submodule) -> list[CosetEntry]:
    reps, hists = coset_weight_table(G)
    size = G.size
    out = []
    for rep, h in zip(reps, hists):
        norm = coset_value_norm(h, G.q)
        structure = _triple_from_counts(h) if G.q == 3 else None
        out.append(CosetEntry(tuple(int(x) for x in rep), norm, norm == size, structure))
    return out


def coset_condition(G: Submodule, q: int | None = None) -> bool:
    """Every coset satisfies |W_v(z, 1)|^2 = |G|; equivalent to mixing at tau_q."""
    if q is not None and q != G.q:
        raise ValueError("q does not match the submodule")
    if G.q not in (2, 3, 4):
        raise ValueError("coset conditions exist for q in {2, 3, 4}")
    _, hists = coset_weight_table(G)
    size = G.size
    return all(coset_value_norm(h, G.q) == size for h in hists)


# ---------------------------------------------------------------------------
# q = 3 weight classes


def _triple_from_counts(counts) -> tuple[int, int, int]:
    n = [0, 0, 0]
    for w, c in enumerate(counts):
        n[w % 3] += int(c)
    return tuple(sorted(n))


def q3_target(s: int) -> int:
    return 3 ** (2 * s - 1) - 3 ** (s - 1)


def q3_identity(triple, s: int) -> bool:
    n0, n1, n2 = (int(x) for x in triple)
    if s < 1:
        raise ValueError("rank must be at least one")
    return n0 * n1 + n0 * n2 + n1 * n2 == q3_target(s)


def q3_weight_class_check(S: Submodule | Coset, s: int | None = None) -> bool:
    base = S.base if isinstance(S, Coset) else S
    if base.q != 3:
        raise ValueError("the weight-class identity is a q = 3 condition")
    s = base.rank if s is None else s
    return q3_identity(weight_class_triple(S).as_tuple(), s)


def weight_structure(S: Submodule | Coset) -> tuple[int, int, int]:
    base = S.base if isinstance(S, Coset) else S
    if base.q != 3:
        raise ValueError("weight structures are defined for q = 3")
    return weight_class_triple(S).sorted()


def coset_structures(G: Submodule) -> list[tuple[int, int, int]]:
    _, hists = coset_weight_table(G)
    return [_triple_from_counts(h) for h in hists]


@dataclass
class WeightChangeProfile:
    """``m[j]``: elements of weight class j whose weight change is 1 mod 3;
    ``m_two[j]``: the same for change 2."""

    m: tuple[int, int, int]
    m_two: tuple[int, int, int]


def weight_change_profile(G: Submodule, c: ZqVector) -> WeightChangeProfile:
    """Weight changes of My with respect to c, taken modulo 3 after removing wt(c).

    Over Z_3, wt(My + c) = wt(My) + wt(c) + 2 c^T M y, so the normalized
    change is 2 c^T M y; it vanishes identically when c^T M = 0.
    """
    if G.q != 3:
        raise ValueError("weight changes are defined for q = 3")
    if c.q != 3 or c.d != G.d:
        raise ValueError("c must lie in the ambient Z_3^d")
    elems = G.elements()
    cvec = c.array()
    change = (2 * (elems @ cvec)) % 3
    cls = np.count_nonzero(elems, axis=1) % 3
    m = tuple(int(np.count_nonzero((cls == j) & (change == 1))) for j in range(3))
    m2 = tuple(int(np.count_nonzero((cls == j) & (change == 2))) for j in range(3))
    return WeightChangeProfile(m, m2)


def weight_change_identity(G: Submodule, profile: WeightChangeProfile) -> bool:
    """Second weight-change identity (zero profiles pass trivially)."""
    m = profile.m
    if not any(m):
        return True
    s = G.rank
    n = weight_class_triple(G).as_tuple()
    lhs = sum(mj * nj for mj, nj in zip(m, n)) + 3 * (m[0] * m[1] + m[1] * m[2] + m[0] * m[2])
    return sum(m) == 3 ** (s - 1) and lhs == 3 ** (2 * s - 1) - 3 ** (2 * s - 2)


# ---------------------------------------------------------------------------
# closed-form verdicts


def unit_count(a: ZqVector) -> int:
    """Number of coordinates that are units of Z_q."""
    from math import gcd

    return sum(1 for x in a.coords if x and gcd(x, a.q) == 1)


def one_generator_verdict(a: ZqVector, q: int | None = None, rule: str = "units") -> bool:
    """Whether H(d, q)/<a> mixes at tau_q.

    q = 2: wt(a) odd; q = 3: wt(a) not divisible by 3; q = 4: the number of
    odd coordinates of a is odd (``rule="weight"`` uses the parity of wt(a)
    instead, which agrees whenever a has no coordinate equal to 2).
    """
    q = a.q if q is None else q
    if q != a.q:
        raise ValueError("q does not match the vector")
    w = hamming_weight(a)
    if w < 3:
        raise ValueError("generator weight must be at least three")
    if q == 2:
        return w % 2 == 1
    if q == 3:
        return w % 3 != 0
    if q == 4:
        G = Submodule(4, a.d, [a.coords])
        if minimum_distance(G) < 3:
            raise ValueError("<a> has minimum distance below three")
        if rule == "weight":
            return w % 2 == 1
        if rule != "units":
            raise ValueError(f"unknown rule {rule!r}")
        return unit_count(a) % 2 == 1
    raise ValueError("one-generator verdicts exist for q in {2, 3, 4}")


def two_generator_verdict(a: ZqVector, b: ZqVector) -> bool:
    if a.q != 3 or b.q != 3:
        raise ValueError("the two-generator criterion is for q = 3")
    G = Submodule(3, a.d, [a.coords, b.coords])
    if G.rank != 2:
        raise ValueError("generators must span a rank-2 submodule")
    if minimum_distance(G) < 3:
        raise ValueError("<a, b> has minimum distance below three")
    wa, wb = hamming_weight(a) % 3, hamming_weight(b) % 3
    ab = inner_product(a, b) % 3
    if ab == 0:
        return wa != 0 and wb != 0
    return wa != wb or wa == 0


# ---------------------------------------------------------------------------
# open question: is the submodule's own distribution enough?


@dataclass
class OwnDistributionReport:
    checked: int = 0
    own_pass: int = 0
    counterexamples: list[Submodule] = field(default_factory=list)

    @property
    def suffices(self) -> bool:
        return not self.counterexamples


def own_distribution_scan(submodules) -> OwnDistributionReport:
    """Look for G whose own enumerator passes the tau_q test while some coset fails."""
    rep = OwnDistributionReport()
    for G in submodules:
        rep.checked += 1
        own = coset_value_norm(weight_enumerator(G).counts, G.q) == G.size
        if not own:
            continue
        rep.own_pass += 1
        if not coset_condition(G):
            rep.counterexamples.append(G)
    return rep


def mixing_probability_target(G: Submodule) -> Fraction:
    """1 / (number of cosets)."""
    return Fraction(G.size, G.q ** G.d)
