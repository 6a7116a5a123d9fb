"""Krawtchouk numbers of the Hamming scheme H(d, q) and the distance-graph families built on them.

All arithmetic is on Python integers: binomials at d = 45 and beyond do not
fit in 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .cyclotomic import Cyclo
from .walktime import WalkTime
from .zq import is_prime


def _binom(n: int, k: int) -> int:
    """Binomial coefficient that is zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _check_index(d: int, r: int, s: int) -> None:
    if d < 0 or not (0 <= r <= d) or not (0 <= s <= d):
        raise ValueError(f"Krawtchouk index out of range: d={d}, r={r}, s={s}")


def _genfun_row(d: int, q: int, s: int) -> list[int]:
    """Coefficients of (1 + (q-1)x)^(d-s) (1-x)^s."""
    a = [comb(d - s, j) * (q - 1) ** j for j in range(d - s + 1)]
    b = [comb(s, j) * (-1) ** j for j in range(s + 1)]
    out = [0] * (d + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def krawtchouk(d: int, q: int, r: int, s: int, method: str = "genfun") -> int:
    """p_r(s) in H(d, q), from the generating function or the closed binomial sum."""
    _check_index(d, r, s)
    if method == "genfun":
        return krawtchouk_table(d, q).values[s][r]
    if method == "closed":
        return sum((-q) ** h * (q - 1) ** (r - h) * _binom(d - h, r - h) * _binom(s, h)
                   for h in range(r + 1))
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class KrawtchoukTable:
    """P[s][r] = p_r(s) for 0 <= r, s <= d."""

    d: int
    q: int
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, idx):
        s, r = idx
        return self.values[s][r]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=object)

    def column(self, r: int) -> list[int]:
        return [row[r] for row in self.values]


@lru_cache(maxsize=256)
def krawtchouk_table(d: int, q: int) -> KrawtchoukTable:
    if d < 0 or q < 2:
        raise ValueError("need d >= 0 and q >= 2")
    return KrawtchoukTable(d, q, tuple(tuple(_genfun_row(d, q, s)) for s in range(d + 1)))


# ---------------------------------------------------------------------------
# identities


@dataclass
class RecurrenceReport:
    d: int
    q: int
    failures: dict[str, list[tuple]] = field(default_factory=dict)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def ev_rec_block(d: int, q: int) -> np.ndarray:
    """Rows 0..d-1, columns 1..d of (I - C) P^(d) with C the cyclic up-shift.

    Property (iii) says this block equals q * P^(d-1).
    """
    P = krawtchouk_table(d, q).as_array()
    n = d + 1
    C = np.zeros((n, n), dtype=object)
    for i in range(n):
        C[i, (i + 1) % n] = 1
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    M = (I - C).dot(P)
    return M[:d, 1:]


def verify_recurrences(d: int, q: int) -> RecurrenceReport:
    rep = RecurrenceReport(d, q)
    P = krawtchouk_table(d, q)
    Pd1 = krawtchouk_table(d + 1, q)

    def record(name, ok, where):
        rep.checked[name] = rep.checked.get(name, 0) + 1
        rep.failures.setdefault(name, [])
        if not ok:
            rep.failures[name].append(where)

    for s in range(d + 1):
        for r in range(d + 1):
            record("closed_sum", krawtchouk(d, q, r, s, "closed") == P[s, r], (r, s))
    for s in range(1, d + 1):
        for r in range(1, d + 1):
            lhs = P[s, r] - P[s - 1, r] + (q - 1) * P[s, r - 1] + P[s - 1, r - 1]
            record("ii", lhs == 0, (r, s))
    for s in range(d + 1):
        for r in range(1, d + 2):
            lhs = Pd1[s, r] - Pd1[s + 1, r]
            record("iii", lhs == q * P[s, r - 1], (r, s))
    if q == 2 and d >= 2:
        for s in range(d - 1):
            for r in range(1, d + 1):
                lhs = P[s, r - 1] - P[s + 2, r - 1]
                rhs = 4 * sum((-2) ** h * _binom(d - 2 - h, r - 2 - h) * _binom(s, h)
                              for h in range(max(r - 1, 0)))
                record("iv", lhs == rhs, (r, s))
    if d >= 1:
        block = ev_rec_block(d, q)
        target = q * krawtchouk_table(d - 1, q).as_array()
        record("ev_rec", bool((block == target).all()), (d,))
    for r in range(d + 1):
        for r2 in range(r + 1, d + 1):
            tot = sum(comb(d, s) * (q - 1) ** s * P[s, r] * P[s, r2] for s in range(d + 1))
            record("orthogonality", tot == 0, (r, r2))
    return rep


# ---------------------------------------------------------------------------
# sufficient conditions


def _sign_match(values, target: int, modulus: int) -> int | None:
    for eps in (1, -1):
        if all((v - eps * target) % modulus == 0 for v in values):
            return eps
    return None


def theta_congruence_condition(theta, q: int, k: int) -> tuple[bool, int | None]:
    """Test theta_s - theta_0 against the scheme congruence for q in {2, 3, 4}.

    On success the graph mixes at 2*pi/3^k (q = 3) or pi/2^k (q = 2, 4).
    ``eps`` is None for q = 4, where the congruence carries no sign.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    theta = [int(x) for x in theta]
    diffs = [(s, th - theta[0]) for s, th in enumerate(theta)]
    if q == 2:
        mod, unit = 2 ** (k + 1), 2 ** (k - 1)
    elif q == 3:
        mod, unit = 3 ** k, 3 ** (k - 1)
    elif q == 4:
        mod, unit = 2 ** (k + 1), 2 ** k
        ok = all((dv - unit * s) % mod == 0 for s, dv in diffs)
        return ok, None
    else:
        raise ValueError("only q in {2, 3, 4} is supported")
    for eps in (1, -1):
        if all((dv - eps * unit * s) % mod == 0 for s, dv in diffs):
            return True, eps
    return False, None


def scheme_mixing_time(q: int, k: int) -> WalkTime:
    """Time attached to level k: 2*pi/3^k for q = 3, pi/2^k for q = 2, 4."""
    if q == 3:
        return WalkTime.rational(1, 3 ** k)
    if q in (2, 4):
        return WalkTime.pi_fraction(1, 2 ** k)
    raise ValueError("only q in {2, 3, 4} is supported")


@dataclass(frozen=True)
class SchemeGraphSpec:
    """Union of distance classes of H(d, q); the identity class is never included."""

    d: int
    q: int
    classes: tuple[int, ...]
    identity_dropped: bool = False

    def coefficient_vector(self) -> list[int]:
        """(a_1, ..., a_d)."""
        return [1 if r in self.classes else 0 for r in range(1, self.d + 1)]

    def eigenvalues(self) -> list[int]:
        P = krawtchouk_table(self.d, self.q)
        return [sum(P[s, r] for r in self.classes) for s in range(self.d + 1)]

    def valency(self) -> int:
        return self.eigenvalues()[0]


def make_scheme_spec(d: int, q: int, classes) -> SchemeGraphSpec:
    """Normalize a class list: drop class 0 (a global phase) and record that it was dropped."""
    cls = sorted(set(int(r) for r in classes))
    if any(r < 0 or r > d for r in cls):
        raise ValueError(f"classes must lie in [0, {d}]")
    dropped = 0 in cls
    return SchemeGraphSpec(d, q, tuple(r for r in cls if r != 0), dropped)


def scheme_graph_condition(spec: SchemeGraphSpec, k: int) -> tuple[bool, int | None]:
    """Test P^(d-1) (a_1..a_d) against the level-k congruence.

    q = 2: eps 2^(k-2) mod 2^k; q = 3: eps 3^(k-2) mod 3^(k-1);
    q = 4: 2^(k-2) mod 2^(k-1). Success means mixing at ``scheme_mixing_time(q, k)``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    d, q = spec.d, spec.q
    if d < 1:
        return False, None
    P = krawtchouk_table(d - 1, q)
    a = spec.coefficient_vector()
    v = [sum(P[s, r] * a[r] for r in range(d)) for s in range(d)]
    if q == 2:
        eps = _sign_match(v, 2 ** (k - 2), 2 ** k)
    elif q == 3:
        eps = _sign_match(v, 3 ** (k - 2), 3 ** (k - 1))
    elif q == 4:
        ok = all((x - 2 ** (k - 2)) % 2 ** (k - 1) == 0 for x in v)
        return ok, None
    else:
        raise ValueError("only q in {2, 3, 4} is supported")
    return eps is not None, eps


def main3_condition(d: int, r: int, k: int) -> tuple[bool, int | None]:
    if d < 1 or r < 1 or k < 2:
        raise ValueError("need d >= 1, r >= 1, k >= 2")
    lead = 2 ** (r - 1) * _binom(d - 1, r - 1)
    eps = _sign_match([lead], 3 ** (k - 2), 3 ** (k - 1))
    if eps is None:
        return False, None
    for h in range(1, k - 1):
        if _binom(d - h - 1, r - h - 1) % 3 ** (k - h - 1):
            return False, None
    return True, eps


def main4_condition(d: int, r: int, k: int) -> bool:
    if d < 1 or r < 1 or k < 2:
        raise ValueError("need d >= 1, r >= 1, k >= 2")
    lead = 3 ** (r - 1) * _binom(d - 1, r - 1)
    if (lead - 2 ** (k - 2)) % 2 ** (k - 1):
        return False
    for h in range(1, k // 2):
        if _binom(d - h - 1, r - h - 1) % 2 ** (k - 2 * h - 1):
            return False
    return True


def kummer_carries(N: int, M: int, p: int) -> int:
    """Carries when adding N - M and M in base p."""
    if not (0 <= M <= N):
        raise ValueError("need 0 <= M <= N")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a, b, carry, count = N - M, M, 0, 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        count += carry
        a //= p
        b //= p
    return count


def p_adic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class FamilyInstance:
    q: int
    k: int
    d: int
    r: int
    time: WalkTime
    condition: bool
    epsilon: int | None


def enumerate_families(k_max: int, q: int) -> list[FamilyInstance]:
    """Distance-graph families: H(2*3^k - 9, 3) with r in {3^k-1, 3^k-4, 3^k-7};
    H(2^(k-1) - 1, 4) with r = 2^(k-2); H(2^k - 2, 4) with r in {2^(k-1) - 1, 2^(k-1)}."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    out = []
    for k in range(2, k_max + 1):
        t = scheme_mixing_time(q, k)
        if q == 3:
            d = 2 * 3 ** k - 9
            for r in (3 ** k - 1, 3 ** k - 4, 3 ** k - 7):
                ok, eps = main3_condition(d, r, k)
                out.append(FamilyInstance(q, k, d, r, t, ok, eps))
        elif q == 4:
            pairs = [(2 ** (k - 1) - 1, 2 ** (k - 2))]
            pairs += [(2 ** k - 2, 2 ** (k - 1) - 1), (2 ** k - 2, 2 ** (k - 1))]
            for d, r in pairs:
                out.append(FamilyInstance(q, k, d, r, t, main4_condition(d, r, k), None))
        else:
            raise ValueError("families exist for q in {3, 4}")
    return out


# ---------------------------------------------------------------------------
# unions of classes 3l + i


@dataclass(frozen=True)
class UnionClassGraph:
    k: int
    i: int
    spec: SchemeGraphSpec
    eigenvalues: tuple[int, ...]


def _filter_coefficients(f_values, i: int) -> int:
    """Sum of coefficients at exponents = i (mod 3) from f(1), f(w), f(w^2)."""
    total = f_values[0]
    for j in (1, 2):
        total = total + Cyclo.root(3, -i * j) * f_values[j]
    r = (total * Fraction(1, 3)).as_rational()
    if r is None or r.denominator != 1:
        raise ArithmeticError("roots-of-unity filter did not return an integer")
    return int(r)


def _f_at_roots(d: int, s: int) -> list:
    """(1 + 2x)^(d-s) (1 - x)^s at x = 1, w, w^2 (w a primitive cube root of unity)."""
    vals = [3 ** d if s == 0 else 0]
    for j in (1, 2):
        w = Cyclo.root(3, j)
        vals.append((1 + 2 * w) ** (d - s) * (1 - w) ** s)
    return vals


def filtered_coefficient_sums(d: int, i: int) -> list[int]:
    """For s = 0..d, the sum of [x^r] (1+2x)^(d-s)(1-x)^s over r = i (mod 3)."""
    return [_filter_coefficients(_f_at_roots(d, s), i) for s in range(d + 1)]


def union_class_graph(k: int, i: int, d: int | None = None) -> UnionClassGraph:
    """Classes {3l + i} in H(d, 3), d = 2k+1 by default; class 0 is dropped."""
    if k < 1 or i not in (0, 1, 2):
        raise ValueError("need k >= 1 and i in {0, 1, 2}")
    d = 2 * k + 1 if d is None else d
    spec = make_scheme_spec(d, 3, [r for r in range(i, d + 1, 3)])
    # eigenvalues by the roots-of-unity filter; class 0 contributes p_0(s) = 1
    theta = filtered_coefficient_sums(d, i)
    if spec.identity_dropped:
        theta = [x - 1 for x in theta]
    return UnionClassGraph(k, i, spec, tuple(theta))
