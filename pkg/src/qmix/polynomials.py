"""Exact univariate polynomial arithmetic over Z and Q.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``). Coefficients are Python ints
or ``fractions.Fraction``; nothing here touches floating point except the
final bisection step of :func:`real_roots`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

Poly = list


def trim(p: Iterable) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(p) - 1 if p else -1


def add(p: Sequence, r: Sequence) -> Poly:
    n = max(len(p), len(r))
    return trim([(p[i] if i < len(p) else 0) + (r[i] if i < len(r) else 0) for i in range(n)])


def sub(p: Sequence, r: Sequence) -> Poly:
    return add(p, [-c for c in r])


def scale(p: Sequence, c) -> Poly:
    return trim([c * x for x in p])


def mul(p: Sequence, r: Sequence) -> Poly:
    if not p or not r:
        return []
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(r):
            if b:
                out[i + j] += a * b
    return trim(out)


def power(p: Sequence, n: int) -> Poly:
    result: Poly = [1]
    base = list(p)
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_poly(p: Sequence, r: Sequence) -> tuple[Poly, Poly]:
    """Quotient and remainder over Q (exact over Z when r is monic up to sign)."""
    r = trim(r)
    if not r:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(trim(p))
    lead = r[-1]
    dr = len(r) - 1
    if len(p) - 1 < dr:
        return [], p
    quot = [0] * (len(p) - dr)
    for k in range(len(p) - 1 - dr, -1, -1):
        c = p[k + dr]
        if c == 0:
            continue
        if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
            f = c // lead
        else:
            f = Fraction(c, 1) / lead
        quot[k] = f
        for j, b in enumerate(r):
            p[k + j] -= f * b
    return trim(quot), trim(p[:dr])


def content(p: Sequence) -> int:
    g = 0
    for c in p:
        g = gcd(g, int(c))
    return g


def primitive_part(p: Sequence) -> Poly:
    """Integer primitive part with positive leading coefficient."""
    p = trim(p)
    if not p:
        return []
    if any(isinstance(c, Fraction) for c in p):
        den = 1
        for c in p:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        p = [int(Fraction(c) * den) for c in p]
    g = content(p)
    sign = -1 if p[-1] < 0 else 1
    return [sign * (int(c) // g) for c in p]


def pseudo_remainder(p: Sequence, r: Sequence) -> Poly:
    p = list(trim(p))
    r = trim(r)
    dr = len(r) - 1
    lead = r[-1]
    while p and len(p) - 1 >= dr:
        shift = len(p) - 1 - dr
        c = p[-1]
        p = [lead * x for x in p]
        for j, b in enumerate(r):
            p[shift + j] -= c * b
        p = trim(p)
    return p


def gcd_poly(p: Sequence, r: Sequence) -> Poly:
    """Primitive gcd over Q, computed with a primitive pseudo-remainder sequence."""
    a = primitive_part(p)
    b = primitive_part(r)
    if not a:
        return b
    if not b:
        return a
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        rem = pseudo_remainder(a, b)
        a, b = b, primitive_part(rem)
    return primitive_part(a)


def divides(r: Sequence, p: Sequence) -> bool:
    if not trim(p):
        return True
    _, rem = divmod_poly(p, r)
    return not rem


def multiplicity(r: Sequence, p: Sequence, limit: int = 64) -> int:
    """Largest m with r^m | p (capped at ``limit``; the zero polynomial returns limit)."""
    p = trim(p)
    m = 0
    while m < limit:
        if not p:
            return limit
        q_, rem = divmod_poly(p, r)
        if rem:
            break
        p = q_
        m += 1
    return m


def squarefree_part(p: Sequence) -> Poly:
    p = primitive_part(p)
    if degree(p) <= 0:
        return p
    g = gcd_poly(p, derivative(p))
    quot, rem = divmod_poly(p, g)
    assert not rem
    return primitive_part(quot)


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple:
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p: Poly = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            p, rem = divmod_poly(p, _cyclotomic(k))
            assert not rem
    return tuple(int(c) for c in p)


def cyclotomic_polynomial(n: int) -> Poly:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    return list(_cyclotomic(n))


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# real roots


def _sturm_sequence(p: Sequence) -> list[Poly]:
    seq = [[Fraction(c) for c in p], [Fraction(c) for c in derivative(p)]]
    while degree(seq[-1]) > 0:
        _, rem = divmod_poly(seq[-2], seq[-1])
        if not rem:
            break
        # normalise to keep rationals small; only signs matter
        lead = abs(rem[-1])
        seq.append([-c / lead for c in rem])
    return seq


def _sign_changes(seq, x) -> int:
    signs = []
    for s in seq:
        v = evaluate(s, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots(p: Sequence, lo: Fraction, hi: Fraction, width: float = 1e-12) -> list[float]:
    """Distinct real roots of p in the closed interval [lo, hi].

    Exact rational roots at the interval ends and at small-denominator
    points are detected exactly; the rest are isolated with a Sturm
    sequence and refined by bisection to ``width``.
    """
    p = squarefree_part(p)
    if degree(p) <= 0:
        return []
    lo, hi = Fraction(lo), Fraction(hi)
    found: list[Fraction] = []
    rest = [Fraction(c) for c in p]
    for den in range(1, 13):
        start = int(lo * den) - 1
        stop = int(hi * den) + 1
        for num in range(start, stop + 1):
            x = Fraction(num, den)
            if lo <= x <= hi and x not in found and evaluate(rest, x) == 0:
                found.append(x)
                rest, rem = divmod_poly(rest, [-x, 1])
                assert not rem
    roots = [float(x) for x in found]
    if degree(rest) <= 0:
        return sorted(roots)
    seq = _sturm_sequence(rest)
    # Sturm counts roots in (a, b]; left ends are never roots after deflation
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _sign_changes(seq, a) - _sign_changes(seq, b)
        if n == 0:
            continue
        if n == 1:
            if evaluate(rest, b) == 0:
                roots.append(float(b))
                continue
            fa = evaluate(rest, a)
            x_lo, x_hi = a, b
            while x_hi - x_lo > width:
                mid = (x_lo + x_hi) / 2
                fm = evaluate(rest, mid)
                if fm == 0:
                    x_lo = x_hi = mid
                    break
                if (fm > 0) == (fa > 0):
                    x_lo = mid
                else:
                    x_hi = mid
            roots.append(float((x_lo + x_hi) / 2))
            continue
        mid = a + (b - a) * Fraction(499, 997)
        while evaluate(rest, mid) == 0:
            mid = (mid + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPolynomial:
    """Integer polynomial in x and 1/x, stored sparsely as {exponent: coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v != 0}

    @classmethod
    def from_dense(cls, values: Sequence[int], low: int) -> "LaurentPolynomial":
        return cls({low + i: int(c) for i, c in enumerate(values) if c})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def low(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    @property
    def high(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def is_palindromic(self) -> bool:
        return all(self.coeffs.get(-k) == v for k, v in self.coeffs.items())

    def normalized(self) -> Poly:
        """Ordinary polynomial obtained by multiplying through by x^(-low)."""
        if not self.coeffs:
            return []
        low = self.low
        out = [0] * (self.high - low + 1)
        for k, v in self.coeffs.items():
            out[k - low] = v
        return out

    def __call__(self, x):
        return sum(v * x ** k for k, v in self.coeffs.items())

    def __sub__(self, other):
        other = other if isinstance(other, LaurentPolynomial) else LaurentPolynomial({0: other})
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return LaurentPolynomial(out)

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"{v}*x^{k}" for k, v in sorted(self.coeffs.items()))
        return f"LaurentPolynomial({terms or '0'})"


def palindromic_to_z(p: Sequence) -> Poly | None:
    """Write a palindromic polynomial of even degree 2D as x^D * R(x + 1/x).

    Returns R (integer coefficients), or None when p is not palindromic of
    even degree.
    """
    p = trim(p)
    if not p:
        return []
    n = len(p) - 1
    if n % 2 or any(p[i] != p[n - i] for i in range(n + 1)):
        return None
    D = n // 2
    # c_k multiplies (x^k + x^-k) for k >= 1, c_0 is the centre
    c = [p[D + k] for k in range(D + 1)]
    # V_k(z) = x^k + x^-k as a polynomial in z
    V: list[Poly] = [[2], [0, 1]]
    for k in range(2, D + 1):
        V.append(sub(mul([0, 1], V[k - 1]), V[k - 2]))
    out: Poly = [c[0]]
    for k in range(1, D + 1):
        out = add(out, scale(V[k], c[k]))
    return out
