"""Exact arithmetic in the cyclotomic field Q(zeta_N).

An element is stored as an integer coefficient vector of length N in the
basis 1, z, ..., z^(N-1) (z = exp(2*pi*i/N)) together with a positive
integer denominator. The representation modulo ``x^N - 1`` is not unique;
:meth:`Cyclo.reduced` reduces modulo the N-th cyclotomic polynomial to get
the canonical form used for equality tests.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .polynomials import cyclotomic_polynomial, euler_phi


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the coefficients of x^j reduced modulo Phi_n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    for j in range(n):
        if j < deg:
            row = [0] * deg
            row[j] = 1
        else:
            # x * previous row, then eliminate x^deg with the monic Phi_n
            prev = rows[-1]
            row = [0] + list(prev[:-1])
            top = prev[-1]
            if top:
                for i in range(deg):
                    row[i] -= top * phi[i]
        rows.append(tuple(row))
    return tuple(rows)


def reduction_matrix(n: int) -> np.ndarray:
    """Integer matrix R (n x phi(n)) with reduced(v) = v @ R."""
    return np.array(reduction_rows(n), dtype=np.int64).reshape(n, euler_phi(n))


def reduce_coeffs(coeffs, n: int) -> tuple[int, ...]:
    rows = reduction_rows(n)
    deg = euler_phi(n)
    out = [0] * deg
    for j, c in enumerate(coeffs):
        if c:
            row = rows[j % n]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class Cyclo:
    """Element ``(sum_j coeffs[j] * z^j) / den`` of Q(zeta_n)."""

    __slots__ = ("n", "coeffs", "den")

    def __init__(self, n: int, coeffs=None, den: int = 1):
        if n < 1:
            raise ValueError("order must be positive")
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.n = int(n)
        c = [0] * self.n
        if coeffs is not None:
            for j, v in enumerate(coeffs):
                if v:
                    c[j % self.n] += int(v)
        self.coeffs = c
        self.den = int(den)

    # constructors

    @classmethod
    def integer(cls, n: int, value: int) -> "Cyclo":
        return cls(n, [value])

    @classmethod
    def root(cls, n: int, k: int, coefficient: int = 1) -> "Cyclo":
        """``coefficient * zeta_n^k``."""
        c = [0] * n
        c[k % n] = coefficient
        return cls(n, c)

    def lift(self, m: int) -> "Cyclo":
        """Same number viewed inside Q(zeta_m); requires n | m."""
        if m % self.n:
            raise ValueError(f"cannot embed order {self.n} into order {m}")
        step = m // self.n
        c = [0] * m
        for j, v in enumerate(self.coeffs):
            c[j * step] = v
        return Cyclo(m, c, self.den)

    def _common(self, other):
        if isinstance(other, int):
            other = Cyclo.integer(self.n, other)
        if isinstance(other, Fraction):
            other = Cyclo(self.n, [other.numerator], other.denominator)
        if other.n != self.n:
            m = lcm(self.n, other.n)
            return self.lift(m), other.lift(m)
        return self, other

    # arithmetic

    def __add__(self, other):
        a, b = self._common(other)
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return Cyclo(a.n, [x * fa + y * fb for x, y in zip(a.coeffs, b.coeffs)], den)._normalize()

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-x for x in self.coeffs], self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclo) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclo(self.n, [x * f.numerator for x in self.coeffs], self.den * f.denominator)._normalize()
        a, b = self._common(other)
        n = a.n
        out = [0] * n
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bnz:
                    out[(i + j) % n] += x * y
        return Cyclo(n, out, a.den * b.den)._normalize()

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclo.integer(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "Cyclo":
        n = self.n
        out = [0] * n
        for j, v in enumerate(self.coeffs):
            out[(-j) % n] = v
        return Cyclo(n, out, self.den)

    def abs2(self) -> "Cyclo":
        return self * self.conjugate()

    def _normalize(self) -> "Cyclo":
        g = self.den
        for v in self.coeffs:
            if g == 1:
                break
            g = gcd(g, v)
        if g > 1:
            self.coeffs = [v // g for v in self.coeffs]
            self.den //= g
        return self

    # comparison and conversion

    def reduced(self) -> tuple[tuple[int, ...], int]:
        """Canonical (coefficients mod Phi_n, denominator) pair."""
        red = reduce_coeffs(self.coeffs, self.n)
        g = self.den
        for v in red:
            g = gcd(g, v)
        g = g or 1
        return tuple(v // g for v in red), self.den // g

    def is_zero(self) -> bool:
        return not any(self.reduced()[0])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.reduced()))

    def as_rational(self) -> Fraction | None:
        """The value as a rational number, or None if it is irrational."""
        red, den = self.reduced()
        if any(red[1:]):
            return None
        return Fraction(red[0] if red else 0, den)

    def __complex__(self):
        n = self.n
        acc = 0j
        for j, v in enumerate(self.coeffs):
            if v:
                acc += (v / self.den) * cmath.exp(2j * cmath.pi * j / n)
        return acc

    def __repr__(self):
        terms = [f"{v}*z^{j}" for j, v in enumerate(self.coeffs) if v]
        body = " + ".join(terms) or "0"
        return f"Cyclo[{self.n}](({body})/{self.den})"


def gaussian_norm(re: int, im: int) -> int:
    return re * re + im * im


def eisenstein_norm(a: int, b: int) -> int:
    """Norm of a + b*omega with omega a primitive cube root of unity."""
    return a * a - a * b + b * b
