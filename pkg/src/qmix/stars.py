"""Closed-form walks on stars K_{1,n} and Cartesian powers of the claw K_{1,3}.

Vertex 0 is the centre. Times here are irrational multiples of pi, so
everything runs in floating point with tolerance 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .walk import MixingVerdict, cartesian_product, is_local_uniform_mixing, is_uniform_mixing
from .walktime import WalkTime, as_time

STAR_TOL = 1e-10
CLAW_TIME = WalkTime.real(2 * math.pi / math.sqrt(27), label="2pi/sqrt27")


def star_adjacency(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("a star needs at least one leaf")
    A = np.zeros((n + 1, n + 1), dtype=np.int8)
    A[0, 1:] = A[1:, 0] = 1
    return A


@dataclass(frozen=True)
class StarTransition:
    n: int
    corner: complex
    edge_amp: complex
    leaf_diag: complex
    leaf_offdiag: complex

    def matrix(self) -> np.ndarray:
        n = self.n
        U = np.full((n + 1, n + 1), self.leaf_offdiag, dtype=complex)
        np.fill_diagonal(U, self.leaf_diag)
        U[0, 0] = self.corner
        U[0, 1:] = U[1:, 0] = self.edge_amp
        return U


def star_transition(n: int, t) -> StarTransition:
    if n < 1:
        raise ValueError("a star needs at least one leaf")
    r = math.sqrt(n)
    x = r * float(as_time(t))
    c, s = math.cos(x), math.sin(x)
    off = (c - 1) / n
    return StarTransition(n, complex(c), 1j * s / r, complex(1 + off), complex(off))


def _central_flat(n: int, t: float) -> bool:
    U = star_transition(n, t)
    p = 1.0 / (n + 1)
    return abs(abs(U.corner) ** 2 - p) <= STAR_TOL and abs(abs(U.edge_amp) ** 2 - p) <= STAR_TOL


def _globally_flat(n: int, t: float) -> bool:
    U = star_transition(n, t)
    p = 1.0 / (n + 1)
    vals = [U.corner, U.edge_amp, U.leaf_diag] + ([U.leaf_offdiag] if n > 1 else [])
    return all(abs(abs(v) ** 2 - p) <= STAR_TOL for v in vals)


@dataclass
class TimeFamily:
    """All t = b + k * period for b in ``bases`` and integer k."""

    bases: tuple[float, ...]
    period: float
    labels: tuple[str, ...] = ()
    verified: list[float] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.bases

    def first_times(self, count: int) -> list[float]:
        """The first ``count`` positive times of the family."""
        if self.empty:
            return []
        out: set[float] = set()
        k = -1
        while len(out) < count or k < 2:
            for b in self.bases:
                t = b + k * self.period
                if t > 1e-12:
                    out.add(round(t, 15))
            k += 1
            if k > 4 * count + 4:
                break
        return sorted(out)[:count]

    def contains(self, t: float, tol: float = 1e-9) -> bool:
        for b in self.bases:
            k = (t - b) / self.period
            if abs(k - round(k)) * self.period <= tol:
                return True
        return False


def local_mixing_times(n: int, count: int = 6) -> TimeFamily:
    """Times where the column of the centre is flat: tan(sqrt(n) t) = +-sqrt(n).

    The family is (+-arctan(sqrt n) + k pi)/sqrt(n). Each of the first
    ``count`` positive times is confirmed against the dense oracle.
    """
    if n < 1:
        raise ValueError("a star needs at least one leaf")
    r = math.sqrt(n)
    base = math.atan(r) / r
    fam = TimeFamily((base, -base), math.pi / r,
                     (f"arctan(sqrt{n})/sqrt{n}", f"-arctan(sqrt{n})/sqrt{n}"))
    A = star_adjacency(n)
    for t in fam.first_times(count):
        if not _central_flat(n, t):
            raise ArithmeticError(f"closed form not flat at t={t}")
        if not is_local_uniform_mixing(A, t, 0, tol=STAR_TOL).flat:
            raise ArithmeticError(f"dense oracle disagrees at t={t}")
        fam.verified.append(t)
    return fam


def literal_local_family(n: int, kmax: int = 3) -> list[tuple[float, bool]]:
    """Times +-arctan(sqrt n)/sqrt n + k*pi, k = 0..kmax, each with its flat-column verdict."""
    r = math.sqrt(n)
    base = math.atan(r) / r
    out = []
    for k in range(kmax + 1):
        for b in (base, -base):
            t = b + k * math.pi
            if t > 0:
                out.append((t, _central_flat(n, t)))
    return out


def global_star_check(n: int, count: int = 4) -> TimeFamily:
    """Times at which all of U(t) is flat; empty unless n in {1, 3}.

    Global flatness adds cos(sqrt(n) t) = 1 - n/2 to the local condition
    (for n >= 2; K_{1,1} has no pair of leaves).
    """
    if n < 1:
        raise ValueError("a star needs at least one leaf")
    r = math.sqrt(n)
    if n == 1:
        fam = TimeFamily((math.pi / 4,), math.pi / 2, ("pi/4",))
    else:
        c = 1 - n / 2
        # tan^2 = n forces cos^2 = 1/(n+1)
        if abs(c) > 1 or abs(c * c - 1 / (n + 1)) > 1e-12:
            return TimeFamily((), 1.0)
        base = math.acos(c) / r
        fam = TimeFamily((base, -base), 2 * math.pi / r,
                         (f"acos({c})/sqrt{n}", f"-acos({c})/sqrt{n}"))
    A = star_adjacency(n)
    for t in fam.first_times(count):
        if not _globally_flat(n, t) or not is_uniform_mixing(A, t, tol=STAR_TOL).flat:
            raise ArithmeticError(f"star {n} not flat at t={t}")
        fam.verified.append(t)
    return fam


def claw_power(m: int) -> np.ndarray:
    if m < 1:
        raise ValueError("power must be positive")
    A = star_adjacency(3)
    out = A
    for _ in range(m - 1):
        out = cartesian_product(out, A)
    return out


def is_regular(A) -> bool:
    deg = np.asarray(A).sum(axis=1)
    return bool((deg == deg[0]).all())


def claw_power_check(m: int, t=CLAW_TIME) -> MixingVerdict:
    if 4 ** m > 1024:
        raise ValueError("claw powers beyond 1024 vertices exceed the dense cap")
    return is_uniform_mixing(claw_power(m), as_time(t), tol=STAR_TOL)
