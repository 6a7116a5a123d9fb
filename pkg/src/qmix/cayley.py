"""Cayley graphs over Z_q^d and their character eigenvalues."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .cyclotomic import Cyclo
from .zq import (
    Submodule,
    ZqVector,
    all_vectors,
    check_cap,
    minimum_distance,
    parity_check_matrix,
    prime_factors,
    rank_mod_p,
    vector_index,
)


class ConnectionSet:
    """A subset of Z_q^d stored as a sorted, duplicate-free integer array."""

    def __init__(self, q: int, d: int, elements: Iterable = ()):
        self.q = int(q)
        self.d = int(d)
        rows = []
        for e in elements:
            coords = e.coords if isinstance(e, ZqVector) else tuple(int(x) for x in np.atleast_1d(e))
            if len(coords) != self.d:
                raise ValueError(f"element of length {len(coords)} in Z_{q}^{d}")
            rows.append(coords)
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), self.d) % self.q
        self.elements = np.unique(arr, axis=0) if len(arr) else arr

    def __len__(self) -> int:
        return len(self.elements)

    def vectors(self) -> list[ZqVector]:
        return [ZqVector(self.q, tuple(int(x) for x in row)) for row in self.elements]

    def __contains__(self, v) -> bool:
        arr = v.array() if isinstance(v, ZqVector) else np.asarray(v) % self.q
        return bool(len(self.elements)) and bool((self.elements == arr).all(axis=1).any())

    def __eq__(self, other):
        return (isinstance(other, ConnectionSet) and self.q == other.q and self.d == other.d
                and np.array_equal(self.elements, other.elements))

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "d": self.d, "elements": self.elements.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "ConnectionSet":
        data = json.loads(text)
        return cls(data["q"], data["d"], data["elements"])

    def __repr__(self):
        return f"ConnectionSet(q={self.q}, d={self.d}, size={len(self)})"


@dataclass
class ValidationReport:
    ok: bool
    contains_identity: bool
    missing_inverses: list[ZqVector] = field(default_factory=list)


def validate_connection_set(C: ConnectionSet) -> ValidationReport:
    zero = len(C) > 0 and bool((C.elements == 0).all(axis=1).any())
    missing = [v for v in C.vectors() if (-v) not in C]
    return ValidationReport(not zero and not missing, zero, missing)


def is_linear(C: ConnectionSet) -> bool:
    """True iff C together with 0 is closed under multiplication by Z_q."""
    if not len(C):
        return True
    keys = set(map(tuple, C.elements.tolist()))
    for lam in range(2, C.q):
        for row in (lam * C.elements) % C.q:
            t = tuple(row.tolist())
            if any(t) and t not in keys:
                return False
    return True


def hamming_connection_set(d: int, q: int) -> ConnectionSet:
    if d < 1 or q < 2:
        raise ValueError("need d >= 1 and q >= 2")
    rows = []
    for j in range(d):
        for lam in range(1, q):
            v = [0] * d
            v[j] = lam
            rows.append(v)
    return ConnectionSet(q, d, rows)


def multiples_connection_set(q: int, columns: Sequence) -> ConnectionSet:
    """Nonzero multiples of the given vectors."""
    cols = [c.coords if isinstance(c, ZqVector) else tuple(int(x) for x in c) for c in columns]
    d = len(cols[0])
    rows = []
    for c in cols:
        for lam in range(1, q):
            v = tuple((lam * x) % q for x in c)
            if any(v):
                rows.append(v)
    return ConnectionSet(q, d, rows)


def quotient_connection_set(G: Submodule) -> ConnectionSet:
    """Connection set on Z_q^(d-rank) of the quotient H(d,q)/G.

    Nonzero multiples of the columns of the systematic parity-check matrix.
    """
    if G.rank > 0 and minimum_distance(G) < 3:
        raise ValueError("submodule has minimum distance below three; the quotient is not simple")
    Q, _ = parity_check_matrix(G)
    r = Q.shape[0]
    if r == 0:
        raise ValueError("quotient by the whole space has a single vertex")
    C = multiples_connection_set(G.q, [Q[:, j] for j in range(G.d)])
    if len(C) != G.d * (G.q - 1):
        raise ValueError("parity-check columns collide; quotient valency is not d(q-1)")
    return C


def is_connected(C: ConnectionSet) -> bool:
    """C generates Z_q^d iff it spans F_p^d for every prime p dividing q."""
    if not len(C):
        return False
    return all(rank_mod_p(C.elements, p) == C.d for p in prime_factors(C.q))


class CayleyGraph:
    """X(Z_q^d, C); vertex g has index ``vector_index(g)``."""

    def __init__(self, connection: ConnectionSet, check: bool = True):
        self.connection = connection
        if check:
            report = validate_connection_set(connection)
            if not report.ok:
                raise ValueError(f"invalid connection set: {report}")

    @property
    def q(self) -> int:
        return self.connection.q

    @property
    def d(self) -> int:
        return self.connection.d

    @property
    def n(self) -> int:
        return self.q ** self.d

    @property
    def valency(self) -> int:
        return len(self.connection)

    @cached_property
    def linear(self) -> bool:
        return is_linear(self.connection)

    def vertices(self) -> np.ndarray:
        return all_vectors(self.q, self.d)

    def adjacency(self) -> np.ndarray:
        check_cap(self.n * self.n, "dense adjacency")
        V = self.vertices()
        A = np.zeros((self.n, self.n), dtype=np.int8)
        rows = np.arange(self.n)
        for c in self.connection.elements:
            A[rows, vector_index((V + c) % self.q, self.q)] = 1
        return A

    @cached_property
    def integer_eigenvalues(self) -> np.ndarray | None:
        """theta_a for every a (index order), or None if some eigenvalue is irrational."""
        V = self.vertices()
        if self.linear:
            hits = _kernels.orthogonal_counts(V, self.connection.elements, self.q)
            num = self.q * hits - self.valency
            if np.any(num % (self.q - 1)):
                # q composite: scalar classes need not have size q-1
                return self._exact_integer_eigenvalues()
            return num // (self.q - 1)
        return self._exact_integer_eigenvalues()

    def _exact_integer_eigenvalues(self) -> np.ndarray | None:
        vals = []
        for a in self.vertices():
            ev = character_eigenvalue(self, ZqVector(self.q, tuple(int(x) for x in a)))
            if not isinstance(ev, int):
                return None
            vals.append(ev)
        return np.array(vals, dtype=np.int64)

    def eigenvalues(self) -> np.ndarray:
        """Float eigenvalues theta_a, index order."""
        ints = self.integer_eigenvalues
        if ints is not None:
            return ints.astype(float)
        V = self.vertices()
        phases = (V @ self.connection.elements.T) % self.q
        return np.cos(2 * np.pi * phases / self.q).sum(axis=1)

    def __repr__(self):
        return f"CayleyGraph(q={self.q}, d={self.d}, valency={self.valency})"


def character_eigenvalue(X: CayleyGraph, a: ZqVector) -> int | Cyclo:
    """psi_a(C) = sum_{c in C} zeta_q^<a,c>, as an int when it is rational."""
    q = X.q
    coeffs = [0] * q
    for c in X.connection.elements:
        coeffs[int(np.dot(a.array(), c)) % q] += 1
    value = Cyclo(q, coeffs)
    r = value.as_rational()
    if r is not None and r.denominator == 1:
        return int(r)
    return value


def linear_eigenvalue(C: ConnectionSet, a: ZqVector) -> int:
    """Integer eigenvalue (q |C cap a-perp| - |C|) / (q - 1) for linear C."""
    hits = sum(1 for c in C.elements if int(np.dot(a.array(), c)) % C.q == 0)
    num = C.q * hits - len(C)
    if num % (C.q - 1):
        raise ValueError("connection set is not linear enough for the integer formula")
    return num // (C.q - 1)


def hamming_graph(d: int, q: int) -> CayleyGraph:
    return CayleyGraph(hamming_connection_set(d, q))


def quotient_graph(G: Submodule) -> CayleyGraph:
    return CayleyGraph(quotient_connection_set(G))


def coset_quotient_adjacency(G: Submodule) -> np.ndarray:
    """Dense H(d,q)/G built from coset adjacency; independent of parity checks.

    Two cosets are adjacent iff some element of one differs from some element
    of the other in exactly one coordinate.
    """
    q, d = G.q, G.d
    V = all_vectors(q, d)
    elems = G.elements()
    idx = vector_index(V, q)
    label = np.full(q ** d, -1, dtype=np.int64)
    nxt = 0
    for i in range(q ** d):
        if label[i] < 0:
            members = vector_index((V[i] + elems) % q, q)
            label[members] = nxt
            nxt += 1
    A = np.zeros((nxt, nxt), dtype=np.int8)
    for j in range(d):
        for lam in range(1, q):
            shifted = V.copy()
            shifted[:, j] = (shifted[:, j] + lam) % q
            A[label[idx], label[vector_index(shifted, q)]] = 1
    return A
