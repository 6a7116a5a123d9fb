"""Small text language for naming graphs on the command line.

    hamming D Q                   H(D, Q)
    folded Q D                    X(Z_Q^D, multiples of e_j and 1) = H(D+1, Q)/<1>
    quotient qQ gens=1,1,1,0;0,1,1,1
    quotient qQ file=PATH         generators read from a file, one per line
    distance D Q R[,R...]         union of distance classes of H(D, Q)
    union3 K I [d=D]              classes 3l+I of H(D, 3), D = 2K+1 by default
    star N                        K_{1,N}
    claw-power M                  M-th Cartesian power of K_{1,3}
    cayley-from-file PATH         JSON {q, d, elements}
    cartesian [SPEC] [SPEC]
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cayley import CayleyGraph, ConnectionSet, hamming_graph, quotient_graph
from .scheme import SchemeGraphSpec, make_scheme_spec, union_class_graph
from .stars import claw_power, star_adjacency
from .times import folded_graph
from .walk import cartesian_product
from .zq import Submodule, ZqVector, all_vectors, parse_generators

KINDS = ("hamming", "folded", "quotient", "distance", "union3", "star", "claw-power",
         "cayley-from-file", "cartesian")


@dataclass(frozen=True)
class GraphSpec:
    kind: str
    params: tuple

    # -- parsing ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "GraphSpec":
        s = " ".join(text.strip().split())
        if not s:
            raise ValueError("empty graph specification")
        head, _, rest = s.partition(" ")
        head = head.lower()
        if head == "cartesian":
            parts = _bracket_groups(rest)
            if len(parts) != 2:
                raise ValueError("cartesian takes two bracketed specifications")
            return cls("cartesian", (cls.parse(parts[0]), cls.parse(parts[1])))
        tokens = rest.split(" ") if rest else []
        if head == "hamming":
            d, q = _ints(tokens, 2, head)
            return cls(head, (d, q))
        if head == "folded":
            q, d = _ints(tokens, 2, head)
            return cls(head, (q, d))
        if head == "quotient":
            tokens = tokens[:1] + ["".join(tokens[1:])] if len(tokens) > 1 else tokens
            if len(tokens) != 2 or not tokens[0].lower().startswith("q"):
                raise ValueError("expected: quotient qQ gens=... or quotient qQ file=PATH")
            q = int(tokens[0][1:])
            key, _, value = tokens[1].partition("=")
            if key == "file":
                with open(value) as fh:
                    value = fh.read()
            elif key != "gens":
                raise ValueError("expected gens=... or file=PATH")
            gens = parse_generators(value, q)
            if not gens:
                raise ValueError("quotient needs at least one generator")
            return cls(head, (q, tuple(g.coords for g in gens)))
        if head == "distance":
            if len(tokens) != 3:
                raise ValueError("expected: distance D Q R[,R...]")
            d, q = int(tokens[0]), int(tokens[1])
            raw = tokens[2].removeprefix("classes=")
            classes = tuple(sorted({int(x) for x in raw.split(",") if x}))
            if not classes:
                raise ValueError("distance needs at least one class")
            return cls(head, (d, q, classes))
        if head == "union3":
            if len(tokens) not in (2, 3):
                raise ValueError("expected: union3 K I [d=D]")
            k, i = int(tokens[0]), int(tokens[1])
            d = 2 * k + 1
            if len(tokens) == 3:
                if not tokens[2].startswith("d="):
                    raise ValueError("expected d=D")
                d = int(tokens[2][2:])
            return cls(head, (k, i, d))
        if head == "star":
            (n,) = _ints(tokens, 1, head)
            return cls(head, (n,))
        if head == "claw-power":
            (m,) = _ints(tokens, 1, head)
            return cls(head, (m,))
        if head == "cayley-from-file":
            if len(tokens) != 1:
                raise ValueError("expected: cayley-from-file PATH")
            return cls(head, (tokens[0],))
        raise ValueError(f"unknown graph kind {head!r}; expected one of {', '.join(KINDS)}")

    def render(self) -> str:
        k, p = self.kind, self.params
        if k == "cartesian":
            return f"cartesian [{p[0].render()}] [{p[1].render()}]"
        if k == "quotient":
            gens = ";".join(str(ZqVector(p[0], g)) for g in p[1])
            return f"quotient q{p[0]} gens={gens}"
        if k == "distance":
            return f"distance {p[0]} {p[1]} {','.join(map(str, p[2]))}"
        if k == "union3":
            return f"union3 {p[0]} {p[1]}" + ("" if p[2] == 2 * p[0] + 1 else f" d={p[2]}")
        return " ".join([k] + [str(x) for x in p])

    __str__ = render

    # -- construction ----------------------------------------------------

    def submodule(self) -> Submodule | None:
        if self.kind == "quotient":
            q, gens = self.params
            return Submodule(q, len(gens[0]), list(gens))
        return None

    def build(self):
        """A CayleyGraph, a SchemeGraphSpec, or a dense adjacency matrix."""
        k, p = self.kind, self.params
        if k == "hamming":
            return hamming_graph(p[0], p[1])
        if k == "folded":
            return folded_graph(p[0], p[1])
        if k == "quotient":
            return quotient_graph(self.submodule())
        if k == "distance":
            return make_scheme_spec(p[0], p[1], p[2])
        if k == "union3":
            return union_class_graph(p[0], p[1], p[2]).spec
        if k == "star":
            return star_adjacency(p[0])
        if k == "claw-power":
            return claw_power(p[0])
        if k == "cayley-from-file":
            with open(p[0]) as fh:
                return CayleyGraph(ConnectionSet.from_json(fh.read()))
        if k == "cartesian":
            return cartesian_product(dense_adjacency(p[0].build()), dense_adjacency(p[1].build()))
        raise ValueError(f"cannot build {k}")


def dense_adjacency(G) -> np.ndarray:
    if isinstance(G, CayleyGraph):
        return G.adjacency()
    if isinstance(G, SchemeGraphSpec):
        V = all_vectors(G.q, G.d)
        dist = np.count_nonzero((V[:, None, :] - V[None, :, :]) % G.q, axis=2)
        return np.isin(dist, G.classes).astype(np.int8)
    return np.asarray(G)


def scheme_cayley_graph(spec: SchemeGraphSpec) -> CayleyGraph:
    """The same distance-class union as a Cayley graph on Z_q^d."""
    V = all_vectors(spec.q, spec.d)
    keep = np.isin(np.count_nonzero(V, axis=1), spec.classes)
    return CayleyGraph(ConnectionSet(spec.q, spec.d, V[keep]))


def _ints(tokens, n, head):
    if len(tokens) != n:
        raise ValueError(f"{head} takes {n} integer parameter(s)")
    return tuple(int(t) for t in tokens)


def _bracket_groups(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            if depth:
                cur.append(ch)
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced brackets")
            if depth:
                cur.append(ch)
            else:
                out.append("".join(cur).strip())
                cur = []
        elif depth:
            cur.append(ch)
        elif not ch.isspace():
            raise ValueError(f"unexpected {ch!r} outside brackets")
    if depth:
        raise ValueError("unbalanced brackets")
    return out

