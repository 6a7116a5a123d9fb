"""Single-instance checks: pick the cheapest method, optionally compare with an oracle."""

from __future__ import annotations

import time as _time

import numpy as np

from .cayley import CayleyGraph
from .criteria import coset_condition, one_generator_verdict, tau, two_generator_verdict
from .graphspec import GraphSpec, dense_adjacency, scheme_cayley_graph
from .scheme import SchemeGraphSpec
from .stars import STAR_TOL, star_transition
from .walk import (
    DENSE_CAP,
    FLOAT_TOL,
    MixingVerdict,
    is_uniform_mixing,
    mullin_flatness,
)
from .walktime import as_time
from .zq import minimum_distance


def _star_verdict(n: int, t) -> MixingVerdict:
    U = star_transition(n, t)
    vals = [U.corner, U.edge_amp, U.leaf_diag] + ([U.leaf_offdiag] if n > 1 else [])
    devs = [abs(abs(v) ** 2 * (n + 1) - 1.0) for v in vals]
    worst = max(devs)
    return MixingVerdict(worst <= STAR_TOL, worst, "closed-form",
                         witness=None if worst <= STAR_TOL else int(np.argmax(devs)))


def symbolic_verdict(spec: GraphSpec, t) -> bool | None:
    """Symbolic verdict for quotients at tau_q, or None when no criterion applies."""
    G = spec.submodule()
    if G is None or G.q not in (2, 3, 4) or as_time(t) != tau(G.q):
        return None
    try:
        if G.rank == 1 and len(spec.params[1]) == 1:
            return one_generator_verdict(G.generator_vectors()[0])
        if G.q == 3 and G.rank == 2 and len(spec.params[1]) == 2:
            a, b = G.generator_vectors()
            return two_generator_verdict(a, b)
    except ValueError:
        pass
    if G.is_free and minimum_distance(G) >= 3:
        return coset_condition(G)
    return None


def primary_verdict(spec: GraphSpec, built, t) -> MixingVerdict:
    if spec.kind == "star":
        return _star_verdict(spec.params[0], t)
    if spec.kind == "quotient":
        return mullin_flatness(spec.submodule(), t)
    if isinstance(built, (SchemeGraphSpec, CayleyGraph)):
        return is_uniform_mixing(built, t)
    return is_uniform_mixing(np.asarray(built), t, tol=FLOAT_TOL)


def _oracle(spec: GraphSpec, built, t) -> MixingVerdict | None:
    n = built.q ** built.d if isinstance(built, (SchemeGraphSpec, CayleyGraph)) else len(built)
    if n <= DENSE_CAP:
        return is_uniform_mixing(dense_adjacency(built), t)
    if isinstance(built, SchemeGraphSpec):
        built = scheme_cayley_graph(built)
    if isinstance(built, CayleyGraph):
        return is_uniform_mixing(built, t)
    return None


def run_check(spec: GraphSpec | str, t, *, cross_check: bool = False, timing: bool = False) -> dict:
    """One report: {graph, time, flat, method, max_deviation, exact, ...}."""
    start = _time.perf_counter()
    spec = GraphSpec.parse(spec) if isinstance(spec, str) else spec
    t = as_time(t)
    built = spec.build()
    verdict = primary_verdict(spec, built, t)
    report = {"graph": spec.render(), "time": str(t)}
    report.update(verdict.to_dict())
    sym = symbolic_verdict(spec, t)
    if sym is not None:
        report["symbolic"] = sym
        report["symbolic_agrees"] = sym == verdict.flat
    if cross_check:
        other = _oracle(spec, built, t)
        if other is None:
            report["cross_check"] = None
        else:
            report["cross_check"] = {"method": other.method, "flat": other.flat,
                                     "max_deviation": other.max_deviation,
                                     "agrees": other.flat == verdict.flat}
    if timing:
        report["wall_time"] = round(_time.perf_counter() - start, 6)
    return report
