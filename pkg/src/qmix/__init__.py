"""Uniform mixing of continuous-time quantum walks on Cayley graphs over Z_q^d."""

from .cayley import CayleyGraph, ConnectionSet, hamming_graph, quotient_graph
from .criteria import coset_condition, one_generator_verdict, tau, two_generator_verdict
from .graphspec import GraphSpec
from .report import run_check
from .scheme import krawtchouk, krawtchouk_table, make_scheme_spec, union_class_graph
from .stars import claw_power_check, global_star_check, local_mixing_times
from .times import folded_verdict, mixing_time_report, totient_bound
from .walk import MixingVerdict, is_uniform_mixing, mullin_flatness, transition_row
from .walktime import WalkTime
from .zq import Submodule, ZqVector

__all__ = [
    "CayleyGraph",
    "ConnectionSet",
    "GraphSpec",
    "MixingVerdict",
    "Submodule",
    "WalkTime",
    "ZqVector",
    "claw_power_check",
    "coset_condition",
    "folded_verdict",
    "global_star_check",
    "hamming_graph",
    "is_uniform_mixing",
    "krawtchouk",
    "krawtchouk_table",
    "local_mixing_times",
    "make_scheme_spec",
    "mixing_time_report",
    "mullin_flatness",
    "one_generator_verdict",
    "quotient_graph",
    "run_check",
    "tau",
    "totient_bound",
    "transition_row",
    "two_generator_verdict",
    "union_class_graph",
]

__version__ = "0.1.0"
