"""qmix command-line interface."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import criteria, scheme, stars, survey, times
from .graphspec import GraphSpec
from .report import run_check
from .walk import is_uniform_mixing
from .walktime import as_time
from .zq import CapExceededError, Submodule, parse_generators


# ---------------------------------------------------------------------------
# output


def _flatten(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, dict):
            for k2, v2 in _flatten(v).items():
                out[f"{k}.{k2}"] = v2
        elif isinstance(v, (list, tuple)):
            out[k] = json.dumps(v)
        else:
            out[k] = v
    return out


def emit(rows, fmt: str, stream=None) -> None:
    """JSON: one object per line. CSV: union of keys as header, in first-seen order."""
    stream = stream or sys.stdout
    rows = list(rows)
    if fmt == "json":
        for r in rows:
            stream.write(json.dumps(r, sort_keys=False) + "\n")
        return
    flat = [_flatten(r) for r in rows]
    fields: list[str] = []
    for r in flat:
        fields.extend(k for k in r if k not in fields)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    stream.write(buf.getvalue())


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> list[dict]:
    return [run_check(args.graph, args.time, cross_check=args.cross_check, timing=args.timing)]


def cmd_survey(args) -> list[dict]:
    rows: list[dict] = []
    if args.known_examples:
        rows = survey.known_examples_survey(jobs=args.jobs)
    elif args.two_gen:
        rows = survey.two_generator_survey(args.d, jobs=args.jobs)
    elif args.one_gen:
        rows = [r for r in survey.one_generator_survey(args.q, args.d, seed=args.seed) if "skipped" not in r]
    elif args.random_two_gen:
        rows = survey.random_two_generator_survey(total=args.samples, seed=args.seed, jobs=args.jobs)
    elif args.q1_scan:
        return [survey.q1_scan(args.d, args.samples, seed=args.seed)]
    return rows + [survey.summarize(rows)]


def cmd_times(args) -> list[dict]:
    spec = GraphSpec.parse(args.graph)
    X = spec.build()
    rep = times.mixing_time_report(X, scan_N=args.scan_N).to_dict()
    return [{"graph": spec.render(), **rep}]


def cmd_families(args) -> list[dict]:
    rows = []
    for inst in scheme.enumerate_families(args.kmax, args.q):
        row = {"q": inst.q, "k": inst.k, "d": inst.d, "r": inst.r, "time": str(inst.time),
               "condition": inst.condition, "epsilon": inst.epsilon}
        if args.verify:
            v = is_uniform_mixing(scheme.make_scheme_spec(inst.d, inst.q, [inst.r]), inst.time)
            row.update({"flat": v.flat, "method": v.method, "max_deviation": v.max_deviation})
        rows.append(row)
    return rows


def cmd_krawtchouk(args) -> list[dict]:
    P = scheme.krawtchouk_table(args.d, args.q)
    return [{"s": s, **{f"r{r}": int(P[s, r]) for r in range(args.d + 1)}} for s in range(args.d + 1)]


def cmd_characterize(args) -> list[dict]:
    with open(args.generators) as fh:
        gens = parse_generators(fh.read(), args.q)
    if not gens:
        raise ValueError("generator file is empty")
    G = Submodule.from_vectors(gens)
    spec = GraphSpec("quotient", (args.q, tuple(g.coords for g in gens)))
    t = as_time(args.time)
    out: dict = {"graph": spec.render(), "time": str(t)}
    try:
        sym = criteria.coset_condition(G) if t == criteria.tau(args.q) else None
    except ValueError:
        sym = None
    out["verdict_symbolic"] = sym
    try:
        check = run_check(spec, t, cross_check=True)
        cc = check.get("cross_check") or {}
        out["verdict_bruteforce"] = cc.get("flat")
        out["closed_form"] = {k: check[k] for k in ("flat", "max_deviation", "method", "exact")}
    except CapExceededError:
        out["verdict_bruteforce"] = None
    if args.q in (2, 3, 4):
        out["coset_report"] = [
            {"representative": list(e.representative), "norm": e.norm, "ok": e.ok,
             **({"structure": list(e.structure)} if e.structure else {})}
            for e in criteria.coset_report(G)
        ]
    return [out]


def cmd_star(args) -> list[dict]:
    if args.mode == "global":
        fam = stars.global_star_check(args.n, count=args.count)
    else:
        fam = stars.local_mixing_times(args.n, count=args.count)
    return [{"n": args.n, "mode": args.mode, "empty": fam.empty, "period": None if fam.empty else fam.period,
             "bases": list(fam.bases), "labels": list(fam.labels), "verified_times": fam.verified}]


def cmd_claw_power(args) -> list[dict]:
    t = as_time(args.time)
    v = stars.claw_power_check(args.m, t)
    A = stars.claw_power(args.m)
    return [{"graph": f"claw-power {args.m}", "time": str(t), "regular": stars.is_regular(A), **v.to_dict()}]


COMMANDS = {
    "check": cmd_check,
    "survey": cmd_survey,
    "times": cmd_times,
    "families": cmd_families,
    "krawtchouk": cmd_krawtchouk,
    "characterize": cmd_characterize,
    "star": cmd_star,
    "claw-power": cmd_claw_power,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical output)")

    p = argparse.ArgumentParser(prog="qmix", description="Uniform mixing of quantum walks on Cayley graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verdict for one graph at one time")
    c.add_argument("--graph", required=True)
    c.add_argument("--time", required=True)
    c.add_argument("--cross-check", action="store_true")

    s = sub.add_parser("survey", parents=[common], help="batch verdicts with a summary row")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--known-examples", action="store_true")
    g.add_argument("--two-gen", action="store_true", help="exhaustive rank-2 over Z_3^d")
    g.add_argument("--one-gen", action="store_true", help="all one-generator quotients up to d")
    g.add_argument("--random-two-gen", action="store_true", help="seeded rank-2 samples at d = 7, 8")
    g.add_argument("--q1-scan", action="store_true", help="own distribution versus all cosets")
    s.add_argument("--d", type=int, default=6)
    s.add_argument("--q", type=int, default=3)
    s.add_argument("--samples", type=int, default=500)

    t = sub.add_parser("times", parents=[common], help="all mixing times of a linear Cayley graph")
    t.add_argument("--graph", required=True)
    t.add_argument("--scan-N", dest="scan_N", type=int, default=50)

    f = sub.add_parser("families", parents=[common], help="distance-graph families")
    f.add_argument("--q", type=int, required=True, choices=(3, 4))
    f.add_argument("--kmax", type=int, default=4)
    f.add_argument("--verify", action="store_true", help="also run the exact weight-class check")

    k = sub.add_parser("krawtchouk", parents=[common], help="eigenvalue table P[s][r]")
    k.add_argument("--d", type=int, required=True)
    k.add_argument("--q", type=int, required=True)

    ch = sub.add_parser("characterize", parents=[common], help="coset criterion for H(d,q)/<gens>")
    ch.add_argument("--q", type=int, required=True)
    ch.add_argument("--generators", required=True, help="file with one comma-separated vector per line")
    ch.add_argument("--time", required=True)

    st = sub.add_parser("star", parents=[common], help="mixing times of K_{1,n}")
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--mode", choices=("global", "local"), default="global")
    st.add_argument("--count", type=int, default=4)

    cp = sub.add_parser("claw-power", parents=[common], help="Cartesian powers of K_{1,3}")
    cp.add_argument("--m", type=int, required=True)
    cp.add_argument("--time", default="2pi/sqrt27")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rows = COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"qmix: error: {exc}", file=sys.stderr)
        return 1
    if args.timing and args.command != "check":
        rows.append({"wall_time": round(time.perf_counter() - start, 6)})
    emit(rows, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
