"""Command-line front end.

    temporal-reach analyze NET.json [--trials 5 --seed 42 --tol 1e-8 --restarts 8 --witnesses]
    temporal-reach crp NET.json (--path 1,2,1 | --search L)
    temporal-reach switched NET.json [--budget 720]
    temporal-reach export NET.json --graph {cdg,mdg,gsw} [--out FILE]
    temporal-reach gen-stcp --n 4 --target 1,2 --N 3 [--m 1 --seed 42]

Exit codes: 0 ok, 2 bad input, 3 a lower bound exceeded an oracle value or
an oracle value exceeded an upper bound, 4 output not writable.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import netjson
from .bounds_cactus import (greedy_union_lower_bound, omega_h_lower_bound,
                            temporal_cactus_lower_bound)
from .bounds_cdg import BadIndex, cdg_upper_bound, crp_check
from .bounds_mdg import full_dim_necessary_check, mdg_upper_bound
from .dot import EXPORTERS
from .model import ModelError, TargetSpec, random_pair, stcp_embedding
from .numeric_oracle import (DEFAULT_TOL, ezzine_haddad_report, oracle_gdim_omega_h,
                             oracle_gdim_omegabar)
from .switched_apps import crp_min_length_search, switched_dim_lower_bound

EXIT_OK, EXIT_INPUT, EXIT_SANDWICH, EXIT_OUTPUT = 0, 2, 3, 4


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return netjson.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ModelError as exc:
        raise InputError(str(exc)) from None


def _index_list(text: str, what: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise InputError(f"{what}: empty list")
    return vals


def _vertex_paths(paths) -> list[list[str]]:
    return [[v.label() for v in p] for p in paths]


def build_report(net, trials: int, seed: int, tol: float, restarts: int,
                 witnesses: bool = False) -> dict:
    cdg = cdg_upper_bound(net)
    upper_h = cdg.bound if cdg.bound_n2_refined is None else cdg.bound_n2_refined
    oh = oracle_gdim_omega_h(net, trials, seed, tol)
    greedy = greedy_union_lower_bound(net)
    tc_size, tc = temporal_cactus_lower_bound(net, restarts, seed)
    mdg_size, mdg_link = mdg_upper_bound(net)
    ob = oracle_gdim_omegabar(net, trials, seed, tol)
    passes, grank = full_dim_necessary_check(net)
    eh = ezzine_haddad_report(net, trials, seed, tol)
    report = {
        "network": {"n": net.n, "N": net.N, "m": list(net.m)},
        "settings": {"trials": trials, "seed": seed, "tol": tol, "restarts": restarts},
        "omega_h": {"lower": omega_h_lower_bound(net), "upper": upper_h,
                    "upper_cdg": cdg.bound, "upper_n2_refined": cdg.bound_n2_refined,
                    "oracle": oh.value, "per_trial": oh.per_trial},
        "omega_bar": {"lower": tc_size, "upper": mdg_size, "oracle": ob.value,
                      "per_trial": ob.per_trial,
                      "necessary_check": {"passes": passes, "grank": grank}},
        "ezzine_haddad": eh.to_dict(),
    }
    if witnesses:
        report["witnesses"] = {
            "greedy_steps": [[i + 1, sorted(j + 1 for j in c)] for i, c in greedy.steps],
            "cdg_linking": _vertex_paths(cdg.witness.paths),
            "mdg_linking": _vertex_paths(mdg_link.paths),
            "temporal_cactus": {"stems": _vertex_paths(tc.stems),
                                "cycles": _vertex_paths(tc.cycles),
                                "covered": {str(k + 1): v for k, v in tc.covered.items()}},
        }
    return report


def sandwich_violations(report: dict) -> list[str]:
    out = []
    for key in ("omega_h", "omega_bar"):
        sec = report[key]
        if not sec["lower"] <= sec["oracle"] <= sec["upper"]:
            out.append(f"{key}: lower {sec['lower']} <= oracle {sec['oracle']} "
                       f"<= upper {sec['upper']} does not hold")
    return out


def cmd_analyze(args) -> int:
    net = _load(args.file)
    report = build_report(net, args.trials, args.seed, args.tol, args.restarts, args.witnesses)
    bad = sandwich_violations(report)
    if bad:
        for msg in bad:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_SANDWICH
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_crp(args) -> int:
    net = _load(args.file)
    if args.path is not None:
        path = _index_list(args.path, "--path")
        try:
            ok, size = crp_check(net, [i - 1 for i in path])
        except BadIndex:
            raise InputError(f"--path entries must lie in 1..{net.N}") from None
        out = {"path": path, "passes": ok, "linking": size, "n": net.n}
    else:
        if args.search < 1:
            raise InputError("--search needs l_max >= 1")
        res = crp_min_length_search(net, args.search)
        out = {"found": res.path is not None, **res.to_dict()}
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def cmd_switched(args) -> int:
    net = _load(args.file)
    if args.budget < 1:
        raise InputError("--budget must be >= 1")
    res = switched_dim_lower_bound(net, args.budget, args.seed, args.trials, args.tol)
    print(json.dumps(res.to_dict(), sort_keys=True))
    return EXIT_OK


def cmd_export(args) -> int:
    net = _load(args.file)
    text = EXPORTERS[args.graph](net)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK


def cmd_gen_stcp(args) -> int:
    target = [t - 1 for t in _index_list(args.target, "--target")]
    if args.n < 1 or args.m < 0:
        raise InputError("--n must be >= 1 and --m >= 0")
    try:
        spec = TargetSpec(frozenset(target))
        spec.check(args.n)
        pair = random_pair(args.n, args.m, np.random.default_rng(args.seed), args.density)
        net = stcp_embedding(pair, spec, args.N)
    except ModelError as exc:
        raise InputError(str(exc)) from None
    d = netjson.network_to_dict(net)
    d["target"] = sorted(t + 1 for t in target)
    print(json.dumps(d, sort_keys=True))
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="temporal-reach",
                                description="Structural bounds on reachable subspaces of temporal networks.")
    sub = p.add_subparsers(dest="command", required=True)

    def oracle_flags(sp):
        sp.add_argument("--trials", type=int, default=5)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    a = sub.add_parser("analyze", help="all bounds next to the Monte Carlo oracle")
    a.add_argument("file")
    oracle_flags(a)
    a.add_argument("--restarts", type=int, default=8)
    a.add_argument("--witnesses", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("crp", help="linking test for a switching path, or shortest-path search")
    c.add_argument("file")
    mode = c.add_mutually_exclusive_group(required=True)
    mode.add_argument("--path", help="comma-separated 1-based subsystem indices")
    mode.add_argument("--search", type=int, metavar="L_MAX")
    c.set_defaults(func=cmd_crp)

    s = sub.add_parser("switched", help="permutation lower bound for the switched system")
    s.add_argument("file")
    oracle_flags(s)
    s.add_argument("--budget", type=int, default=720)
    s.set_defaults(func=cmd_switched)

    e = sub.add_parser("export", help="write a graph as Graphviz DOT")
    e.add_argument("file")
    e.add_argument("--graph", required=True, choices=sorted(EXPORTERS))
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)

    g = sub.add_parser("gen-stcp", help="random pair plus its target-controllability embedding")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--target", required=True, help="comma-separated 1-based node indices")
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--density", type=float, default=0.35)
    g.set_defaults(func=cmd_gen_stcp)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if getattr(args, "trials", 1) < 1:
            raise InputError("--trials must be >= 1")
        if getattr(args, "restarts", 1) < 1:
            raise InputError("--restarts must be >= 1")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
