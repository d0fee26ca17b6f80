"""Command-line front end: ``verify``, ``bruteforce`` and ``estimate``.

Reports go to stdout (or ``--out``) as JSON; diagnostics go to stderr.
Exit codes: 0 solutions found, 10 none found, 2 input error, 3 resource
ceiling exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

from . import resources
from .classical import BRUTE_FORCE_LIMIT, brute_force
from .errors import ConfigError, ResourceLimitError
from .grover import Biased, GroverPlan, InitSpec, bbht_search, iter_rounds, search
from .netmodel import (
    ControlPlaneNetwork,
    DataPlaneNetwork,
    format_bits,
    parse_network,
    parse_property,
    property_to_dict,
)
from .oracle import DIAGONAL, GATE, compile_oracle

EXIT_FOUND, EXIT_NONE, EXIT_INPUT, EXIT_LIMIT = 0, 10, 2, 3


def _load_problem(args):
    try:
        with open(args.network) as fh:
            net_text = fh.read()
        with open(args.property) as fh:
            prop_text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read input: {exc}") from None
    net = parse_network(net_text)
    want = DataPlaneNetwork if args.mode == "dataplane" else ControlPlaneNetwork
    if not isinstance(net, want):
        raise ConfigError(f"{args.network} is not a {args.mode} network")
    return net, parse_property(prop_text, net)


def _problem(args, net, prop) -> dict:
    return {"mode": args.mode, "n": net.n, "property": property_to_dict(prop)}


def _emit(report: dict, out: str | None):
    text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bar_chart(hist: dict, confirmed, width: int = 40) -> str:
    if not hist:
        return ""
    top = max(hist.values())
    lines = []
    for key, count in sorted(hist.items()):
        mark = "*" if key in confirmed else " "
        lines.append(f"{key} {mark} {'#' * max(1, round(width * count / top)):<{width}} {count}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple[dict, int]:
    net, prop = _load_problem(args)
    init = Biased(args.p) if args.init == "biased" else InitSpec()
    t0 = time.perf_counter()
    report = {"problem": _problem(args, net, prop)}
    report["problem"].update(init=args.init, p=args.p, shots=args.shots)

    if args.all:
        budget = args.budget if args.budget is not None else 1 << net.n
        rounds = list(
            iter_rounds(
                net, prop, budget, shots=args.shots, seed=args.seed, init=init,
                backend=args.backend, midcircuit_reset=not args.no_reset,
            )
        )
        hist = Counter()
        for r in rounds:
            hist.update(r.histogram)
        confirmed = sorted({s for r in rounds for s in r.confirmed}, key=lambda s: int(s, 2))
        report.update(
            histogram=dict(sorted(hist.items())),
            confirmed=confirmed,
            exact_success=rounds[0].exact_success,
            grover_iterates=[r.iterates for r in rounds],
            rounds=len(rounds),
            warnings=[w for r in rounds for w in r.warnings],
        )
    else:
        oracle = compile_oracle(net, prop, args.backend, (), not args.no_reset)
        plan = GroverPlan(
            net, prop, oracle, iterates=args.iterates, k_hint=args.k_hint,
            init=init, shots=args.shots, seed=args.seed,
        )
        result = search(plan) if args.iterates is not None or args.k_hint is not None else bbht_search(plan)
        report.update(
            histogram=result.histogram,
            confirmed=list(result.confirmed),
            exact_success=result.exact_success,
            success_fraction=result.success_fraction,
            grover_iterates=result.iterates,
            warnings=list(result.warnings),
        )
    report.update(backend=args.backend, seed=args.seed)
    if args.compare:
        truth = [format_bits(x, net.n) for x in brute_force(net, prop)]
        report["brute_force"] = {
            "solutions": truth,
            "confirmed_subset": set(report["confirmed"]) <= set(truth),
        }
    report["duration_s"] = round(time.perf_counter() - t0, 6)
    if sys.stderr.isatty():
        sys.stderr.write(_bar_chart(report["histogram"], set(report["confirmed"])))
    return report, EXIT_FOUND if report["confirmed"] else EXIT_NONE


def cmd_bruteforce(args) -> tuple[dict, int]:
    net, prop = _load_problem(args)
    t0 = time.perf_counter()
    sols = [format_bits(x, net.n) for x in brute_force(net, prop, args.limit)]
    report = {
        "problem": _problem(args, net, prop),
        "confirmed": sols,
        "count": len(sols),
        "duration_s": round(time.perf_counter() - t0, 6),
    }
    return report, EXIT_FOUND if sols else EXIT_NONE


def cmd_estimate(args) -> str:
    reset = args.reset
    if args.sweep:
        if args.sweep_from is None or args.sweep_to is None:
            raise ConfigError("--sweep needs --from and --to")
        fixed = {
            k: v
            for k, v in {
                "routers": args.routers, "rules": args.rules, "edges": args.edges,
                "headers": args.headers, "iterates": args.iterates,
            }.items()
            if v is not None
        }
        rows = resources.sweep(
            args.kind, args.sweep, range(args.sweep_from, args.sweep_to + 1), reset, **fixed
        )
        return resources.to_csv(rows)

    if args.routers is None:
        raise ConfigError("--routers is required")
    R = args.routers
    if args.kind == "dataplane":
        if args.headers is None:
            raise ConfigError("--headers is required")
        rules = args.rules if args.rules is not None else 5
        p = resources.DataPlaneParams(
            n=args.headers, R=R, r=rules,
            ell=args.wildcards if args.wildcards is not None else R * rules,
            P=args.ports if args.ports is not None else R * rules,
            k=args.hops if args.hops is not None else R,
            G=args.iterates if args.iterates is not None else 5,
        )
        return f"{resources.dataplane_qubits(p, reset)}\n"
    if args.edges is None:
        raise ConfigError("--edges is required")
    p = resources.ControlPlaneParams(
        R=R, n=args.edges,
        D=args.diameter if args.diameter is not None else max(1, R - 1),
        G=args.iterates if args.iterates is not None else R,
    )
    return f"{resources.controlplane_qubits(p, reset)}\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qnwv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def problem_flags(p):
        p.add_argument("--mode", choices=["dataplane", "controlplane"], required=True)
        p.add_argument("--network", required=True)
        p.add_argument("--property", required=True)
        p.add_argument("--out")

    v = sub.add_parser("verify", help="Grover search for marked instances")
    problem_flags(v)
    v.add_argument("--backend", choices=[DIAGONAL, GATE], default=DIAGONAL)
    v.add_argument("--init", choices=["uniform", "biased"], default="uniform")
    v.add_argument("--p", type=float, default=None, help="per-bit probability of 0 for --init biased")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--iterates", type=int)
    g.add_argument("--k-hint", type=int, dest="k_hint")
    v.add_argument("--all", action="store_true", help="repeat with exclusions until nothing new")
    v.add_argument("--budget", type=int, help="max rounds for --all (default 2^n)")
    v.add_argument("--shots", type=int, default=10000)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--compare", action="store_true", help="add the brute-force solution set")
    v.add_argument("--no-reset", action="store_true", help="gate backend: fresh ancillas per hop")

    b = sub.add_parser("bruteforce", help="exhaustive classical baseline")
    problem_flags(b)
    b.add_argument("--limit", type=int, default=BRUTE_FORCE_LIMIT)

    e = sub.add_parser("estimate", help="closed-form qubit counts")
    e.add_argument("kind", choices=["dataplane", "controlplane"])
    e.add_argument("--routers", type=int)
    e.add_argument("--rules", type=int, help="rules per router")
    e.add_argument("--headers", type=int, help="total number of headers")
    e.add_argument("--wildcards", type=int)
    e.add_argument("--ports", type=int)
    e.add_argument("--hops", type=int)
    e.add_argument("--iterates", type=int)
    e.add_argument("--edges", type=int)
    e.add_argument("--diameter", type=int)
    e.add_argument("--reset", action="store_true", help="mid-circuit reset variant")
    e.add_argument("--sweep", choices=["headers", "routers", "edges"])
    e.add_argument("--from", type=int, dest="sweep_from")
    e.add_argument("--to", type=int, dest="sweep_to")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "estimate":
            sys.stdout.write(cmd_estimate(args))
            return EXIT_FOUND
        if args.command == "verify" and args.init == "biased" and args.p is None:
            raise ConfigError("--init biased needs --p")
        cmd = cmd_verify if args.command == "verify" else cmd_bruteforce
        report, code = cmd(args)
        _emit(report, args.out)
        return code
    except ResourceLimitError as exc:
        print(f"qnwv: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ConfigError as exc:
        print(f"qnwv: {exc}", file=sys.stderr)
        return EXIT_INPUT
