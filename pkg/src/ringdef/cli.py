"""Command-line entry point.

Subcommands: run an experiment, verify an emitted report, list the
experiments, or evaluate a formula over an order.  Exit codes: 0 all
pass, 1 a FALSE verdict where TRUE was expected, 2 usage or config
error, 3 an internal cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import exact, experiments, formulas, orders, units, zk
from .orders import QuotientTooLarge

EXIT_OK = 0
EXIT_UNEXPECTED_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def parse_order_spec(spec):
    """Order specs: "rational", "quad:d[:nonmax]", "comp:base_d:d"."""
    parts = spec.split(":")
    if parts[0] == "rational":
        return orders.make_rational_order()
    if parts[0] == "quad":
        if len(parts) < 2:
            raise ValueError("quad spec needs a discriminant, e.g. quad:-1")
        d = int(parts[1])
        maximal = not (len(parts) > 2 and parts[2] == "nonmax")
        return orders.make_quadratic_order(d, maximal=maximal)
    if parts[0] == "comp":
        if len(parts) < 3:
            raise ValueError("comp spec needs two integers, e.g. comp:-1:5")
        base = orders.make_quadratic_order(int(parts[1]))
        return orders.make_compositum_order(base, int(parts[2]))
    raise ValueError(f"unknown order spec {spec!r}")


def parse_assignment(ctx, text):
    """Assignments look like x=3 or x=1,2 (coordinates over the basis)."""
    if "=" not in text:
        raise ValueError(f"assignment {text!r} must look like name=value")
    name, value = text.split("=", 1)
    coords = [int(part) for part in value.split(",")]
    if len(coords) == 1:
        return name, ctx.from_int(coords[0])
    return name, ctx.element(coords)


def _cmd_run(args):
    overrides = {}
    if args.config:
        with open(args.config) as handle:
            overrides = json.load(handle)
    overrides["name"] = args.experiment
    cfg = experiments.ExperimentConfig.from_json_dict(overrides)
    report = experiments.run_experiment(cfg)
    if args.out:
        experiments.emit_report(report, args.out)
        print(f"report written to {args.out}")
    else:
        print(report.canonical_json(), end="")
    summary = report.summary
    print(
        f"checks={summary['checks']} true={summary['TRUE']} false={summary['FALSE']} "
        f"unknown={summary['UNKNOWN']} mismatches={summary['expected_mismatches']}",
        file=sys.stderr,
    )
    return EXIT_OK if report.all_expected else EXIT_UNEXPECTED_FALSE


def _cmd_verify(args):
    with open(args.report) as handle:
        data = json.load(handle)
    ok, problems = experiments.verify_report(data)
    if ok:
        print("report verified: all embedded certificates re-check")
        return EXIT_OK
    for problem in problems:
        print(f"FAIL {problem['check']}: {problem['error']}")
    return EXIT_UNEXPECTED_FALSE


def _cmd_list(_args):
    for entry in experiments.list_experiments():
        print(f"{entry['name']:<20} {entry['summary']}")
    return EXIT_OK


def _cmd_eval(args):
    ctx = parse_order_spec(args.order)
    assignment = {}
    for text in args.assign or []:
        name, value = parse_assignment(ctx, text)
        assignment[name] = value
    if args.formula == "zk":
        w = assignment.get("w")
        if w is None:
            raise ValueError("zk needs an assignment w=<integer>")
        bundle = zk.build_integer_witness(
            int(w.coords[0]), d=args.d, carrier_d=args.carrier_d
        )
        print(json.dumps(bundle.to_json(), sort_keys=True, indent=2))
        return EXIT_OK if bundle.verdict["status"] == "TRUE" else EXIT_UNEXPECTED_FALSE
    if args.formula == "system_S":
        w = assignment.get("w")
        if w is None:
            raise ValueError("system_S needs an assignment w=<integer>")
        side = orders.make_quadratic_order(args.d, maximal=False)
        u0 = units.fundamental_unit(side)
        w_int = int(w.coords[0])
        scale = args.d * zk.modulus_poly(w_int)
        if scale == 0:
            delta1 = zk.UnitPower(u0, 0)
        else:
            modulus = orders.IdealLattice.from_int(side, abs(scale))
            q = orders.QuotientRing(side, modulus)
            k = exact.multiplicative_order(q.reduce(u0), q)
            delta1 = zk.UnitPower(u0, k)
        verdict = zk.check_witness_system(args.d, w_int, delta1, delta1.power(w_int))
        print(json.dumps(verdict.to_json(), sort_keys=True, indent=2))
        return EXIT_OK if verdict.holds else EXIT_UNEXPECTED_FALSE
    if args.formula in formulas.BUILTIN_FORMULAS:
        ast = formulas.builtin_formula(args.formula)
    else:
        with open(args.formula) as handle:
            ast = formulas.parse(handle.read())
    env = formulas.EvalEnvironment(
        ctx,
        units.unit_group(ctx),
        unit_bound=args.unit_bound,
        elem_bound=args.elem_bound,
        assignment=assignment,
    )
    verdict = formulas.eval_bounded(ast, env)
    print(json.dumps(verdict.to_json(), sort_keys=True, indent=2))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ringdef",
        description="exact experiments on unit groups and congruence-defined subrings",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a named experiment")
    run.add_argument("experiment")
    run.add_argument("--config", help="JSON file with config overrides")
    run.add_argument("--out", help="write the canonical report here")
    run.set_defaults(func=_cmd_run)
    verify = sub.add_parser("verify", help="re-verify an emitted report")
    verify.add_argument("report")
    verify.set_defaults(func=_cmd_verify)
    lst = sub.add_parser("list", help="list experiments")
    lst.set_defaults(func=_cmd_list)
    ev = sub.add_parser("eval", help="evaluate a formula over an order")
    ev.add_argument("--formula", required=True, help="built-in name or file path")
    ev.add_argument("--order", default="quad:-1", help="rational | quad:d[:nonmax] | comp:d1:d2")
    ev.add_argument("--assign", action="append", help="name=value (repeatable)")
    ev.add_argument("--unit-bound", type=int, default=3)
    ev.add_argument("--elem-bound", type=int, default=2)
    ev.add_argument("--d", type=int, default=5, help="side-system discriminant for zk/system_S")
    ev.add_argument("--carrier-d", type=int, default=2)
    ev.set_defaults(func=_cmd_eval)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (exact.CapExceeded, QuotientTooLarge) as err:
        print(f"cap exceeded: {err}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
