"""Command-line entry point: ``tentops <command> ...``."""

import argparse
import json
import os
import sys

from ..criteria import classify
from ..funcmodel import from_spec
from ..geometry import generate_lattice
from ..tentnorm import SpaceParams, growth_ratio, lp_norm, tinfq_norm, tpinf_norm, tpq_norm
from .config import Config
from .corpus import standard_corpus
from .report import dumps, emit_plotdata, load_report, summary_lines, write_report
from .suites import SUITES, run_verify


class UsageError(Exception):
    pass


def parse_function(text, what="g_spec"):
    """JSON function spec -> AnalyticFn, with positioned parse errors."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: parse error at line {exc.lineno} column {exc.colno} "
                         f"(char {exc.pos}): {exc.msg}") from None
    try:
        return from_spec(data)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--t", type=float, help="kernel-test exponent (default: per-space)")
    p.add_argument("--aperture", type=float, help="cone aperture zeta")
    p.add_argument("--radial-levels", type=int)
    p.add_argument("--angular-base", type=int)
    p.add_argument("--target-rel-err", type=float)
    p.add_argument("--degree", type=int, help="Taylor truncation degree")
    p.add_argument("--cap", type=float, help="radial cap of the default lattice")
    p.add_argument("--out-dir")
    return p


def _params(p):
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--kind", choices=("T", "S"), default="T")


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="tentops", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify one symbol")
    c.add_argument("g_spec", help='JSON function spec, e.g. \'{"type":"poly","coeffs":[0,1]}\'')
    _params(c)
    c.add_argument("--corpus", action="store_true", help="attach the corpus ratio table")
    c.add_argument("--no-families", action="store_true", help="skip test-family ratios")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("theorem_id", help=", ".join(SUITES))

    n = sub.add_parser("norm", parents=[common], help="evaluate a norm of one function")
    n.add_argument("f_spec")
    n.add_argument("--norm", choices=("lp", "tpinf", "tpq", "tinfq", "growth"), default="lp")
    n.add_argument("--p", type=float, default=2.0)
    n.add_argument("--q", type=float, default=2.0)
    n.add_argument("--alpha", type=float, default=0.0)
    n.add_argument("--n", type=int, default=1)

    la = sub.add_parser("lattice", parents=[common], help="generate an (r, kappa)-lattice")
    la.add_argument("--r", type=float)
    la.add_argument("--kappa", type=float)
    la.add_argument("--output", help="write JSON here instead of stdout")

    r = sub.add_parser("report", parents=[common], help="emit plot data for a saved report")
    r.add_argument("report_json")
    r.add_argument("--plot-dir", help="default: <report dir>/plot")
    return ap


def load_config(args):
    cfg = Config.load(args.config) if args.config else Config()
    return cfg.with_overrides(t=args.t, aperture=args.aperture, radial_levels=args.radial_levels,
                              angular_base=args.angular_base, target_rel_err=args.target_rel_err,
                              degree=args.degree, cap=args.cap, out_dir=args.out_dir)


def cmd_classify(args, cfg):
    g = parse_function(args.g_spec)
    params = SpaceParams(args.p, args.q, args.alpha, args.beta, args.n, args.k, args.kind)
    corpus = standard_corpus(params.p, params.alpha, cfg.seed) if args.corpus else None
    verdict = classify(g, params, corpus, t=cfg.t, spec=cfg.spec(),
                       test_families=not args.no_families)
    out = verdict.to_dict()
    out["config"] = cfg.to_dict()
    text = dumps(out)
    os.makedirs(cfg.out_dir, exist_ok=True)
    with open(os.path.join(cfg.out_dir, "classify.json"), "w") as fh:
        fh.write(text)
    sys.stdout.write(text)
    return 0


def cmd_verify(args, cfg):
    report = run_verify(args.theorem_id, cfg)
    paths = write_report(report, cfg.out_dir)
    print("\n".join(summary_lines(report)))
    print(f"report: {paths[0]}")
    return 0 if report["passed"] else 1


def cmd_norm(args, cfg):
    f = parse_function(args.f_spec, "f_spec")
    spec = cfg.spec()
    out = {"norm": args.norm, "p": args.p, "alpha": args.alpha, "config": cfg.to_dict()}
    if args.norm == "lp":
        r = lp_norm(f, args.p, args.alpha, args.n, cfg.t, spec, full=True)
        out.update(value=r.value, error=r.error, n=args.n)
    elif args.norm == "tpinf":
        val, err, arg = tpinf_norm(f, args.p, args.alpha, None, spec, full=True)
        out.update(value=val, error=err, argmax=[arg.real, arg.imag])
    elif args.norm == "tpq":
        out.update(q=args.q, value=tpq_norm(f, args.p, args.q, args.alpha, spec, zeta=cfg.aperture,
                                            eta_samples=cfg.eta_samples))
    elif args.norm == "tinfq":
        out.update(q=args.q, value=tinfq_norm(f, args.q, cfg.eta_samples, spec, zeta=cfg.aperture))
    else:
        out.update(n=args.n, value=growth_ratio(f, args.p, args.alpha, args.n, spec=spec, t=cfg.t))
    sys.stdout.write(dumps(out))
    return 0


def cmd_lattice(args, cfg):
    r = cfg.lattice_r if args.r is None else args.r
    kappa = cfg.lattice_kappa if args.kappa is None else args.kappa
    Z = generate_lattice(r, kappa, cfg.cap)
    text = Z.to_json() + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"{len(Z)} nodes -> {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_report(args, cfg):
    report = load_report(args.report_json)
    plot_dir = args.plot_dir or os.path.join(os.path.dirname(args.report_json) or ".", "plot")
    paths = emit_plotdata(report, plot_dir)
    print("\n".join(summary_lines(report)))
    print(f"{len(paths) - 1} profile files + manifest -> {plot_dir}")
    return 0 if report.get("passed") else 1


COMMANDS = {"classify": cmd_classify, "verify": cmd_verify, "norm": cmd_norm,
            "lattice": cmd_lattice, "report": cmd_report}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"tentops {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
