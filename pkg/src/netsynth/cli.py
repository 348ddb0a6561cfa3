"""Command-line entry point: ``netsynth check|synth|verify|enumerate|dual``.

Exit codes: 0 ok, 1 input error, 2 not positive-real, 3 canonical network
required, 4 internal verification failure, 5 experiment failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .admittance import CanonicalAdmittance, fid_coefficients, from_ratfunc, is_positive_real, r_k
from .analysis import driving_point_admittance
from .errors import NetsynthError, NotPositiveReal, VerificationError
from .netlist.dual import fid_netlist
from .netlist.io import load_netlist, write_netlist
from .ratfunc import parse_ratfunc
from .ratfunc import scalar as sc

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_PR = 2
EXIT_CANONICAL = 3
EXIT_VERIFY = 4
EXIT_EXPERIMENT = 5


@dataclass
class RunConfig:
    precision: int = sc.DEFAULT_PRECISION
    pr_grid: int = 601
    fit_starts: int = 200
    seed: int = 0
    output_dir: Optional[Path] = None
    format: str = "text"

    def __post_init__(self):
        if self.precision < sc.MIN_PRECISION:
            raise ValueError(f"precision must be at least {sc.MIN_PRECISION}")
        if self.fit_starts < 1:
            raise ValueError("fit_starts must be at least 1")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        precision = args.precision
        if precision is None:
            precision = int(os.environ.get("NETSYNTH_PRECISION", sc.DEFAULT_PRECISION))
        return cls(
            precision=precision,
            fit_starts=args.starts if getattr(args, "starts", None) else 200,
            seed=args.seed,
            output_dir=Path(args.out) if getattr(args, "out", None) else None,
            format="json" if args.json else "text",
        )


class _InputError(Exception):
    pass


def _emit(cfg: RunConfig, report: dict, lines: list[str]) -> None:
    if cfg.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _read_input(args) -> CanonicalAdmittance:
    try:
        if args.coeffs:
            return CanonicalAdmittance.parse(args.coeffs)
        if args.expr:
            return from_ratfunc(parse_ratfunc(args.expr))
    except (ValueError, ArithmeticError) as exc:
        raise _InputError(str(exc)) from None
    raise _InputError("give --coeffs a0,a1,d0,d1,k or --expr '<rational function of s>'")


# --------------------------------------------------------------------------
# subcommands


def cmd_check(args, cfg: RunConfig) -> int:
    from .synthesis import Case, classify

    y = _read_input(args)
    c = classify(y)
    report = c.to_json()
    lines = [
        f"input      {y}",
        f"PR         {'yes' if c.pr.is_pr else 'no (' + str(c.pr.failed_condition) + ')'}",
        f"R_k        {sc.format_scalar(c.rk)}",
        f"case       {c.case.value}",
    ]
    if c.pr.is_pr:
        lines.append(f"<=4 elems  {'yes' if report['four_element'] else 'no'}")
    _emit(cfg, report, lines)
    return EXIT_OK if c.case is not Case.NOT_PR else EXIT_NOT_PR


def cmd_synth(args, cfg: RunConfig) -> int:
    from .synthesis import synthesize

    y = _read_input(args)
    try:
        result = synthesize(y)
    except NotPositiveReal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PR
    except VerificationError as exc:
        print(f"error: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    report = result.classification.to_json()
    real = result.realization
    lines = [f"input      {y}", f"case       {result.case.value}",
             f"R_k        {sc.format_scalar(result.classification.rk)}"]
    if real is None:
        report.update(netlist_file=None, element_count=None, verified=None)
        lines.append("no network of at most five elements: canonical form required")
        _emit(cfg, report, lines)
        return EXIT_CANONICAL
    text = write_netlist(real.netlist)
    path = None
    if cfg.output_dir is not None:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        path = cfg.output_dir / f"{real.netlist.name or 'network'}.net"
        path.write_text(text, encoding="utf-8")
        (cfg.output_dir / "report.json").write_text(
            json.dumps({**report, "netlist_file": str(path), "element_count": real.element_count,
                        "verified": real.verified}, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    report.update(netlist_file=str(path) if path else None, element_count=real.element_count,
                  verified=real.verified, netlist=text)
    lines += [f"elements   {real.element_count}", f"verified   {real.verified}", "", text.rstrip()]
    _emit(cfg, report, lines)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    try:
        n = load_netlist(args.netlist)
    except OSError as exc:
        raise _InputError(str(exc)) from None
    res = driving_point_admittance(n)
    report = res.to_json()
    lines = [f"admittance {res.y.to_string()}", f"degree     {res.degree}"]
    if res.canonical is not None:
        y = res.canonical
        verdict = is_positive_real(y)
        report.update(r_k=sc.format_scalar(r_k(y)), pr=verdict.is_pr)
        lines += [f"canonical  {y}", f"R_k        {sc.format_scalar(r_k(y))}",
                  f"PR         {'yes' if verdict.is_pr else 'no'}"]
    else:
        lines.append("canonical  (admittance is outside the family)")
    _emit(cfg, report, lines)
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    from .oracle.experiments import necessity_experiment

    count = args.trials if args.claim == "lemma9" else args.instances
    starts = args.starts if args.starts else 100
    report = necessity_experiment(args.claim, count, cfg.seed, starts)
    data = report.to_json()
    lines = [f"{report.claim}: {'PASS' if report.passed else 'FAIL'}",
             json.dumps(report.summary, sort_keys=True)]
    for row in report.skeletons:
        if "min" in row:
            lines.append(f"  {row['skeleton']:<24} {row['role']:<9} min {row['min']:.3e}  "
                         f"median {row['median']:.3e}")
    if not report.passed:
        lines.append("counterexamples:")
        lines += [f"  {json.dumps(c, sort_keys=True)}" for c in report.counterexamples[:20]]
    _emit(cfg, data, lines)
    return EXIT_OK if report.passed else EXIT_EXPERIMENT


def cmd_dual(args, cfg: RunConfig) -> int:
    if args.netlist:
        try:
            n = load_netlist(args.netlist)
        except OSError as exc:
            raise _InputError(str(exc)) from None
        text = write_netlist(fid_netlist(n))
        _emit(cfg, {"netlist": text}, [text.rstrip()])
        return EXIT_OK
    y = _read_input(args)
    d = fid_coefficients(y)
    _emit(cfg, {"input": y.to_json(), "dual": d.to_json()}, [f"dual       {d}"])
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help="BigReal significant digits (default 50, env NETSYNTH_PRECISION)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--coeffs", help="a0,a1,d0,d1,k as integers, p/q or decimals")
    source.add_argument("--expr", help="rational function of s, e.g. '(2s^2+s+1)/(s^3+s^2+s)'")

    p = argparse.ArgumentParser(prog="netsynth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common, source], help="positive-real test and case")

    s = sub.add_parser("synth", parents=[common, source], help="build and verify a network")
    s.add_argument("--out", help="directory for the netlist file and report.json")

    v = sub.add_parser("verify", parents=[common], help="admittance of a netlist file")
    v.add_argument("netlist")

    e = sub.add_parser("enumerate", parents=[common], help="run a realizability experiment")
    e.add_argument("claim", choices=["thm2", "lemma8", "lemma9", "lemma10", "lemma14"])
    e.add_argument("--trials", type=int, default=500)
    e.add_argument("--instances", type=int, default=None)
    e.add_argument("--starts", type=int, default=None)

    d = sub.add_parser("dual", parents=[common, source], help="frequency-inverse dual")
    d.add_argument("--netlist", help="netlist file to dualize instead of coefficients")
    return p


COMMANDS = {
    "check": cmd_check,
    "synth": cmd_synth,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "dual": cmd_dual,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        sc.set_precision(cfg.precision)
        return COMMANDS[args.command](args, cfg)
    except (_InputError, ValueError, NetsynthError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        sc.set_precision(sc.DEFAULT_PRECISION)


if __name__ == "__main__":
    sys.exit(main())
