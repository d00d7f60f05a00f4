"""Command-line driver: weyldim {compute, verify, basis, oracle-grid} <file>.

Exit codes: 0 success, 1 unreadable or malformed input, 2 an internal
identity check failed, 3 verification found a mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .dimpoly import (
    QUANTIFIERS,
    CharPolyReport,
    analyze,
    count_U_grid,
    empirical_stability,
    quantifier_discrepancy,
    verify_window,
)
from .errors import CertificationError, ParseError, StepBudgetExceeded
from .groebner import certify_xd, check_closure
from .numpoly import NumPoly2
from .oracle import dim_grid, single_order_basis
from .presentation import Presentation, load, render_report
from .reduction import DEFAULT_STEP_BUDGET, normal_form
from .terms import rho

EXIT_OK, EXIT_PARSE, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3


class InternalCheckFailed(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors count as bad input, keeping exit code 2 for internal failures
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="weyldim", description="Bivariate dimension polynomials of Weyl-algebra modules.")
    common = _ArgParser(add_help=False)
    common.add_argument("file", help="presentation file")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized certification probes")
    common.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET, help="reduction step limit")
    common.add_argument("--quantifier", choices=QUANTIFIERS, default="all",
                        help="diagnostic: 'any' counts a term when some decomposition is expensive")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    c = sub.add_parser("compute", parents=[common], help="print phi, omega, omega_bar and invariants")
    c.add_argument("--json", action="store_true", help="JSON output")
    c.add_argument("--bernstein", action="store_true", help="also compute the Bernstein polynomial psi")

    v = sub.add_parser("verify", parents=[common], help="compare phi, enumeration and the oracle")
    v.add_argument("--window", type=int, default=4, help="side of the square verification window")
    v.add_argument("--corrupt-phi", action="store_true", help=argparse.SUPPRESS)

    sub.add_parser("basis", parents=[common], help="print the certified (x,d)-Groebner basis")

    g = sub.add_parser("oracle-grid", parents=[common], help="dim M_rs by linear algebra")
    g.add_argument("--max-bidegree", type=int, required=True, help="grid side R: 0 <= r, s <= R")
    g.add_argument("--json", action="store_true", help="JSON output")
    return p


def _report(pres: Presentation, args, bernstein: bool) -> CharPolyReport:
    report = analyze(
        pres.relations, pres.n, pres.m, bernstein=bernstein, quantifier=args.quantifier, step_budget=args.step_budget
    )
    G = report.basis
    if report.phi != report.omega + report.omega_bar:
        raise InternalCheckFailed("phi differs from omega + omega_bar")
    for f in pres.relations:
        if normal_form(f, G.elements).remainder:
            raise InternalCheckFailed(f"relation {f} has nonzero normal form")
    if G.representation is not None and not G.verify_representation():
        raise InternalCheckFailed("tracked representation of the basis does not expand correctly")
    lo, hi = verify_window(G)
    report.stability_point = empirical_stability(report.phi, count_U_grid(G, hi, hi, args.quantifier), hi)
    report.extra["seed"] = args.seed
    return report


def cmd_compute(pres: Presentation, args, out) -> int:
    report = _report(pres, args, bernstein=args.bernstein)
    out.write(render_report(report, "json" if args.json else "text"))
    return EXIT_OK


def cmd_basis(pres: Presentation, args, out) -> int:
    report = _report(pres, args, bernstein=False)
    G = report.basis
    out.write(f"(x,d)-Groebner basis of {len(pres.relations)} relation(s): {len(G)} element(s)\n")
    for k, g in enumerate(G.elements, 1):
        out.write(f"g{k} = {g}\n")
        out.write(f"  u = {g.u}  v = {g.v}  rho = {rho(g)}\n")
    if len(G):
        bad = check_closure(G)
        if bad:
            raise InternalCheckFailed(f"S-polynomial pairs not reducing to zero: {bad}")
        cert = certify_xd(G, count=50, seed=args.seed)
        out.write(f"certification: {cert.checked} probes reduced to zero, {cert.skipped} zero probes skipped (seed {args.seed})\n")
    else:
        out.write("certification: empty basis (free module)\n")
    return EXIT_OK


def cmd_verify(pres: Presentation, args, out) -> int:
    report = _report(pres, args, bernstein=False)
    G = report.basis
    phi = report.phi
    if args.corrupt_phi:
        phi = phi + NumPoly2([[1]])
    lo, hi = verify_window(G, args.window)
    enum = count_U_grid(G, hi, hi, args.quantifier)
    oracle = dim_grid(pres.relations, single_order_basis(pres.relations), hi, hi, pres.n, pres.m)
    out.write(f"window [{lo},{hi}]^2; enumeration and oracle on [0,{hi}]^2\n")
    out.write(f"{'r':>3} {'s':>3} {'phi':>8} {'enum':>8} {'oracle':>8}\n")
    witness = None
    for r in range(hi + 1):
        for s in range(hi + 1):
            e, o = enum[(r, s)], oracle[(r, s)]
            in_window = r >= lo and s >= lo
            p = phi(r, s)
            ok = e == o and (not in_window or p == e)
            if in_window:
                out.write(f"{r:>3} {s:>3} {p:>8} {e:>8} {o:>8}{'' if ok else '  MISMATCH'}\n")
            if not ok and witness is None:
                witness = (r, s, p, e, o)
    sp = empirical_stability(phi, enum, hi)
    out.write(f"empirical stability point: {sp}\n")
    disc = quantifier_discrepancy(G, hi, hi)
    if disc:
        r, s, a, b = disc[-1]
        out.write(f"quantifier diagnostic: the existential reading differs at {len(disc)} grid point(s), e.g. ({r},{s}): {a} vs {b}\n")
    if witness is not None:
        r, s, p, e, o = witness
        out.write(f"MISMATCH at (r,s)=({r},{s}): phi={p} enumeration={e} oracle={o}\n")
        if e != o and args.quantifier != "all":
            out.write("quantifier diagnostic: enumeration under the existential reading disagrees with the oracle\n")
        return EXIT_MISMATCH
    out.write("all agree\n")
    return EXIT_OK


def cmd_oracle_grid(pres: Presentation, args, out) -> int:
    R = args.max_bidegree
    grid = dim_grid(pres.relations, single_order_basis(pres.relations), R, R, pres.n, pres.m)
    if args.json:
        rows = [[grid[(r, s)] for s in range(R + 1)] for r in range(R + 1)]
        out.write(json.dumps({"n": pres.n, "m": pres.m, "max_bidegree": R, "dim": rows}, indent=2) + "\n")
        return EXIT_OK
    out.write("r\\s " + " ".join(f"{s:>6}" for s in range(R + 1)) + "\n")
    for r in range(R + 1):
        out.write(f"{r:>3} " + " ".join(f"{grid[(r, s)]:>6}" for s in range(R + 1)) + "\n")
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "basis": cmd_basis, "oracle-grid": cmd_oracle_grid}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "window", 1) < 1:
        parser.error("--window must be at least 1")
    if getattr(args, "max_bidegree", 0) < 0:
        parser.error("--max-bidegree must be nonnegative")
    try:
        pres = load(args.file)
    except OSError as exc:
        err.write(f"error: cannot read {args.file}: {exc}\n")
        return EXIT_PARSE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    try:
        return COMMANDS[args.command](pres, args, out)
    except (InternalCheckFailed, CertificationError, StepBudgetExceeded) as exc:
        err.write(f"internal check failed: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
