"""
Command-line front end.

Exit codes: 0 success / agreement with the published claim, 1 a computation
that disagrees with the claim, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checks
from .algebra import Sector, bracket_elements, half
from .findim import SPAN_U, build_A, invariant_subspaces, verify_axioms
from .module_action import ModuleVector, WhittakerData
from .parser import ParseError, parse, to_lie, to_vector
from .solver import (
    CONSISTENT,
    DEFAULT_BUDGET,
    PROPER,
    canonical_span,
    degenerate_submodule_probe,
    simplicity_report,
    whittaker_kernel,
)

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def vector_json(v: ModuleVector) -> list[dict]:
    return [
        {
            "monomial": str(m),
            "lambda": list(m.lam),
            "mu": list(m.mu),
            "coefficient": str(x),
        }
        for m, x in v
    ]


def common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--sector", type=Sector.parse, default=Sector.NS, help="ns or r")
    p.add_argument("--a", type=rational, default=Fraction(0), help="psi(L_1)")
    p.add_argument("--b", type=rational, default=Fraction(0), help="psi(L_2)")
    p.add_argument("--c", type=rational, default=Fraction(0), help="central charge")
    p.add_argument("--fdeg-max", type=int, default=None, help="doubled filtration bound")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="probe step budget")
    p.add_argument("--index-bound", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    parent = common_flags()
    ap = argparse.ArgumentParser(prog="supervir", description=__doc__.strip().splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    b = sub.add_parser("bracket", parents=[parent], help="super-bracket of two expressions")
    b.add_argument("left")
    b.add_argument("right")
    a = sub.add_parser("act", parents=[parent], help="evaluate a module expression such as 'G(3/2)G(1/2)w'")
    a.add_argument("expr")
    sub.add_parser("kernel", parents=[parent], help="all Whittaker vectors in a truncation")
    sub.add_parser("simplicity", parents=[parent], help="cyclicity-based simplicity probe")
    sub.add_parser("degenerate-probe", parents=[parent], help="Ramond degenerate Whittaker vector G_1 w")
    sub.add_parser("findim-verify", parents=[parent], help="check the (1|1)-dimensional module A(psi)")
    sub.add_parser("selfcheck", parents=[parent], help="exhaustive bracket identities plus seeded action checks")
    return ap


def whittaker_data(args) -> WhittakerData:
    return WhittakerData(args.sector, args.a, args.b, args.c)


def expected_kernel(W: WhittakerData) -> list[ModuleVector] | None:
    s = W.sector
    w = ModuleVector.w(s)
    if W.is_trivial:
        return None
    if s is Sector.R:
        return [w, ModuleVector.monomial(s, (), (-1,))]
    if W.b != 0:
        return [w]
    return [w, ModuleVector.monomial(s, (), (0,))]


def cmd_bracket(args):
    x = to_lie(parse(args.left, args.sector))
    y = to_lie(parse(args.right, args.sector))
    z = bracket_elements(x, y)
    return 0, {"left": str(x), "right": str(y), "bracket": str(z)}, str(z)


def cmd_act(args):
    W = whittaker_data(args)
    expr = parse(args.expr, args.sector)
    if not expr.is_vector:
        raise UsageError("act needs a module expression whose terms end in 'w'")
    v = to_vector(expr, W)
    return 0, {"input": str(expr), "vector": vector_json(v), "text": str(v)}, str(v)


def cmd_kernel(args):
    W = whittaker_data(args)
    fmax = 8 if args.fdeg_max is None else args.fdeg_max
    rep = whittaker_kernel(W, fmax)
    expected = expected_kernel(W)
    agrees = None
    if expected is not None:
        agrees = canonical_span(expected, W.sector) == canonical_span(rep.kernel_basis, W.sector)
    results = {
        "fdeg_max": fmax,
        "truncation_size": len(rep.truncation),
        "n_max": rep.n_max,
        "generators_checked": [str(g) for g in rep.generators_checked],
        "codomain_size": rep.codomain_size,
        "kernel_dimension": rep.dimension,
        "kernel_basis": [vector_json(v) for v in rep.kernel_basis],
        "verified": rep.verified,
        "claimed_span": None if expected is None else [str(v) for v in expected],
        "agrees_with_claim": agrees,
    }
    lines = [
        f"W_{'1/2' if W.sector is Sector.NS else '0'}(psi=(a={W.a}, b={W.b}), c={W.c}), fdeg <= {half(fmax)}",
        f"truncation: {len(rep.truncation)} monomials, generators up to index {rep.n_max}",
        f"kernel dimension: {rep.dimension}",
    ]
    lines += [f"  {v.math_str()}" for v in rep.kernel_basis]
    if expected is not None:
        lines.append(f"claimed span: {{{', '.join(v.math_str() for v in expected)}}}; agrees: {agrees}")
    return (1 if agrees is False else 0), results, "\n".join(lines)


def expected_verdict(W: WhittakerData) -> str:
    if W.sector is Sector.R and W.b == 0:
        return PROPER
    return CONSISTENT


def cmd_simplicity(args):
    W = whittaker_data(args)
    if W.is_trivial:
        raise UsageError("trivial psi: the Verma-module case is out of scope")
    fmax = 4 if args.fdeg_max is None else args.fdeg_max
    rep = simplicity_report(W, fmax, args.budget)
    want = expected_verdict(W)
    failures = [
        {"start": str(p.start), "whittaker": p.is_whittaker, "closed": p.report.closed}
        for p in rep.failures
    ]
    results = {
        "fdeg_max": fmax,
        "verdict": rep.verdict,
        "expected_verdict": want,
        "kernel_dimension": rep.kernel.dimension,
        "probes": len(rep.probes),
        "reached": sum(p.report.reached_w for p in rep.probes),
        "certificates_replayed": all(p.report.replay(W) for p in rep.probes if p.report.reached_w),
        "failures": failures,
        "witness": None if rep.witness is None else str(rep.witness),
        "degenerate_ramond": rep.degenerate,
        "note": rep.note,
    }
    lines = [
        f"verdict: {rep.verdict} (expected {want})",
        f"probes reaching w: {results['reached']}/{len(rep.probes)}",
    ]
    if rep.witness is not None:
        lines.append(f"proper submodule generated by Whittaker vector {rep.witness.math_str()}")
    lines.append(rep.note)
    ok = rep.verdict == want and results["certificates_replayed"]
    return (0 if ok else 1), results, "\n".join(lines)


def cmd_degenerate(args):
    W = whittaker_data(args)
    fmax = 8 if args.fdeg_max is None else args.fdeg_max
    try:
        rep = degenerate_submodule_probe(W, fmax, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc))
    results = {
        "fdeg_max": fmax,
        "is_whittaker": rep.is_whittaker,
        "w_excluded": rep.w_excluded,
        "span_dim": rep.span_dim,
        "inside_g1_sector": rep.inside_g1_sector,
        "budget_spent": rep.budget_spent,
        "label": rep.label,
    }
    text = (
        f"G_1 w is a Whittaker vector: {rep.is_whittaker}\n"
        f"w outside the explored span (dim {rep.span_dim}): {rep.w_excluded} [{rep.label}]"
    )
    return (0 if rep.is_whittaker and rep.w_excluded else 1), results, text


def expected_subspaces(W: WhittakerData) -> list[str]:
    if W.is_trivial:
        return [SPAN_U]
    if W.sector is Sector.R and W.b == 0:
        return [SPAN_U]
    return []


def cmd_findim(args):
    W = whittaker_data(args)
    bound = 8 if args.index_bound is None else args.index_bound
    M = build_A(W.sector, W, bound)
    ax = verify_axioms(M, bound)
    subs = invariant_subspaces(M, bound)
    want = expected_subspaces(W)
    results = {
        "index_bound": bound,
        "axioms": "pass" if ax is True else f"counterexample {ax}",
        "invariant_subspaces": subs,
        "simple": not subs,
        "expected_invariant_subspaces": want,
    }
    text = f"axioms: {results['axioms']}\ninvariant subspaces: {subs or 'none (simple)'}"
    return (0 if ax is True and subs == want else 1), results, text


def cmd_selfcheck(args):
    dmax = 2 * (6 if args.index_bound is None else args.index_bound)
    W = whittaker_data(args)
    results = {"doubled_index_range": [-dmax, dmax], "seed": args.seed}
    ok = True
    for s in Sector:
        anti = checks.antisymmetry_failures(s, dmax)
        jac = checks.jacobi_failures(s, dmax)
        results[f"{s}_antisymmetry_failures"] = len(anti)
        results[f"{s}_jacobi_failures"] = len(jac)
        ok &= not anti and not jac
    leib = checks.leibniz_failures(W, 100, args.seed)
    results["leibniz_failures"] = len(leib)
    ok &= not leib
    text = "\n".join(f"{k}: {v}" for k, v in results.items())
    return (0 if ok else 1), results, text


COMMANDS = {
    "bracket": cmd_bracket,
    "act": cmd_act,
    "kernel": cmd_kernel,
    "simplicity": cmd_simplicity,
    "degenerate-probe": cmd_degenerate,
    "findim-verify": cmd_findim,
    "selfcheck": cmd_selfcheck,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code, results, text = COMMANDS[args.command](args)
    except (ParseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "sector": str(args.sector),
            "psi": {"a": str(args.a), "b": str(args.b)},
            "c": str(args.c),
            "results": results,
        }
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
