"""Command-line front end.

Every command writes a RunReport as JSON to stdout (pretty text with
--pretty).  Exit status: 0 on success, 1 on a mathematical failure
(nonzero residual, divergent quadrature, solver soundness failure),
2 on a usage error.  The report shape is fixed by
schema/runreport.schema.json.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .derive import ALL_LEMMA_TAGS, reproduce_lemma, run_pipeline
from .exactalg import Coeff, GaussianRational
from .mellin import MellinInversionError, inverse_mellin, mellin
from .oracle import QuadratureDivergenceError, apply_numeric, compare, mellin_numeric
from .parser import (
    ParseError,
    parse_basis_vector,
    parse_radial_expr,
    parse_rational_expr,
    parse_symbol_expr,
)
from .radial import RadialFunction
from .toeplitz import (
    ANALYTIC,
    CONJUGATE,
    BasisVector,
    HarmonicVector,
    apply_quasi,
    apply_symbol,
    commutator_residual,
    u_symbol,
    verify_commute,
)

SCHEMA_ID = "htoeplitz/runreport/1"


class MathFailure(Exception):
    """A well-posed computation with a negative mathematical verdict."""


def _report(command, inputs, result, warnings=(), ok=True):
    return {
        "schema": SCHEMA_ID,
        "command": command,
        "inputs": inputs,
        "result": result,
        "warnings": list(warnings),
        "status": "ok" if ok else "fail",
    }


def _parse_binding(text: str):
    name, _, val = text.partition("=")
    if not name or not val:
        raise argparse.ArgumentTypeError(f"binding must look like name=a+bi, got {text!r}")
    try:
        z = complex(val.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read {val!r} as a complex number") from None
    return name.strip(), z


def _bindings(args) -> dict:
    return dict(getattr(args, "bind", None) or [])


def _vector_json(w: HarmonicVector) -> dict:
    return w.to_json()


# ---------------------------------------------------------------------------
# command bodies: each returns (result, warnings, ok, pretty_lines)


def _cmd_mellin(args):
    phi = parse_radial_expr(args.expr)
    a = mellin(phi)
    result = {"input": str(phi), "result": a.render(), "rational": a.to_json()}
    return result, [], True, [f"{phi}  ->  {a.render()}"]


def _cmd_invmellin(args):
    a = parse_rational_expr(args.expr)
    try:
        phi = inverse_mellin(a)
    except MellinInversionError as e:
        raise MathFailure(str(e)) from None
    result = {"input": a.render(), "result": str(phi), "radial": phi.to_json()}
    return result, [], True, [f"{a.render()}  ->  {phi}"]


def _cmd_apply(args):
    f = parse_symbol_expr(args.f)
    v = parse_basis_vector(args.v)
    out = apply_symbol(f, HarmonicVector.basis(v))
    result = {"f": str(f), "v": v.label(), "image": _vector_json(out)}
    return result, [], True, [f"T_f {v.label()} = {out}"]


def _cmd_commutator(args):
    f = parse_symbol_expr(args.f)
    u = parse_symbol_expr(args.u)
    v = parse_basis_vector(args.v)
    res = commutator_residual(f, u, v)
    ok = res.is_zero()
    result = {
        "f": str(f),
        "u": str(u),
        "v": v.label(),
        "residual": _vector_json(res),
        "zero": ok,
    }
    line = f"[T_f, T_u] {v.label()} = {res}"
    return result, [], ok, [line]


def _cmd_verify(args):
    f = parse_symbol_expr(args.f)
    u = parse_symbol_expr(args.u)
    report = verify_commute(f, u, args.nmax)
    result = report.to_json()
    result["f"] = str(f)
    result["u"] = str(u)
    lines = [f"commutes: {report.commutes} (threshold n0* = {report.threshold})"]
    for v, res in report.witnesses:
        lines.append(f"witness {v.label()}: {res}")
    return result, [], report.commutes, lines


def _cmd_derive(args):
    u = u_symbol(args.L)
    report = run_pipeline(u, args.N, args.K, n_max=args.nmax)
    result = report.to_json()
    warnings = list(report.notes)
    lines = [
        f"u truncated at L = {args.L}; N_start = {args.N}, K_max = {args.K}",
        f"effective top degree: {report.effective_top_degree}",
        f"survivors: {', '.join(report.survivors) or '(none)'}",
        f"f = {report.final_symbol}",
        f"commutes: {report.commutes}",
    ]
    return result, warnings, report.commutes, lines


def _cmd_verify_paper(args):
    tags = args.tags or ALL_LEMMA_TAGS
    entries = []
    warnings = []
    sound = True
    for tag in tags:
        rep = reproduce_lemma(tag)
        entries.append(rep.to_json())
        if not rep.derived_satisfies_equation:
            sound = False
            warnings.append(f"{tag}: derived formula fails its functional equation")
        if not rep.match:
            warnings.append(
                f"{tag}: printed formula differs from the mechanized one; "
                f"printed satisfies the equation: {rep.printed_satisfies_equation}"
            )
    result = {"lemmas": entries, "sound": sound}
    lines = []
    for rep in entries:
        verdict = "match" if rep["match"] else "MISMATCH"
        lines.append(f"{rep['tag']}: {verdict}")
    return result, warnings, sound, lines


def _random_radial(rng: random.Random) -> RadialFunction:
    phi = RadialFunction.zero
    for _ in range(rng.randint(1, 3)):
        a = rng.randint(-1, 6)
        b = rng.randint(0, 2)
        c = GaussianRational(
            Fraction(rng.randint(-8, 8), rng.randint(1, 4)),
            Fraction(rng.randint(-8, 8), rng.randint(1, 4)),
        )
        phi = phi + RadialFunction.term(Coeff.const(c), a, b)
    return phi


def _cmd_oracle_check(args):
    rng = random.Random(args.seed)
    bindings = _bindings(args)
    failures = []
    worst = 0.0
    for case in range(args.cases):
        k = rng.randint(-4, 4)
        phi = _random_radial(rng)
        n = rng.randint(0, 8)
        side = rng.choice([ANALYTIC, CONJUGATE])
        v = BasisVector(side, n)
        sym = apply_quasi(k, phi, v)
        try:
            num = apply_numeric(k, phi, v, bindings)
        except QuadratureDivergenceError as e:
            failures.append({"case": case, "error": str(e)})
            continue
        cmp = compare(sym, num, bindings, tol=args.tol)
        worst = max(worst, cmp["max_diff"])
        if not cmp["ok"]:
            failures.append(
                {
                    "case": case,
                    "k": k,
                    "phi": str(phi),
                    "v": v.label(),
                    "max_diff": cmp["max_diff"],
                    "worst_entry": cmp["worst_entry"],
                }
            )
    ok = not failures
    result = {
        "cases": args.cases,
        "seed": args.seed,
        "tol": args.tol,
        "max_diff": worst,
        "failures": failures,
    }
    lines = [
        f"{args.cases} randomized cases, seed {args.seed}",
        f"max engine/oracle difference: {worst:.3e} (tolerance {args.tol:g})",
        f"failures: {len(failures)}",
    ]
    return result, [], ok, lines


# ---------------------------------------------------------------------------


def _default_seed() -> int:
    env = os.environ.get("HTOEPLITZ_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htoeplitz",
        description="Exact Toeplitz-operator calculus on the harmonic Bergman space.",
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mellin", help="Mellin transform of a radial function")
    p.add_argument("expr", help="radial expression, e.g. 'r^4*ln(r)'")
    p.set_defaults(body=_cmd_mellin)

    p = sub.add_parser("invmellin", help="inverse Mellin transform of a rational function")
    p.add_argument("expr", help="rational expression in z, e.g. '-1/(z+4)^2'")
    p.set_defaults(body=_cmd_invmellin)

    p = sub.add_parser("apply", help="apply a Toeplitz operator to a basis vector")
    p.add_argument("--f", required=True, help="symbol expression")
    p.add_argument("--v", required=True, help="basis vector: 1, z^n or zbar^n")
    p.set_defaults(body=_cmd_apply)

    p = sub.add_parser("commutator", help="commutator residual on one basis vector")
    p.add_argument("--f", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(body=_cmd_commutator)

    p = sub.add_parser("verify", help="verify [T_f, T_u] = 0 exactly")
    p.add_argument("--f", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--nmax", type=int, default=20)
    p.set_defaults(body=_cmd_verify)

    p = sub.add_parser("derive", help="derive all symbols commuting with T_u")
    p.add_argument("--L", type=int, required=True, help="truncation degree of u")
    p.add_argument("--N", type=int, required=True, help="starting top degree of f")
    p.add_argument("--K", type=int, required=True, help="deepest conjugate degree")
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(body=_cmd_derive)

    p = sub.add_parser("verify-paper", help="re-derive the published formulas and diff")
    p.add_argument("--tags", nargs="*", help="restrict to these lemma tags")
    p.set_defaults(body=_cmd_verify_paper)

    p = sub.add_parser("oracle-check", help="randomized engine-vs-quadrature battery")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--bind", type=_parse_binding, action="append", metavar="NAME=A+BI")
    p.set_defaults(body=_cmd_oracle_check)

    return parser


def _inputs_echo(args) -> dict:
    skip = {"command", "body", "pretty"}
    out = {}
    for key, val in vars(args).items():
        if key in skip or val is None:
            continue
        if key == "bind":
            out[key] = {name: [z.real, z.imag] for name, z in val}
        else:
            out[key] = val
    return out


def _guard_leading_minus(argv):
    """Insert '--' so expressions like '-1/(z+4)^2' are not read as flags."""
    out = list(argv)
    for i, tok in enumerate(out):
        if tok in ("mellin", "invmellin") and "--" not in out:
            rest = out[i + 1:]
            if any(t.startswith("-") and t not in ("-h", "--help") for t in rest):
                return out[: i + 1] + ["--"] + rest
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_guard_leading_minus(sys.argv[1:] if argv is None else argv))
    try:
        result, warnings, ok, lines = args.body(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except MathFailure as e:
        report = _report(args.command, _inputs_echo(args), {"error": str(e)}, [], ok=False)
        print(json.dumps(report, indent=2))
        return 1
    report = _report(args.command, _inputs_echo(args), result, warnings, ok=ok)
    if args.pretty:
        for line in lines:
            print(line)
        for w in warnings:
            print(f"warning: {w}")
        print(f"status: {report['status']}")
    else:
        print(json.dumps(report, indent=2))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
