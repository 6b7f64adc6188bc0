"""Command line front end.

Every subcommand prints one JSON object on stdout.  Rationals are written as
``"p/q"`` strings, polynomials in canonical form.  Exit status is 0 whenever
a result was computed (whatever the verdict), 2 for malformed input and 3
when a produced witness fails its own re-check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .certificate import (
    MalformedCertificate,
    certificate_from_json,
    certificate_to_json,
    verify_certificate,
)
from .foliation import (
    FoliationError,
    RetryBudgetExhausted,
    VectorField,
    annihilator_fields,
    f_from_matrix,
    gamma_construct,
    linear_part,
    mp_classify,
    omega_contract,
    parse_boundary,
    parse_vector_field,
    select_lambda,
    tangency_determinant,
    validate_pair,
)
from .lp import LPError
from .matrix import HypothesisViolated, characteristic_polynomial, classify_special, is_nilpotent, parse_matrix
from .newton import lct_monomial, lct_upper_bound_from_support, parse_ideal
from .poly import Infinity, ParseError, format_fraction, infer_dimension, parse_polynomial, weighted_lowest_part
from .selfcheck import SUITES, run_suite
from .wps import (
    NotEquiWeighted,
    annihilator_2d,
    dehomogenize,
    euler_contraction,
    foliation_canonical_degree,
    form_weight,
    parse_form,
    parse_weights,
    self_intersection,
)

__all__ = ["main", "build_parser", "InvariantFailure"]


class InvariantFailure(RuntimeError):
    """A result did not survive its own re-verification."""


def _fracs(xs) -> list[str]:
    return [format_fraction(x) for x in xs]


def _rationals(text: str) -> tuple[Fraction, ...]:
    out = []
    pos = 0
    for tok in text.split(","):
        try:
            out.append(Fraction(tok.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {tok.strip()!r}", pos, text) from None
        pos += len(tok) + 1
    return tuple(out)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}", 0, text) from None


def _field(args) -> VectorField:
    return parse_vector_field(args.field, args.vars)


def _poly(text: str, n: int | None) -> object:
    return parse_polynomial(text, n if n is not None else infer_dimension(text))


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise InvariantFailure(what)


def _lct_json(res) -> dict:
    if isinstance(res, Infinity):
        return {"lct": "inf"}
    return {
        "lct": format_fraction(res.value),
        "membership": {"coefficients": _fracs(res.coefficients), "slack": _fracs(res.slack)},
        "weight": list(res.weight),
        "generic": res.generic,
    }


# ---------------------------------------------------------------------------
# subcommands

def cmd_lct(args) -> dict:
    ideal = parse_ideal(args.ideal, args.vars if args.vars is not None else infer_dimension(args.ideal))
    res = lct_monomial(ideal)
    if not isinstance(res, Infinity):
        _require(res.verify(), "lct witness failed to verify")
    return {"ideal": ideal.to_text(), "vars": ideal.dimension, **_lct_json(res)}


def cmd_nilpotent(args) -> dict:
    A = parse_matrix(args.matrix)
    return {"matrix": A.to_text(), "nilpotent": is_nilpotent(A)}


def cmd_cycle_form(args) -> dict:
    A = parse_matrix(args.matrix)
    cls = classify_special(A)
    out = {"matrix": A.to_text(), "classification": cls.tag}
    if cls.is_cycle_form:
        _require(cls.reassemble(A.order) == A, "cycle form does not reassemble the matrix")
        out["permutation"] = list(cls.permutation)
        out["cycle_entries"] = _fracs(cls.cycle_entries)
        out["permuted"] = A.permuted(cls.permutation).to_text()
    out["characteristic_polynomial"] = str(characteristic_polynomial(A))
    return out


def cmd_linear_part(args) -> dict:
    v = _field(args)
    A = linear_part(v)
    return {"field": v.to_text(), "linear_part": A.to_text(), "nilpotent": is_nilpotent(A)}


def cmd_mp_check(args) -> dict:
    v = _field(args)
    verdict = mp_classify(v)
    out = {"field": v.to_text(), "verdict": verdict.tag}
    if verdict.linear_part is not None:
        out["linear_part"] = verdict.linear_part.to_text()
    return out


def cmd_validate_pair(args) -> dict:
    v = _field(args)
    delta = parse_polynomial(args.delta, v.dimension)
    return {"field": v.to_text(), "delta": str(delta), "valid": validate_pair(v, delta)}


def cmd_tangency(args) -> dict:
    w = _field(args)
    if args.boundary is not None:
        if args.vs is not None or args.lam is None:
            raise argparse.ArgumentTypeError("--boundary needs --lambda and excludes --vs")
        vs = annihilator_fields(_rationals(args.lam), parse_boundary(args.boundary, w.dimension))
    elif args.vs is not None:
        vs = [parse_vector_field(t, w.dimension) for t in args.vs.split(";")] if args.vs.strip() else []
    else:
        raise argparse.ArgumentTypeError("give either --vs or --lambda with --boundary")
    det = tangency_determinant(w, vs)
    return {"field": w.to_text(), "vs": [u.to_text() for u in vs], "determinant": str(det)}


def cmd_omega(args) -> dict:
    v = _field(args)
    lam = _rationals(args.lam)
    R = parse_boundary(args.boundary, v.dimension)
    return {
        "field": v.to_text(),
        "lambda": _fracs(lam),
        "boundary": sorted(R),
        "contraction": str(omega_contract(v, lam, R)),
    }


def cmd_f_from_matrix(args) -> dict:
    A = parse_matrix(args.matrix)
    lam = _rationals(args.lam)
    R = parse_boundary(args.boundary, A.order)
    return {"matrix": A.to_text(), "lambda": _fracs(lam), "boundary": sorted(R), "f": str(f_from_matrix(A, lam, R))}


def cmd_select_lambda(args) -> dict:
    A = parse_matrix(args.matrix)
    R = parse_boundary(args.boundary, A.order)
    lam, cert = select_lambda(A, R, args.seed)
    f = f_from_matrix(A, lam, R)
    cert_json = certificate_to_json(cert)
    _require(verify_certificate(f, certificate_from_json(cert_json)), "certificate failed to verify")
    bound = lct_upper_bound_from_support(f)
    return {
        "matrix": A.to_text(),
        "boundary": sorted(R),
        "seed": args.seed,
        "lambda": _fracs(lam),
        "f": str(f),
        "certificate": cert_json,
        "verified": True,
        "support_lct_bound": format_fraction(bound.value),
    }


def cmd_gamma(args) -> dict:
    v = _field(args)
    R = parse_boundary(args.boundary, v.dimension)
    delta = parse_polynomial(args.delta, v.dimension) if args.delta is not None else None
    res = gamma_construct(v, R, delta, seed=args.seed)
    cert_json = certificate_to_json(res.certificate)
    _require(verify_certificate(res.gamma, certificate_from_json(cert_json)), "certificate failed to verify")
    out = {
        "field": v.to_text(),
        "boundary": sorted(R),
        "delta": None if delta is None else str(delta),
        "seed": args.seed,
        "case": res.case,
        "lambda": _fracs(res.lam),
        "gamma": str(res.gamma),
        "lowest_part": str(weighted_lowest_part(res.gamma)),
        "redraws": res.redraws,
        "certificate": cert_json,
        "verified": True,
    }
    if res.transverse_index is not None:
        out["transverse_index"] = res.transverse_index
    return out


def cmd_lowest_part(args) -> dict:
    p = _poly(args.poly, args.vars)
    w = _ints(args.weights) if args.weights else (1,) * p.dimension
    return {"poly": str(p), "weights": list(w), "lowest_part": str(weighted_lowest_part(p, w))}


def cmd_wps(args) -> dict:
    w = parse_weights(args.weights)
    omega = parse_form(args.form, w)
    out = {
        "weights": list(w),
        "form": [str(c) for c in omega.components],
        "weight": form_weight(omega, w),
        "euler_contraction": str(euler_contraction(omega, w)),
    }
    if len(w) == 3:
        d = foliation_canonical_degree(omega, w)
        out["canonical_degree"] = d
        out["canonical_self_intersection"] = format_fraction(self_intersection(d, d, w))
        chart = dehomogenize(omega, args.chart, w)
        out["chart"] = {
            "index": chart.chart,
            "form": [str(c) for c in chart.components],
            "cyclic_order": chart.cyclic_order,
            "quotient_weights": list(chart.quotient_weights),
        }
        if not all(c.is_zero() for c in chart.components):
            v = annihilator_2d(*chart.components)
            verdict = mp_classify(v) if not v.is_zero() else None
            out["chart"]["field"] = v.to_text()
            out["chart"]["verdict"] = None if verdict is None else verdict.tag
    return out


def cmd_selfcheck(args) -> dict:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise argparse.ArgumentTypeError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or 'all'")
    reports = [run_suite(n, args.seed) for n in names]
    for r in reports:
        print(f"{r.name}: {r.passed} passed, {r.failed} failed", file=sys.stderr)
    return {
        "seed": args.seed,
        "suites": [r.to_json() for r in reports],
        "ok": all(r.ok for r in reports),
    }


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foliated", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        return p

    def seeded(p):
        p.add_argument("--seed", type=int, default=0)

    def field(p, required=True):
        p.add_argument("--field", required=required, help='components, e.g. "y^2, -x^2"')
        p.add_argument("--vars", type=int, help="number of variables (default: number of components)")

    p = add("lct", cmd_lct, "log canonical threshold of a monomial ideal")
    p.add_argument("--ideal", required=True)
    p.add_argument("--vars", type=int)

    p = add("nilpotent", cmd_nilpotent, "is the matrix nilpotent")
    p.add_argument("--matrix", required=True)

    p = add("cycle-form", cmd_cycle_form, "nilpotent or single cycle, assuming proper principal minors are nilpotent")
    p.add_argument("--matrix", required=True)

    field(add("linear-part", cmd_linear_part, "linear part of a singular vector field"))
    field(add("mp-check", cmd_mp_check, "terminal / log canonical / not lc"))

    p = add("validate-pair", cmd_validate_pair, "does an invariant divisor avoid the singular point")
    field(p)
    p.add_argument("--delta", required=True)

    p = add("tangency", cmd_tangency, "tangency determinant against given fields")
    field(p)
    p.add_argument("--vs", help="n-1 fields separated by ';'")
    p.add_argument("--lambda", dest="lam", help="coefficients of the log form")
    p.add_argument("--boundary", help="use the annihilator fields of the log form on this boundary")

    p = add("omega", cmd_omega, "contraction of a field with a log form, times the boundary equation")
    field(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--boundary", default="")

    p = add("f-from-matrix", cmd_f_from_matrix, "the contraction for a linear field")
    p.add_argument("--matrix", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--boundary", default="")

    p = add("select-lambda", cmd_select_lambda, "coefficients with a log canonical f, and a certificate")
    p.add_argument("--matrix", required=True)
    p.add_argument("--boundary", default="")
    seeded(p)

    p = add("gamma", cmd_gamma, "tangency divisor of a log canonical foliation, certified")
    field(p)
    p.add_argument("--boundary", default="")
    p.add_argument("--delta")
    seeded(p)

    p = add("lowest-part", cmd_lowest_part, "weighted lowest-degree part")
    p.add_argument("--poly", required=True)
    p.add_argument("--vars", type=int)
    p.add_argument("--weights")

    p = add("wps", cmd_wps, "degrees and chart of a foliation on a weighted projective plane")
    p.add_argument("--weights", required=True)
    p.add_argument("--form", required=True)
    p.add_argument("--chart", type=int, default=2, help="0-based homogeneous coordinate set to 1")

    p = add("selfcheck", cmd_selfcheck, "run the seeded property suites")
    p.add_argument("suite", nargs="?", default="all")
    seeded(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = {"command": args.command, **args.func(args)}
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
        return 2
    except (InvariantFailure, LPError, RetryBudgetExhausted, AssertionError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 3
    except (
        argparse.ArgumentTypeError,
        FoliationError,
        HypothesisViolated,
        NotEquiWeighted,
        MalformedCertificate,
        ValueError,
        IndexError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(out, indent=2 if args.pretty else None))
    if args.command == "selfcheck" and not out["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
