"""Command-line surface.

Every successful run prints one ReportEnvelope as JSON; payloads use the
shared exact serialization, so identical inputs give byte-identical payloads
(the elapsed-time field is excluded from that guarantee).  Exit codes: 0
success, 2 validation error, 3 broken internal invariant.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .acceptance import run_all
from .biro import (condition_star_search, factorization_oracle_check,
                   residue_mod_p, yokoi_intro_ab)
from .cfrac import (MinusCF, PlusCF, evaluate_periodic, minus_expand,
                    plus_expand, plus_to_minus)
from .characters import DirichletCharacter
from .errors import HeckeZeroError, InternalInvariantError, ParseError, \
    ValidationError
from .exact import (QuadSurd, cyclo_to_dict, quadsurd_to_dict,
                    rational_to_str)
from .kernels import HAVE_COMPILED
from .linearity import (BUILTIN_FAMILIES, FamilySpec, closed_form_chi,
                        family_spec_from_dict, hypothesis_check_norm,
                        smallest_admissible_n, verify_linearity)
from .quadfield import IdealLattice, class_numbers, make_field, maximal_order
from .shintani import partial_hecke_L_zero

DISPLAY_DIGITS = 30


def _decimal_display(x: Fraction) -> str:
    """30-significant-digit decimal rendering; never authoritative."""
    from decimal import Decimal, getcontext
    getcontext().prec = DISPLAY_DIGITS
    return str(Decimal(x.numerator) / Decimal(x.denominator))


def _cyclo_payload(x) -> dict:
    out = cyclo_to_dict(x)
    if x.is_rational():
        out["value"] = rational_to_str(x.as_rational())
        out["display_decimal_approx"] = _decimal_display(x.as_rational())
    return out


def load_family_config(name_or_path: str) -> FamilySpec:
    if name_or_path in BUILTIN_FAMILIES:
        return BUILTIN_FAMILIES[name_or_path]
    if not os.path.exists(name_or_path):
        raise ParseError(f"no builtin family or file named {name_or_path!r}")
    with open(name_or_path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{name_or_path}:{exc.lineno}:{exc.colno}: "
                             f"{exc.msg}") from exc
    spec = family_spec_from_dict(obj)
    # check the declared invariants on the first admissible member
    from .errors import CFMismatch, SpecInconsistent
    try:
        n0 = smallest_admissible_n(spec, 1, 0)
    except CFMismatch as exc:
        raise SpecInconsistent(str(exc)) from exc
    del n0
    return spec


def _parse_surd(text: str, d: int) -> QuadSurd:
    parts = [int(t) for t in text.split(",")]
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3:
        raise ValidationError("surd must be a,b[,c] for (a+b*sqrt(d))/c")
    return QuadSurd(parts[0], parts[1], parts[2], d)


def _parse_ideal(text: str) -> IdealLattice:
    parts = [int(t) for t in text.split(",")]
    if len(parts) != 4:
        raise ValidationError("ideal must be e,f,h,den")
    return IdealLattice(*parts)


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(","))


def cmd_field(args) -> dict:
    F = make_field(args.d)
    h, h_plus = class_numbers(args.d)
    return {
        "d": F.d,
        "discriminant": F.discriminant,
        "omega": quadsurd_to_dict(F.omega),
        "fundamental_unit": quadsurd_to_dict(F.fund_unit),
        "fundamental_unit_norm": F.fund_unit_norm,
        "totally_positive_unit": quadsurd_to_dict(F.tp_fund_unit),
        "class_number": h,
        "narrow_class_number": h_plus,
    }


def cmd_cf(args) -> dict:
    if args.cf_cmd == "expand":
        x = _parse_surd(args.surd, args.d)
        if args.kind == "plus":
            w = plus_expand(x)
        else:
            w = minus_expand(x)
        return {"kind": args.kind, "preperiod": list(w.preperiod),
                "period": list(w.period)}
    if args.cf_cmd == "convert":
        p = PlusCF((), _parse_ints(args.plus))
        m = plus_to_minus(p)
        return {"plus_period": list(p.period), "minus_period": list(m.period),
                "special_positions": list(m.special_positions)}
    # eval
    digits = _parse_ints(args.word)
    w = PlusCF((), digits) if args.kind == "plus" else MinusCF((), digits)
    return {"kind": args.kind, "period": list(digits),
            "value": quadsurd_to_dict(evaluate_periodic(w))}


def cmd_lvalue(args) -> dict:
    F = make_field(args.d)
    delta = _parse_surd(args.delta, args.d)
    b = _parse_ideal(args.ideal) if args.ideal else maximal_order(F)
    chi = DirichletCharacter.from_identifier(args.chi)
    val = partial_hecke_L_zero(F, delta, b, chi)
    return {"d": args.d, "delta": quadsurd_to_dict(delta),
            "q": chi.modulus, "chi": chi.identifier(),
            "value": _cyclo_payload(val)}


def cmd_linearity(args) -> dict:
    spec = load_family_config(args.family)
    chi = DirichletCharacter.from_identifier(args.chi)
    q = chi.modulus
    if args.lin_cmd == "hypothesis":
        ok = hypothesis_check_norm(spec, q, args.r, _parse_ints(args.k))
        return {"family": spec.name, "q": q, "r": args.r,
                "hypothesis_holds": ok}
    if args.lin_cmd == "closed-form":
        cf = closed_form_chi(spec, q, chi, args.r)
        return {
            "family": spec.name, "q": q, "chi": chi.identifier(), "r": args.r,
            "A_chi": _cyclo_payload(cf.A_chi),
            "B_chi": _cyclo_payload(cf.B_chi),
            "cells": [{"C": C, "D": D,
                       "A_CD": rational_to_str(a),
                       "B_CD": rational_to_str(b)}
                      for (C, D), (a, b) in sorted(cf.cells.items())],
        }
    rep = verify_linearity(spec, q, chi, args.r, _parse_ints(args.k))
    return {
        "family": spec.name, "q": q, "chi": chi.identifier(), "r": args.r,
        "k_used": list(rep.k_used), "k_skipped": list(rep.k_skipped),
        "scaled_values": [_cyclo_payload(v) for v in rep.scaled_values],
        "intercept": _cyclo_payload(rep.intercept),
        "slope": _cyclo_payload(rep.slope),
        "A_chi": _cyclo_payload(rep.A_chi),
        "B_chi": _cyclo_payload(rep.B_chi),
        "verdicts": {"affine_exact": rep.affine_exact,
                     "closed_form_match": rep.closed_form_match,
                     "hypothesis_check": rep.hypothesis_check},
    }


def cmd_biro(args) -> dict:
    if args.biro_cmd == "search":
        pairs = condition_star_search(args.q_max, args.p_max)
        return {"q_max": args.q_max, "p_max": args.p_max,
                "pairs": [{"q": p.q, "p": p.p, "chi": p.chi.identifier(),
                           "zeta_image": p.realization.zeta_image,
                           "witness": p.witness} for p in pairs]}
    if args.biro_cmd == "residues":
        spec = load_family_config(args.family)
        pairs = condition_star_search(args.q_max, args.p_max)
        reports = []
        for pair in pairs:
            for r in range(pair.q):
                rep = residue_mod_p(spec, pair, r)
                reports.append({
                    "family": rep.spec_name, "q": rep.q, "p": pair.p,
                    "chi": rep.chi.identifier(),
                    "zeta_image": rep.realization.zeta_image, "r": rep.r,
                    "status": rep.status, "residue": rep.residue,
                    "A_image": rep.A_image, "B_image": rep.B_image})
        return {"family": spec.name, "reports": reports}
    # oracle
    spec = load_family_config(args.family)
    chi = DirichletCharacter.from_identifier(args.chi)
    lhs, rhs, equal = factorization_oracle_check(spec, args.n,
                                                 chi.modulus, chi)
    out = {"family": spec.name, "n": args.n, "q": chi.modulus,
           "chi": chi.identifier(), "lhs": _cyclo_payload(lhs),
           "rhs": _cyclo_payload(rhs), "equal": equal}
    if args.intro_ab:
        A, B, rho = yokoi_intro_ab(chi.modulus, chi, args.n % chi.modulus)
        out["intro_A"] = _cyclo_payload(A)
        out["intro_B"] = _cyclo_payload(B)
        out["intro_proportionality"] = \
            rational_to_str(rho) if rho is not None else None
    return out


def cmd_selftest(args) -> dict:
    results = run_all()
    for res in results:
        print(res.line(), file=sys.stderr)
    return {"compiled_kernel": HAVE_COMPILED,
            "criteria": [{"number": r.number, "name": r.name,
                          "passed": r.passed, "detail": r.detail}
                         for r in results],
            "all_passed": all(r.passed for r in results)}


def _csv_flatten(payload: dict) -> str:
    """Flatten the first list-of-flat-dicts table found in the payload."""
    for key in ("cells", "reports", "pairs", "criteria"):
        if key in payload and isinstance(payload[key], list) and payload[key]:
            rows = payload[key]
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list))
                                 else v for k, v in row.items()})
            return buf.getvalue()
    raise ValidationError("this payload has no flat table to export as csv")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="append the JSON report to this file")
    common.add_argument("--format", choices=("json", "csv"),
                        default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(
        prog="hecke-zero",
        description="Exact values at s=0 of partial Hecke L-functions of "
                    "real quadratic fields")
    ap.add_argument("--out", help="append the JSON report to this file")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common],
                       help="field invariants for Q(sqrt(d))")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=cmd_field)

    p = sub.add_parser("cf", help="continued fraction operations")
    cfsub = p.add_subparsers(dest="cf_cmd", required=True)
    pe = cfsub.add_parser("expand", parents=[common])
    pe.add_argument("--d", type=int, required=True)
    pe.add_argument("--surd", required=True, help="a,b[,c]")
    pe.add_argument("--kind", choices=("plus", "minus"), default="minus")
    pc = cfsub.add_parser("convert", parents=[common])
    pc.add_argument("--plus", required=True, help="comma-separated digits")
    pv = cfsub.add_parser("eval", parents=[common])
    pv.add_argument("--word", required=True, help="comma-separated digits")
    pv.add_argument("--kind", choices=("plus", "minus"), default="minus")
    p.set_defaults(fn=cmd_cf)

    p = sub.add_parser("lvalue", parents=[common], help="partial Hecke L-value at s=0")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", required=True, help="a,b[,c]")
    p.add_argument("--q", type=int, help="modulus (from --chi if omitted)")
    p.add_argument("--chi", required=True, help="character identifier")
    p.add_argument("--ideal", help="e,f,h,den (default: maximal order)")
    p.set_defaults(fn=cmd_lvalue)

    p = sub.add_parser("linearity", help="family linearity machinery")
    lsub = p.add_subparsers(dest="lin_cmd", required=True)
    for name in ("verify", "closed-form", "hypothesis"):
        pl = lsub.add_parser(name, parents=[common])
        pl.add_argument("--family", required=True)
        pl.add_argument("--chi", required=True)
        pl.add_argument("--r", type=int, required=True)
        if name != "closed-form":
            pl.add_argument("--k", required=True,
                            help="comma-separated k samples")
    p.set_defaults(fn=cmd_linearity)

    p = sub.add_parser("biro", help="sieve search and congruences")
    bsub = p.add_subparsers(dest="biro_cmd", required=True)
    ps = bsub.add_parser("search", parents=[common])
    ps.add_argument("--q-max", type=int, required=True)
    ps.add_argument("--p-max", type=int, required=True)
    pr = bsub.add_parser("residues", parents=[common])
    pr.add_argument("--family", required=True)
    pr.add_argument("--q-max", type=int, required=True)
    pr.add_argument("--p-max", type=int, required=True)
    po = bsub.add_parser("oracle", parents=[common])
    po.add_argument("--family", required=True)
    po.add_argument("--n", type=int, required=True)
    po.add_argument("--chi", required=True)
    po.add_argument("--intro-ab", action="store_true",
                    help="also evaluate the direct double sums")
    p.set_defaults(fn=cmd_biro)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.set_defaults(fn=cmd_selftest)
    return ap


def run_command(argv) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    # HECKE_ZERO_THREADS caps parallelism; computation is deterministic and
    # currently single-threaded, so the cap is recorded but has no effect
    threads = int(os.environ.get("HECKE_ZERO_THREADS", "1") or "1")
    t0 = time.monotonic()
    payload = args.fn(args)
    envelope = {
        "tool": "hecke-zero",
        "version": __version__,
        "subcommand": args.command,
        "inputs": {k: v for k, v in sorted(vars(args).items())
                   if k not in ("fn", "out", "format") and v is not None
                   and not callable(v)},
        "threads": threads,
        "results": payload,
        "elapsed_s": round(time.monotonic() - t0, 6),
    }
    if args.format == "csv":
        sys.stdout.write(_csv_flatten(payload))
    else:
        json.dump(envelope, sys.stdout, indent=2)
        sys.stdout.write("\n")
    if args.out:
        line = json.dumps(envelope, separators=(",", ":"))
        with open(args.out, "a") as fh:
            fh.write(line + "\n")
    if args.command == "selftest" and not payload["all_passed"]:
        return 1
    return 0


def main(argv=None) -> int:
    try:
        return run_command(sys.argv[1:] if argv is None else argv)
    except InternalInvariantError as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)},
                  sys.stderr)
        sys.stderr.write("\n")
        return 3
    except (ValidationError, HeckeZeroError, ValueError) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)},
                  sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
