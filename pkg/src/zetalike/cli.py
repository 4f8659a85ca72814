"""Command-line interface: compute, classify, search, verify.

Exit codes: 0 success (conjecture findings included), 1 usage error,
2 computation error, 3 failure of a proven identity.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import FieldConfig, Polynomial
from .carlitz import BudgetExceeded
from .identities import (CONJECTURE_FAMILIES, FAMILIES, ParameterError, enumerate_cases,
                         instantiate_case, verify_case, verify_sd_claim)
from .multizeta import as_tuple, zeta_value
from .records import (dumps_json, make_header, records_to_csv, report_to_dict,
                      record_to_dict, result_set_to_markdown)
from .search import SearchConfig, classify_tuple, run_search

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_THEOREM = 0, 1, 2, 3
CACHE_ENV = "ZETALIKE_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _field_from_args(args) -> FieldConfig:
    modulus = None
    if args.modulus:
        modulus = tuple(int(c) for c in args.modulus.split(","))
    try:
        return FieldConfig.for_q(args.q, modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _field_note(f: FieldConfig, args) -> str:
    if f.s == 1:
        return f"GF({f.q})"
    m = Polynomial(FieldConfig(f.p), list(f.modulus)).format("x")
    src = "given" if args.modulus else "default"
    return f"GF({f.q}) = GF({f.p})[x]/({m}) ({src} modulus)"


def _parse_tuple(text: str):
    try:
        return as_tuple(text)
    except ValueError as exc:
        raise UsageError(f"bad tuple {text!r}: {exc}") from None


def _add_field_args(p):
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--modulus", help="irreducible modulus over F_p, ascending coefficients, e.g. 1,1,1")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="zetalike", description="Multizeta values over F_q[t] and zeta-like tuple search.")
    ap.add_argument("--version", action="version", version=f"zetalike {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("compute", help="print zeta(s_1,...,s_r) to a given precision")
    _add_field_args(p)
    p.add_argument("--tuple", required=True, help="comma-separated entries, e.g. 1,3")
    p.add_argument("--prec", type=int, default=64)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("classify", help="classify one tuple (depth >= 2)")
    _add_field_args(p)
    p.add_argument("--tuple", required=True)
    p.add_argument("--prec", type=int, default=64)
    p.add_argument("--precision-policy", choices=["scaled", "fixed"], default="scaled")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("search", help="classify every tuple of a depth up to a weight")
    _add_field_args(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--restricted", action="store_true", default=None,
                   help="only tuples with (q-1) | s_i for i >= 2 and s_1 <= s_2 <= ... "
                        "(default for q >= 4)")
    p.add_argument("--unrestricted", dest="restricted", action="store_false",
                   help="every composition (default for q <= 3)")
    p.add_argument("--primitive-only", dest="primitive_only", action="store_true", default=True)
    p.add_argument("--all-tuples", dest="primitive_only", action="store_false",
                   help="include non-primitive tuples")
    p.add_argument("--prec", type=int, default=64)
    p.add_argument("--precision-policy", choices=["scaled", "fixed"], default="scaled")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="record file to write")
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--checkpoint", help=f"checkpoint log (default under ${CACHE_ENV} when set)")
    p.add_argument("--resume", action="store_true", help="reuse records already in the checkpoint")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp from JSON headers")

    p = sub.add_parser("verify", help="numerically verify identity families")
    _add_field_args(p)
    p.add_argument("--family", required=True, help=f"one of {', '.join(FAMILIES)}, sd_claim, theorems, all")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-r", type=int, default=3)
    p.add_argument("--max-d", type=int, default=5, help="level bound for sd_claim")
    p.add_argument("--prec", type=int, default=50)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    return ap


# -- commands -----------------------------------------------------------------

def cmd_compute(args, out) -> int:
    f = _field_from_args(args)
    tup = _parse_tuple(args.tuple)
    if args.prec < 1:
        raise UsageError("--prec must be >= 1")
    z = zeta_value(f, tup, args.prec)
    coeffs = z.value.coefficient_list(0, args.prec)
    if args.format == "json":
        doc = {"header": make_header(f, {"tuple": list(tup), "precision": args.prec}, timestamp=False),
               "tuple": list(tup), "coefficients": coeffs, "valuation": int(z.value.valuation),
               "precision": args.prec, "levels_used": z.levels_used, "heuristic": z.heuristic}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    out.write(f"# zetalike {__version__}, field {_field_note(f, args)}\n")
    out.write(f"zeta{format_tuple_plain(tup)} to precision {args.prec}\n")
    out.write(f"valuation: {z.value.valuation}\n")
    out.write(f"levels used: {z.levels_used}\n")
    out.write(f"heuristic: {str(z.heuristic).lower()}\n")
    out.write("coefficients of t^0, t^-1, ...: " + ", ".join(f.format_code(c) for c in coeffs) + "\n")
    return EXIT_OK


def format_tuple_plain(t) -> str:
    return "(" + ", ".join(map(str, t)) + ")"


def cmd_classify(args, out) -> int:
    f = _field_from_args(args)
    tup = _parse_tuple(args.tuple)
    if len(tup) < 2:
        raise UsageError("classify requires depth >= 2 (every depth-1 tuple is zeta-like by definition)")
    cfg = SearchConfig(f, len(tup), sum(tup), primitive_only=False, precision=args.prec,
                       precision_policy=args.precision_policy)
    rec = classify_tuple(tup, cfg)
    if args.format == "json":
        doc = {"header": make_header(f, cfg.echo(), timestamp=False), "record": record_to_dict(rec)}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    if rec.detected:
        star = " (covered by a proven family)" if rec.covered_by_theorem else ""
        out.write(f"{rec.status}, ratio {rec.ratio.format()}{star}\n")
    else:
        out.write(f"not_detected at precision {rec.precision_used}/{2 * rec.precision_used}\n")
    return EXIT_OK


def _checkpoint_path(args, cfg: SearchConfig):
    if args.checkpoint:
        return args.checkpoint
    base = os.environ.get(CACHE_ENV)
    if not base:
        return None
    mode = "r" if cfg.restricted else "u"
    prim = "p" if cfg.primitive_only else "a"
    name = (f"search-q{cfg.q}-m{''.join(map(str, cfg.field.modulus))}-d{cfg.depth}"
            f"-w{cfg.max_weight}-{mode}{prim}-N{cfg.precision}{cfg.precision_policy[0]}.jsonl")
    return os.path.join(base, name)


def cmd_search(args, out) -> int:
    f = _field_from_args(args)
    try:
        restricted = f.q >= 4 if args.restricted is None else args.restricted
        cfg = SearchConfig(f, args.depth, args.max_weight, restricted=restricted,
                           primitive_only=args.primitive_only, precision=args.prec,
                           precision_policy=args.precision_policy, workers=max(1, args.workers))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ckpt = _checkpoint_path(args, cfg)
    if ckpt and not args.resume and os.path.exists(ckpt):
        os.remove(ckpt)
    rs = run_search(cfg, checkpoint=ckpt)
    if args.out:
        if args.format == "json":
            header = make_header(f, cfg.echo(), timestamp=not args.no_timestamp)
            text = dumps_json(header, [record_to_dict(r) for r in rs.records])
        elif args.format == "csv":
            text = records_to_csv(rs.records)
        else:
            text = result_set_to_markdown(rs)
        d = os.path.dirname(os.path.abspath(args.out))
        os.makedirs(d, exist_ok=True)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(result_set_to_markdown(rs))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    f = _field_from_args(args)
    fam = args.family
    if fam == "all":
        families = list(FAMILIES) + ["sd_claim"]
    elif fam == "theorems":
        families = [x for x in FAMILIES if x not in CONJECTURE_FAMILIES] + ["sd_claim"]
    elif fam in FAMILIES or fam == "sd_claim":
        families = [fam]
    else:
        raise UsageError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}, sd_claim")
    if len(families) == 1 and fam in ("main6", "conj463") and f.q <= 2:
        # surface the admissibility error rather than an empty sweep
        try:
            instantiate_case(fam, {"n": 0, "j": 0, "r": 2}, f)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
    reports = []
    for name in families:
        if name == "sd_claim":
            for n in range(args.max_n + 1):
                for d in range(args.max_d + 1):
                    reports.append(verify_sd_claim(n, d, f, args.prec))
        else:
            for case in enumerate_cases(name, f, args.max_n, args.max_r):
                reports.append(verify_case(case, f, args.prec))
    theorem_failures = [r for r in reports if not r.passed and r.case.family not in CONJECTURE_FAMILIES]
    findings = [r for r in reports if not r.passed and r.case.family in CONJECTURE_FAMILIES]
    if args.format == "json":
        header = make_header(f, {"families": families, "max_n": args.max_n, "max_r": args.max_r,
                                 "max_d": args.max_d, "precision": args.prec}, timestamp=False)
        out.write(dumps_json(header, [_report_dict(r) for r in reports]))
    elif args.format == "csv":
        out.write("family,params,lhs,rhs_arg,residual_valuation,precision,pass\n")
        for r in reports:
            ps = ";".join(f"{k}={_fmt_param(v)}" for k, v in r.case.params)
            out.write(f"{r.case.family},{ps},{'-'.join(map(str, r.case.lhs_tuple))},"
                      f"{r.case.rhs_zeta_arg},{r.residual_valuation},{r.precision},{int(r.passed)}\n")
    else:
        for r in reports:
            mark = "pass" if r.passed else "FAIL"
            ps = ", ".join(f"{k}={_fmt_param(v)}" for k, v in r.case.params)
            out.write(f"{mark}  {r.case.family}[{ps}] zeta{format_tuple_plain(r.case.lhs_tuple)}"
                      f" vs zeta({r.case.rhs_zeta_arg}): residual valuation "
                      f"{r.residual_valuation} / {r.precision}\n")
        out.write(f"{len(reports)} cases, {len(theorem_failures)} theorem failures, "
                  f"{len(findings)} conjecture findings\n")
        for r in findings:
            out.write(f"finding: {r.case.describe()} fails at valuation {r.residual_valuation}\n")
    return EXIT_THEOREM if theorem_failures else EXIT_OK


def _fmt_param(v):
    return "-".join(map(str, v)) if isinstance(v, tuple) else str(v)


def _report_dict(r) -> dict:
    if r.case.family == "sd_claim":
        c = r.case
        return {"family": "sd_claim", "q": c.q, "params": dict(c.params), "lhs_tuple": list(c.lhs_tuple),
                "residual_valuation": r.residual_valuation, "precision": r.precision,
                "pass": r.passed, "kind": "theorem"}
    return report_to_dict(r)


COMMANDS = {"compute": cmd_compute, "classify": cmd_classify, "search": cmd_search, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"zetalike: error: {exc}\n")
        return EXIT_USAGE
    except (BudgetExceeded, ArithmeticError, RuntimeError, OSError) as exc:
        sys.stderr.write(f"zetalike: computation error: {exc}\n")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
