"""Command line interface.

    tornheim eval  --a A --b B --k K1 K2 K3 [--basis ...] [--format ...]
    tornheim g2    --k K1 K2 K3 K4 K5 K6 [--show-reduction]
    tornheim table --weight W --pairs A,B [A,B ...]

Exit codes: 0 verified/ok, 1 internal error, 2 usage error,
3 verification failure.  TORNHEIM_PREC sets the default working digits.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__, constants, pfd
from .constants import to_dirichlet_basis, to_json_dict, to_latex, to_text
from .g2 import G2Request, VerificationError, evaluate_g2
from .numeric import (Precision, PrecisionError, check_values, eval_symbolic,
                      eval_tornheim)
from .parity import EvalRequest, closed_form


def ruleset_hash() -> str:
    digest = hashlib.sha256(
        (constants.RULES_DOC + "\n" + pfd.RELATIONS_DOC).encode())
    return digest.hexdigest()[:16]


def _default_digits() -> int:
    return int(os.environ.get("TORNHEIM_PREC", "30"))


def _add_numeric_flags(p: argparse.ArgumentParser):
    p.add_argument("--prec", type=int, default=_default_digits(),
                   help="working decimal digits (default 30 or $TORNHEIM_PREC)")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="relative verification tolerance (default 1e-10)")
    p.add_argument("--format", choices=("text", "json", "latex"),
                   default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tornheim",
        description="Exact closed forms for Tornheim-type double series and "
                    "G2 lattice zeta values at odd weight, with numeric "
                    "verification.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="closed form of zeta_{a,b}(k1,k2,k3)")
    p_eval.add_argument("--a", type=int, required=True)
    p_eval.add_argument("--b", type=int, required=True)
    p_eval.add_argument("--k", type=int, nargs=3, required=True,
                        metavar=("K1", "K2", "K3"))
    p_eval.add_argument("--basis", choices=("clausen", "dirichlet"),
                        default="clausen")
    p_eval.add_argument("--verify", action="store_true",
                        help="check the result against the numeric series")
    _add_numeric_flags(p_eval)

    p_g2 = sub.add_parser("g2", help="closed form of zeta(k1..k6; G2)")
    p_g2.add_argument("--k", type=int, nargs=6, required=True,
                      metavar=("K1", "K2", "K3", "K4", "K5", "K6"))
    p_g2.add_argument("--show-reduction", action="store_true",
                      help="include the double-series reduction")
    _add_numeric_flags(p_g2)

    p_tab = sub.add_parser(
        "table", help="all compositions of a weight, verified, one per line")
    p_tab.add_argument("--weight", type=int, required=True)
    p_tab.add_argument("--pairs", nargs="+", required=True, metavar="A,B",
                       help="series parameters, e.g. --pairs 1,1 1,3 2,5")
    _add_numeric_flags(p_tab)
    return parser


def _precision(parser, args) -> Precision:
    try:
        return Precision(digits=args.prec, tolerance=args.tol)
    except ValueError as exc:
        parser.error(str(exc))


def _record_head(command: str) -> dict:
    return {"command": command, "version": __version__,
            "ruleset_hash": ruleset_hash()}


def _emit(record: dict):
    print(json.dumps(record, sort_keys=True))


def cmd_eval(parser, args) -> int:
    if sum(args.k) % 2 == 0:
        parser.error("weight must be odd")
    prec = _precision(parser, args)
    req = EvalRequest(args.a, args.b, *args.k)
    value = closed_form(req)
    if args.basis == "dirichlet":
        value = to_dirichlet_basis(value, req.weight)
    check = None
    if args.verify:
        series = eval_tornheim(args.a, args.b, *args.k, precision=prec)
        check = check_values(eval_symbolic(value, prec), series, prec,
                             label="closed form vs series")
    if args.format == "latex":
        print(to_latex(value))
    elif args.format == "text":
        print(to_text(value))
        if check is not None:
            status = "verified" if check.passed else "FAILED"
            print(f"# {status}: relative residual {check.rel_residual} "
                  f"at {prec.digits} digits")
    else:
        record = _record_head("eval")
        record.update({
            "request": {"a": args.a, "b": args.b, "k": list(args.k)},
            "basis": args.basis,
            "result": to_json_dict(value),
            "text": to_text(value),
            "latex": to_latex(value),
            "check": check.as_json_dict() if check else None,
        })
        _emit(record)
    return 3 if (check is not None and not check.passed) else 0


def cmd_g2(parser, args) -> int:
    if sum(args.k) % 2 == 0:
        parser.error("weight must be odd")
    prec = _precision(parser, args)
    req = G2Request(tuple(args.k))
    result = evaluate_g2(req, prec, collect_trace=args.show_reduction)
    if args.format == "latex":
        print(to_latex(result.clausen))
        print(to_latex(result.dirichlet))
    elif args.format == "text":
        print("clausen  :", to_text(result.clausen))
        print("dirichlet:", to_text(result.dirichlet))
        if args.show_reduction:
            print("reduction:")
            for c, a, b, e1, e2, e3 in result.reduction_list():
                print(f"  {c} zeta_{{{a},{b}}}({e1},{e2},{e3})")
        rec = result.checks["dirichlet"]
        print(f"# verified: relative residual {rec.rel_residual} "
              f"at {prec.digits} digits")
    else:
        record = _record_head("g2")
        record.update(result.to_json_dict())
        if args.show_reduction:
            record["trace"] = pfd.trace_to_json(result.trace)
        _emit(record)
    return 0


def _compositions(weight: int):
    for k1 in range(1, weight - 1):
        for k2 in range(1, weight - k1):
            yield (k1, k2, weight - k1 - k2)


def cmd_table(parser, args) -> int:
    if args.weight % 2 == 0:
        parser.error("weight must be odd")
    if args.weight < 5:
        parser.error("weight must be >= 5")
    pairs = []
    for spec in args.pairs:
        try:
            a, b = (int(x) for x in spec.split(","))
        except ValueError:
            parser.error(f"bad pair {spec!r}; expected A,B")
        if a < 1 or b < 1:
            parser.error(f"bad pair {spec!r}; parameters must be >= 1")
        pairs.append((a, b))
    prec = _precision(parser, args)
    failures = 0
    for a, b in pairs:
        for ks in _compositions(args.weight):
            record = _record_head("table")
            record["request"] = {"a": a, "b": b, "k": list(ks)}
            try:
                value = closed_form(EvalRequest(a, b, *ks))
                series = eval_tornheim(a, b, *ks, precision=prec)
                check = check_values(eval_symbolic(value, prec), series, prec,
                                     label="closed form vs series")
                record["result"] = to_json_dict(value)
                record["text"] = to_text(value)
                record["check"] = check.as_json_dict()
                record["passed"] = check.passed
                if not check.passed:
                    failures += 1
            except Exception as exc:  # keep streaming; report per record
                record["error"] = str(exc)
                record["passed"] = False
                failures += 1
            if args.format == "text":
                mark = "ok " if record["passed"] else "FAIL"
                print(f"{mark} a={a} b={b} k={ks}: {record.get('text', record.get('error'))}")
            else:
                _emit(record)
    return 3 if failures else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(parser, args)
        if args.command == "g2":
            return cmd_g2(parser, args)
        return cmd_table(parser, args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
