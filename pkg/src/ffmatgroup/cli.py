"""Command-line interface: finiteness decisions, orders, and the closure
oracle, with one JSON object per invocation on stdout.

Exit codes: 0 for a decision, 1 for an input error, 2 for an exhausted
resource or budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .finiteness import AdmissibleSearchError, is_finite
from .groupfile import GroupFileError, parse_group_file
from .nilpotent import has_finite_order, is_finite_nilpotent
from .oracle import closure_order
from .order import BudgetError, size_finite


def _point_fields(pt):
    if pt is None:
        return None, None
    return [list(a.coeffs) for a in pt.alpha], pt.nu


def _emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


def _result(finite, order, point, evidence, trace=None):
    alpha, nu = _point_fields(point)
    out = {
        "finite": finite,
        "order": order,
        "alpha": alpha,
        "nu": nu,
        "evidence": evidence,
    }
    if trace is not None:
        out["trace"] = trace
    return out


def _cmd_is_finite(args):
    pg = parse_group_file(_read(args.file))
    if args.nilpotent:
        verdict = is_finite_nilpotent(
            pg.generators,
            seed=args.seed,
            max_nu=args.max_nu,
            trace=[] if args.trace else None,
        )
    else:
        verdict = is_finite(
            pg.generators,
            seed=args.seed,
            max_nu=args.max_nu,
            collect_trace=args.trace,
        )
    _emit(
        _result(
            verdict.finite, None, verdict.point, verdict.describe(), verdict.trace
        )
    )
    return 0


def _cmd_order(args):
    pg = parse_group_file(_read(args.file))
    go = size_finite(
        pg.generators,
        seed=args.seed,
        assume_cr=args.cr_shortcut,
        retry_budget=args.budget,
    )
    evidence = f"IsoBasis(d={go.iso_dim},nu={go.point.nu})"
    _emit(_result(True, str(go.value), go.point, evidence))
    return 0


def _cmd_element_order_finite(args):
    pg = parse_group_file(_read(args.file))
    if len(pg.generators) != 1:
        raise GroupFileError("element-order-finite expects exactly one generator")
    verdict = has_finite_order(pg.generators[0])
    _emit(_result(verdict.finite, None, verdict.point, verdict.describe()))
    return 0


def _cmd_oracle(args):
    pg = parse_group_file(_read(args.file))
    value = closure_order(pg.generators, args.cap)
    if value is None:
        _emit({"error": f"closure exceeded the cap {args.cap}"})
        return 2
    _emit(_result(True, str(value), None, f"ClosureOrder({value})"))
    return 0


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ffmatgroup",
        description="Finiteness and order of matrix groups over function fields "
        "of positive characteristic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("is-finite", help="decide finiteness of the group")
    p.add_argument("file")
    p.add_argument("--nilpotent", action="store_true",
                   help="use the nilpotent-group shortcut (caller's assertion)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-nu", type=int, default=12)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(handler=_cmd_is_finite)

    p = sub.add_parser("order", help="order of a finite group")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cr-shortcut", action="store_true",
                   help="assert the group cyclic or completely reducible")
    p.add_argument("--budget", type=int, default=32,
                   help="specialization retry budget")
    p.set_defaults(handler=_cmd_order)

    p = sub.add_parser("element-order-finite",
                       help="finite-order test for a single matrix")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_element_order_finite)

    p = sub.add_parser("oracle", help="brute-force closure enumeration")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=100000)
    p.set_defaults(handler=_cmd_oracle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GroupFileError as exc:
        _emit({"error": str(exc)})
        return 1
    except (AdmissibleSearchError, BudgetError) as exc:
        _emit({"error": str(exc)})
        return 2
    except ValueError as exc:
        _emit({"error": str(exc)})
        return 1


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
