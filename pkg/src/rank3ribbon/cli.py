"""Command-line interface.

Subcommands:

- ``ring``       construct a parameter ring, check axioms, solve characters
- ``enumerate``  canonical parameter solutions up to a bound
- ``search``     ribbon-data witness search on one ring
- ``classify``   full classification report
- ``audit``      desk-scale audits (star-assoc, rank3-rings, case3b-grid, landau)

Exit codes: 0 success, 1 computation error (structured JSON on stderr),
2 usage error.  All output is deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .characters import galois_type, solve_characters
from .classify import (
    audit_case3b_grid,
    classify_all,
    enumerate_star_solutions,
    landau_bound,
)
from .fusion import (
    Rank3Params,
    StarViolation,
    check_based_axioms,
    enumerate_rank3_based_rings,
    fp_dimensions,
    global_fp_dim,
    make_rank3_ring,
    param_aliases,
    rank3_tensor,
)
from .premodular import search_ribbon_data


class UsageError(ValueError):
    pass


def _parse_params(text: str) -> Rank3Params:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"--params expects k,l,m,n (got {text!r})")
    try:
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"--params must be integers: {exc}") from None
    if any(v < 0 for v in values):
        raise UsageError("--params must be nonnegative")
    return Rank3Params(*values)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rank3ribbon",
        description="Exact classification of rank-3 fusion rings with premodular data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--out", default=None, help="write output to this path")
        p.add_argument("--threads", type=int, default=os.cpu_count())

    p_ring = sub.add_parser("ring", help="construct and analyze one parameter ring")
    p_ring.add_argument("--params", required=True)
    common(p_ring)

    p_enum = sub.add_parser("enumerate", help="canonical parameter solutions up to a bound")
    p_enum.add_argument("--bound", type=int, required=True)
    common(p_enum)

    p_search = sub.add_parser("search", help="ribbon-data witness search")
    p_search.add_argument("--params", required=True)
    p_search.add_argument("--max-twist-order", type=int, default=60)
    p_search.add_argument("--tol", type=float, default=1e-9)
    p_search.add_argument("--precision-bits", type=int, default=128)
    p_search.add_argument("--include-degenerate", action="store_true")
    common(p_search)

    p_classify = sub.add_parser("classify", help="full classification report")
    p_classify.add_argument("--bound", type=int, required=True)
    p_classify.add_argument("--max-twist-order", type=int, default=60)
    p_classify.add_argument("--tol", type=float, default=1e-9)
    p_classify.add_argument("--witness-all", action="store_true")
    common(p_classify)

    p_audit = sub.add_parser("audit", help="desk-scale audits")
    audit_sub = p_audit.add_subparsers(dest="audit_command", required=True)

    a_star = audit_sub.add_parser("star-assoc", help="star constraint vs associativity")
    a_star.add_argument("--bound", type=int, default=10)
    common(a_star)

    a_rings = audit_sub.add_parser("rank3-rings", help="brute-force based-ring enumeration")
    a_rings.add_argument("--coeff-bound", type=int, default=1)
    common(a_rings)

    a_grid = audit_sub.add_parser("case3b-grid", help="grid impossibility sweep")
    a_grid.add_argument("--smax", type=int, default=50)
    a_grid.add_argument("--tmax", type=int, default=50)
    common(a_grid)

    a_landau = audit_sub.add_parser("landau", help="Landau bound for a class count")
    a_landau.add_argument("--classes", type=int, default=3)
    common(a_landau)

    return parser


def _ring_payload(params: Rank3Params) -> dict:
    ring = make_rank3_ring(params)
    system = solve_characters(ring)
    info = galois_type(system)
    dims = fp_dimensions(ring)
    gdim = global_fp_dim(ring)
    report = ring.axiom_report()
    return {
        "params": list(params.as_tuple()),
        "alias": param_aliases(params),
        "ring": ring.to_json(),
        "axioms": {
            "unit": report.unit_ok,
            "duality": report.duality_ok,
            "involution": report.involution_ok,
            "associativity": report.associativity_ok,
        },
        "characters": system.to_json()["characters"],
        "galois": info.to_json(),
        "fp_dimensions": [d.approx_str(12) for d in dims],
        "fp_dimensions_note": "approx; exact values in characters[0]",
        "global_fp_dim": {
            "exact_minpoly": list(gdim.minpoly.coeffs),
            "approx": gdim.approx_str(12),
        },
    }


def _cmd_ring(args) -> tuple[object, str | None]:
    payload = _ring_payload(_parse_params(args.params))
    return payload, None


def _cmd_enumerate(args) -> tuple[object, str | None]:
    sols = enumerate_star_solutions(args.bound)
    payload = {
        "bound": args.bound,
        "count": len(sols),
        "solutions": [list(p.as_tuple()) for p in sols],
        "aliases": {p.name(): param_aliases(p) for p in sols},
    }
    table = "\n".join(p.name() for p in sols)
    return payload, table


def _cmd_search(args) -> tuple[object, str | None]:
    params = _parse_params(args.params)
    ring = make_rank3_ring(params)
    witnesses = search_ribbon_data(
        ring,
        args.max_twist_order,
        tol=args.tol,
        precision_bits=args.precision_bits,
        include_degenerate=args.include_degenerate,
        threads=args.threads,
    )
    payload = {
        "params": list(params.as_tuple()),
        "max_twist_order": args.max_twist_order,
        "completeness": f"complete up to twist order {args.max_twist_order}",
        "tol": args.tol,
        "count": len(witnesses),
        "witnesses": [w.to_json() for w in witnesses],
    }
    lines = [
        f"{w.structure_class.value:<18} dims#{w.dims_index} "
        f"theta=({w.twists.theta[1].turn}, {w.twists.theta[2].turn})"
        for w in witnesses
    ]
    return payload, "\n".join(lines) if lines else "no witnesses"


def _cmd_classify(args) -> tuple[object, str | None]:
    report = classify_all(
        args.bound,
        max_twist_order=args.max_twist_order,
        tol=args.tol,
        witness_all=args.witness_all,
        threads=args.threads,
    )
    return report.to_json(), report.render_table()


def _cmd_audit(args) -> tuple[object, str | None]:
    if args.audit_command == "star-assoc":
        bound = args.bound
        mismatches = []
        for k in range(bound + 1):
            for l in range(bound + 1):
                for m in range(bound + 1):
                    for n in range(bound + 1):
                        p = Rank3Params(k, l, m, n)
                        ok = check_based_axioms(rank3_tensor(p), (0, 1, 2)).associativity_ok
                        if ok != p.satisfies_star:
                            mismatches.append(list(p.as_tuple()))
        payload = {
            "audit": "star-assoc",
            "bound": bound,
            "equivalent": not mismatches,
            "mismatches": mismatches,
        }
        return payload, f"star <=> associativity on [0,{bound}]^4: {not mismatches}"
    if args.audit_command == "rank3-rings":
        rings = enumerate_rank3_based_rings(args.coeff_bound)
        payload = {
            "audit": "rank3-rings",
            "coeff_bound": args.coeff_bound,
            "count": len(rings),
            "rings": [r.to_json() for r in rings],
        }
        return payload, f"{len(rings)} based rings at coefficient bound {args.coeff_bound}"
    if args.audit_command == "case3b-grid":
        result = audit_case3b_grid(args.smax, args.tmax)
        payload = {
            "audit": "case3b-grid",
            "smax": args.smax,
            "tmax": args.tmax,
            "no_solutions": result,
        }
        return payload, str(result).lower()
    if args.audit_command == "landau":
        value = landau_bound(args.classes)
        payload = {"audit": "landau", "classes": args.classes, "bound": value}
        return payload, str(value)
    raise UsageError(f"unknown audit {args.audit_command!r}")


_COMMANDS = {
    "ring": _cmd_ring,
    "enumerate": _cmd_enumerate,
    "search": _cmd_search,
    "classify": _cmd_classify,
    "audit": _cmd_audit,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        payload, table = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (StarViolation, ValueError, RuntimeError) as exc:
        error = {"error": {"kind": type(exc).__name__, "detail": str(exc)}}
        print(json.dumps(error), file=sys.stderr)
        return 1
    if args.format == "table" and table is not None:
        text = table
    else:
        text = json.dumps(payload, indent=2, default=_json_default)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(
                json.dumps({"error": {"kind": "OutputError", "detail": str(exc)}}),
                file=sys.stderr,
            )
            return 1
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def _json_default(obj):
    from fractions import Fraction

    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
