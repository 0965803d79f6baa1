"""Command-line interface.

Exit codes: 0 success, 1 crosscheck mismatch / failed verification or
construction, 2 malformed input, 3 infeasible request, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Sequence

from .abelian import CapExceeded
from .bruteforce import DEFAULT_MAX_CLASSES, CrosscheckReport, crosscheck
from .construct import ConstructionError, InfeasibleRequest, construct_S
from .dicyclic import DicyclicGroup
from .feasibility import region_for
from .graph import build_caysum, regular_profile, subgroup_profile_fast
from .serialize import (
    MalformedInput,
    connection_set_from_json,
    connection_set_to_json,
    dumps,
    elements_to_json,
    group_from_json,
    group_to_json,
    load_json,
    region_to_json,
    subgroup_from_json,
    subgroup_to_json,
    witness_to_json,
)
from .subgroups import Subgroup, enumerate_all_subgroups, subgroup_invariants

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_MALFORMED = 2
EXIT_INFEASIBLE = 3
EXIT_CAP = 4

CSV_VERSION = "# caysum crosscheck csv v1"
CSV_COLUMNS = ["group", "subgroup", "case_label", "n_predicted", "n_achieved", "equal", "seconds"]


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _load_group(path: str) -> DicyclicGroup:
    return group_from_json(load_json(path))


def _load_subgroup(G: DicyclicGroup, path: str) -> Subgroup:
    return subgroup_from_json(G, load_json(path))


def cmd_info(args) -> int:
    G = _load_group(args.group)
    A = G.spec
    _emit(
        {
            "group": group_to_json(G),
            "lambda": A.lam,
            "mu": A.mu,
            "k": A.k,
            "B": [list(x) for x in G.B.elements],
            "A_prime": [list(x) for x in G.A_prime.elements],
            "squares": elements_to_json(G.squares),
            "involutions": elements_to_json(G.involution_set()),
            "classes": [elements_to_json(c) for c in G.classes],
        }
    )
    return EXIT_OK


def _invariants_json(G: DicyclicGroup, K: Subgroup) -> dict:
    iv = subgroup_invariants(G, K)
    return {
        "subgroup": subgroup_to_json(K),
        "label": K.label(),
        "order": K.order,
        "L": list(iv.L),
        "T": list(iv.T),
        "l": iv.l,
        "m": iv.m,
        "r": iv.r,
        "aligned": iv.aligned,
        "script_L": iv.script_L,
        "J": [list(x) for x in iv.J.elements],
        "eps": iv.eps,
        "eps_bar": iv.eps_bar,
        "case": iv.case_label,
    }


def cmd_subgroups(args) -> int:
    G = _load_group(args.group)
    _emit({"subgroups": [_invariants_json(G, K) for K in enumerate_all_subgroups(G)]})
    return EXIT_OK


def cmd_feasible(args) -> int:
    G = _load_group(args.group)
    if args.subgroup:
        K = _load_subgroup(G, args.subgroup)
        _emit(region_to_json(region_for(G, K)))
        return EXIT_OK
    out = []
    for K in enumerate_all_subgroups(G):
        entry = region_to_json(region_for(G, K))
        entry["subgroup"] = subgroup_to_json(K)
        out.append(entry)
    _emit({"regions": out})
    return EXIT_OK


def cmd_construct(args) -> int:
    G = _load_group(args.group)
    K = _load_subgroup(G, args.subgroup)
    w = construct_S(G, K, args.alpha, args.beta)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(connection_set_to_json(w.S)) + "\n")
    _emit(witness_to_json(w))
    return EXIT_OK


def cmd_verify(args) -> int:
    G = _load_group(args.group)
    K = _load_subgroup(G, args.subgroup)
    doc = load_json(args.set)
    # Accept either a bare set or a witness document that carries one.
    if isinstance(doc, dict) and "S" in doc and "elements" not in doc:
        doc = doc["S"]
    S = connection_set_from_json(G, doc)
    out = {"normal": S.normal, "square_free": S.square_free, "size": len(S)}
    if not S.valid:
        out["problems"] = S.problems()
        _emit(out)
        return EXIT_MISMATCH
    fast = subgroup_profile_fast(G, S, K)
    slow = regular_profile(build_caysum(G, S), K.elements)
    out["fast_profile"] = list(fast) if fast else None
    out["profile"] = list(slow) if slow else None
    if slow:
        pair = tuple(slow)
        region = region_for(G, K)
        if pair == (0, 0):
            out["note"] = "excluded by theorems"
        else:
            out["in_region"] = pair in region.pairs
    else:
        out["note"] = f"not regular: vertex {list(slow.vertex.a)},{slow.vertex.flag} has {slow.count}"
    _emit(out)
    return EXIT_OK if bool(fast) == bool(slow) and (not slow or tuple(fast) == tuple(slow)) else EXIT_MISMATCH


def report_rows(report: CrosscheckReport, timing: bool = True) -> list[dict]:
    return [
        {
            "group": report.group,
            "subgroup": row.subgroup.label(),
            "case_label": row.case_label,
            "n_predicted": len(row.region.pairs),
            "n_achieved": len(row.achieved_pairs),
            "equal": row.passed,
            "seconds": round(row.seconds, 4) if timing else 0.0,
        }
        for row in report.rows
    ]


def report_csv(report: CrosscheckReport, timing: bool = True) -> str:
    buf = io.StringIO()
    buf.write(CSV_VERSION + "\n")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report_rows(report, timing):
        writer.writerow(row)
    return buf.getvalue()


def report_json(report: CrosscheckReport, timing: bool = True) -> dict:
    rows = []
    for summary, row in zip(report_rows(report, timing), report.rows):
        entry = dict(summary)
        entry["composed_equal"] = row.equal
        entry["closed_form_equal"] = row.theorem_equal
        if not row.passed:
            entry["composed_missing"] = [list(p) for p in row.missing()]
            entry["composed_extra"] = [list(p) for p in sorted(row.extra())]
            entry["closed_form_missing"] = [list(p) for p in row.missing(row.region.theorem_pairs)]
            entry["closed_form_extra"] = [list(p) for p in sorted(row.extra(row.region.theorem_pairs))]
        rows.append(entry)
    return {
        "group": report.group,
        "passed": report.passed,
        "rows": rows,
        "seconds": round(report.seconds, 4) if timing else 0.0,
    }


def cmd_crosscheck(args) -> int:
    G = _load_group(args.group)
    report = crosscheck(G, max_classes=args.max_classes, workers=args.workers, group_id=args.group)
    timing = not args.no_timing
    if args.csv:
        text = report_csv(report, timing)
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            _emit(report_json(report, timing))
    else:
        _emit(report_json(report, timing))
    for row in report.mismatches():
        print(f"mismatch: {row.subgroup.label()} {row.case_label}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caysum", description="Regular subgroups of Cayley sum graphs on generalized dicyclic groups."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="structure of the group")
    p.add_argument("group")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("subgroups", help="all subgroups with their invariants")
    p.add_argument("group")
    p.set_defaults(func=cmd_subgroups)

    p = sub.add_parser("feasible", help="predicted (alpha, beta) regions")
    p.add_argument("group")
    p.add_argument("--subgroup")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("construct", help="build a witness connection set")
    p.add_argument("group")
    p.add_argument("--subgroup", required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("-o", "--output", help="write the connection set here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="validate a connection set and profile a subgroup")
    p.add_argument("group")
    p.add_argument("--subgroup", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("crosscheck", help="brute force against the predicted regions")
    p.add_argument("group")
    p.add_argument("--max-classes", type=int, default=DEFAULT_MAX_CLASSES)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="write the CSV table here ('-' for stdout)")
    p.add_argument("--no-timing", action="store_true", help="report zero seconds for reproducible output")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except InfeasibleRequest as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
