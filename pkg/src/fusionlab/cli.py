"""Command-line front end.

Exit codes: 0 success (including a verified witness or a clean verdict),
2 verdict contradicts --expect, 3 verdict Unknown / enumeration incomplete,
64 usage errors.  JSON output is byte-identical for fixed inputs at any
parallel width.
"""

from __future__ import annotations

import argparse
import json
import sys

from .desirability import check_desirable, verify_certificate, verify_witness
from .errors import CatalogMiss, FusionlabError
from .fusion import (
    FusionBudget,
    canonical_form,
    enumerate_symmetric_fusions,
    kernel_backend,
)
from .groups import catalog, catalog_entries, element_orders, exponent
from .integrality import factored_str
from .polynomials import IntPolynomial
from .schemes import scheme_from_group
from .suite import paper_suite
from .witnesses import FIXTURES, load_witness


def _dump(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(64)


def _budget_from(args) -> FusionBudget:
    return FusionBudget(
        max_nodes=args.budget,
        wall_limit=getattr(args, "wall", None),
        width=getattr(args, "width", None),
    )


def _poly_str(coeffs) -> str:
    return str(IntPolynomial(coeffs))


def _cmd_group_list(args) -> int:
    entries = catalog_entries()
    if args.json:
        _dump([{"key": e.key, "order": e.order, "exponent": e.exponent,
                "description": e.description} for e in entries])
    else:
        for e in entries:
            print(f"{e.key:<14} order {e.order:<4} exponent {e.exponent:<4} {e.description}")
    return 0


def _cmd_group_show(args) -> int:
    group = catalog(args.key)
    orders = element_orders(group)
    census: dict[int, int] = {}
    for k in orders:
        census[k] = census.get(k, 0) + 1
    if args.json:
        payload = {
            "key": args.key, "name": group.name, "order": group.order,
            "exponent": exponent(group),
            "element_order_census": {str(k): v for k, v in sorted(census.items())},
        }
        if args.table:
            payload["table"] = [[int(v) for v in row] for row in group.table]
        _dump(payload)
    else:
        print(f"{group.name}: order {group.order}, exponent {exponent(group)}")
        print("element orders:",
              ", ".join(f"{v} of order {k}" for k, v in sorted(census.items())))
        if args.table:
            for row in group.table:
                print(" ".join(f"{int(v):>3}" for v in row))
    return 0


def _cmd_scheme_show(args) -> int:
    scheme = scheme_from_group(catalog(args.key))
    data = scheme.to_dict()
    if args.json:
        _dump(data)
    else:
        print(f"scheme of {args.key}: size {data['size']}, rank {data['rank']}")
        print("star:", data["star"])
        print("valencies:", data["valencies"])
    return 0


def _cmd_fusion_enumerate(args) -> int:
    scheme = scheme_from_group(catalog(args.key))
    result = enumerate_symmetric_fusions(scheme, _budget_from(args))
    if args.json:
        _dump({
            "group": args.key,
            "complete": result.complete,
            "count": len(result.partitions),
            "nodes_examined": result.nodes_examined,
            "partitions": [[list(b) for b in p.blocks] for p in result.partitions],
        })
    else:
        for p in result.partitions:
            print(canonical_form(p))
        print(f"count={len(result.partitions)} complete={result.complete} "
              f"nodes={result.nodes_examined} backend={kernel_backend()}")
    return 0 if result.complete else 3


def _cmd_check(args) -> int:
    verdict = check_desirable(catalog(args.key), _budget_from(args))
    if args.json:
        _dump(verdict.to_dict())
    else:
        print(f"{args.key}: {verdict.status}")
        if verdict.status == "desirable":
            print(f"  symmetric fusions examined: {verdict.fusions_examined}")
        elif verdict.status == "undesirable":
            print(f"  witness partition: "
                  f"{'|'.join(','.join(map(str, b)) for b in verdict.witness.blocks)}")
            print(f"  failing fused relation: {list(verdict.failing_block)}")
            print(f"  spectrum: {factored_str(verdict.certificate)}")
            if verdict.order_violation:
                print(f"  (element {verdict.order_violation[0]} has order "
                      f"{verdict.order_violation[1]})")
        else:
            print(f"  budget exhausted after {verdict.nodes_examined} nodes")
    if verdict.status == "unknown":
        return 3
    if args.expect and verdict.status != args.expect:
        return 2
    return 0


def _cmd_witness(args) -> int:
    if args.lemma not in FIXTURES:
        raise CatalogMiss(f"unknown witness id {args.lemma}")
    fixture = FIXTURES[args.lemma]
    if catalog(args.key).name != catalog(fixture.group_key).name:
        print(f"error: witness {args.lemma} is for {fixture.group_key}, not {args.key}",
              file=sys.stderr)
        return 64
    group, partition, failing = load_witness(args.lemma)
    report = verify_witness(group, partition, failing)
    if args.json:
        _dump(report.to_dict())
    else:
        print(f"witness {args.lemma} on {group.name}")
        print(f"  partition: {canonical_form(partition)}")
        print(f"  failing fused relation: {list(failing)} (valency {report.valency})")
        print(f"  char poly: {report.char}")
        print(f"  min poly:  {report.min}")
        print(f"  residual:  {report.residual}")
        print(f"  non-integral: {report.non_integral}")
    return 0 if report.non_integral else 1


def _cmd_paper_suite(args) -> int:
    items = paper_suite(max_order=args.max_order, budget=None)
    if args.json:
        _dump([it.to_dict(with_timing=False) for it in items])
    else:
        for it in items:
            mark = "PASS" if it.passed else "FAIL"
            print(f"{mark} {it.ident:<24} {it.seconds:7.2f}s  {it.description}")
        failed = sum(1 for it in items if not it.passed)
        print(f"{len(items) - failed}/{len(items)} items passed")
    return 0 if all(it.passed for it in items) else 1


def _cmd_verify(args) -> int:
    with open(args.cert, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    ok, message = verify_certificate(data)
    print(f"{'verified' if ok else 'FAILED'}: {message}")
    return 0 if ok else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="fusionlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="catalog of finite groups")
    group_sub = p_group.add_subparsers(dest="subcommand", required=True)
    p = group_sub.add_parser("list", help="list catalog keys")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_group_list)
    p = group_sub.add_parser("show", help="order, exponent and order census")
    p.add_argument("key")
    p.add_argument("--json", action="store_true")
    p.add_argument("--table", action="store_true", help="include the Cayley table")
    p.set_defaults(func=_cmd_group_show)

    p_scheme = sub.add_parser("scheme", help="group association schemes")
    scheme_sub = p_scheme.add_subparsers(dest="subcommand", required=True)
    p = scheme_sub.add_parser("show", help="dump the scheme of a group")
    p.add_argument("key")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_scheme_show)

    p_fusion = sub.add_parser("fusion", help="symmetric fusion partitions")
    fusion_sub = p_fusion.add_subparsers(dest="subcommand", required=True)
    p = fusion_sub.add_parser("enumerate", help="enumerate all symmetric fusions")
    p.add_argument("key")
    _add_budget_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_fusion_enumerate)

    p = sub.add_parser("check", help="desirability verdict with certificate")
    p.add_argument("key")
    _add_budget_args(p)
    p.add_argument("--expect", choices=["desirable", "undesirable"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("witness", help="verify a stored non-integrality witness")
    p.add_argument("key")
    p.add_argument("--lemma", required=True, metavar="ID",
                   help="witness id (3.1 .. 3.7)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("paper-suite", help="run the full regression suite")
    p.add_argument("--max-order", type=int, default=16,
                   help="cap on the order of groups in the positive checks")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_paper_suite)

    p = sub.add_parser("verify", help="re-verify a JSON certificate")
    p.add_argument("--cert", required=True, help="certificate file from check --json")
    p.set_defaults(func=_cmd_verify)
    return parser


def _add_budget_args(p) -> None:
    p.add_argument("--budget", type=int, default=FusionBudget().max_nodes,
                   help="search-node budget")
    p.add_argument("--wall", type=float, default=None, help="wall-clock limit, seconds")
    p.add_argument("--width", type=int, default=None,
                   help="parallel width (default: FUSIONLAB_THREADS or 1)")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 64
    except CatalogMiss as exc:
        print(f"error: unknown group or witness key: {exc}", file=sys.stderr)
        return 64
    except (FusionlabError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    raise SystemExit(main())
