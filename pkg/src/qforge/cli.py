"""Command-line front end.

Subcommands cover the whole library: minimum-order lookups, spinal builds,
embedding verification, interlacement, the brute-force existence oracle,
and the realizable order spectrum.  Human-readable text goes to stdout;
machine-readable documents are always files, written in canonical JSON so
identical inputs produce identical bytes.

Exit codes: 0 success, 1 verification or existence failure, 2 invalid
input, 3 inconclusive (search budget exhausted).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .embedding import (
    GenusMismatchError,
    load_embedding,
    save_embedding,
    validate_quadrangulation,
)
from .formulas import MinOrderResult, min_order, spectrum
from .graph import FormatError, interlace, load_graph, save_graph
from .oracle import (
    BudgetExhausted,
    SearchBudget,
    exists_quadrangulation,
    min_order_bruteforce,
    search_quadrangulation,
)
from .spinal import BuildError, build_instance, build_spinal_report

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _format_result(result: MinOrderResult) -> str:
    if result.kind == "exact":
        return f"g={result.genus}: order {result.value} exactly ({result.source})"
    return f"g={result.genus}: order in [{result.lower}, {result.upper}] ({result.source})"


def _cmd_minorder(args: argparse.Namespace) -> int:
    last = args.scan if args.scan is not None else args.genus
    if last < args.genus:
        raise ValueError("--scan must not be below -g")
    for g in range(args.genus, last + 1):
        print(_format_result(min_order(g)))
    return EXIT_OK


def _parse_spine_spec(spec: str) -> int:
    kind, _, raw = spec.partition(":")
    if kind != "complete" or not raw:
        raise ValueError("--spine must look like complete:<p>")
    try:
        p = int(raw)
    except ValueError as exc:
        raise ValueError(f"bad spine size {raw!r}") from exc
    return p


def _cmd_build(args: argparse.Namespace) -> int:
    if args.spine is not None:
        p = _parse_spine_spec(args.spine)
        report = build_instance(p, args.minus)
        minimal = "yes" if report.minimal else "no"
    else:
        if args.minus:
            raise ValueError("--minus only applies to --spine complete:<p>")
        report = build_spinal_report(load_graph(args.spine_file))
        minimal = "unknown"
    save_embedding(report.embedding, args.out, declared_genus=report.genus)
    print(
        f"order={report.order} genus={report.genus} faces={report.face_count}"
        f" minimal={minimal} backtracks={report.backtracks}"
    )
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    system = load_embedding(args.embedding_file)
    report = validate_quadrangulation(system)
    if not report.is_quadrangulation:
        for failure in report.failures:
            print(f"FAIL: {failure}")
        return EXIT_FAIL
    print(
        f"ok: order={report.vertex_count} edges={report.edge_count}"
        f" faces={report.face_count} genus={report.genus}"
    )
    return EXIT_OK


def _cmd_interlace(args: argparse.Namespace) -> int:
    doubled = interlace(load_graph(args.graph_file))
    save_graph(doubled, args.out)
    print(f"wrote {args.out}: vertices={doubled.vertex_count} edges={doubled.edge_count}")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    budget = SearchBudget(max_nodes=args.max_nodes, time_cap=args.time_cap)
    if args.order is not None:
        system = search_quadrangulation(args.order, args.genus, budget)
        if system is None:
            print(f"exists: no (order {args.order}, genus {args.genus})")
            return EXIT_FAIL
        print(f"exists: yes (order {args.order}, genus {args.genus})")
        if args.out:
            save_embedding(system, args.out, declared_genus=args.genus)
            print(f"wrote {args.out}")
        return EXIT_OK
    found = min_order_bruteforce(args.genus, budget, max_order=args.max_order)
    print(f"minimum order for genus {args.genus}: {found.order} (nodes={found.nodes})")
    if args.out:
        save_embedding(found.witness, args.out, declared_genus=args.genus)
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_spectrum(args: argparse.Namespace) -> int:
    orders = spectrum(args.genus, args.max_p)
    print(" ".join(str(order) for order in orders))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qforge",
        description="Minimum-order quadrangulations of closed orientable surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_min = sub.add_parser("minorder", help="minimum quadrangulation order per genus")
    p_min.add_argument("-g", "--genus", type=int, required=True)
    p_min.add_argument("--scan", type=int, default=None, help="print a table up to this genus")
    p_min.set_defaults(handler=_cmd_minorder)

    p_build = sub.add_parser("build", help="build a verified spinal quadrangulation")
    source = p_build.add_mutually_exclusive_group(required=True)
    source.add_argument("--spine", help="spine spec, e.g. complete:12")
    source.add_argument("--spine-file", help="path to a graph document to use as spine")
    p_build.add_argument("--minus", type=int, default=0, help="edges to delete from a complete spine")
    p_build.add_argument("-o", "--out", required=True, help="embedding document to write")
    p_build.set_defaults(handler=_cmd_build)

    p_verify = sub.add_parser("verify", help="validate an embedding document")
    p_verify.add_argument("embedding_file")
    p_verify.set_defaults(handler=_cmd_verify)

    p_inter = sub.add_parser("interlace", help="write the 2-fold interlacement of a graph")
    p_inter.add_argument("graph_file")
    p_inter.add_argument("-o", "--out", required=True, help="graph document to write")
    p_inter.set_defaults(handler=_cmd_interlace)

    p_oracle = sub.add_parser("oracle", help="brute-force existence search")
    p_oracle.add_argument("-g", "--genus", type=int, required=True)
    scope = p_oracle.add_mutually_exclusive_group()
    scope.add_argument("--order", type=int, default=None, help="test one specific order")
    scope.add_argument("--max-order", type=int, default=None, help="cap the minimum-order scan")
    p_oracle.add_argument("--max-nodes", type=int, default=SearchBudget.max_nodes)
    p_oracle.add_argument("--time-cap", type=float, default=SearchBudget.time_cap)
    p_oracle.add_argument("-o", "--out", default=None, help="witness embedding to write on success")
    p_oracle.set_defaults(handler=_cmd_oracle)

    p_spec = sub.add_parser("spectrum", help="orders realizable by spinal quadrangulations")
    p_spec.add_argument("-g", "--genus", type=int, required=True)
    p_spec.add_argument("--max-p", type=int, required=True, help="largest spine size to include")
    p_spec.set_defaults(handler=_cmd_spectrum)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except GenusMismatchError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BudgetExhausted as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except BuildError as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
