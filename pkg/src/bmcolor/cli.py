"""Command line: generate instances, run solvers, compare against the
exact optimum, build hardness reductions, and verify solutions.

Exit codes: 0 success, 2 invalid input (including failed verification),
3 guard exceeded, 4 infeasible.  Output is byte-reproducible; wall-clock
times appear only with --timing.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import fileio
from .edge_algos import convert_ec_tree, greedy_ec, setcover_approx
from .errors import (
    GuardExceededError,
    InfeasibleError,
    InvalidCertificateError,
    InvalidParameterError,
    InvalidStructureError,
    ParseError,
)
from .generators import gen_random
from .graphs import Coloring, Mode, validate_coloring
from .oracle import DEFAULT_SIZE_GUARD, OracleResult, list_driven_minimum, oracle_opt
from .reduction import (
    CHAIN_BOUND,
    ChainListInstance,
    build_hardness_instance,
    normalize_chain_list_instance,
    verify_yes_certificate,
    vertex_chain_to_edge_chain,
)
from .vertex_algos import SchemeParams, scheme, split, tree_exact_fixed_k, vc_b_bipartite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_INFEASIBLE = 4

ALGORITHMS = (
    "split",
    "vcb",
    "scheme",
    "greedy",
    "convert",
    "setcover",
    "tree-exact",
    "oracle",
    "list-min",
)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _guard(args: argparse.Namespace) -> int:
    if args.guard is not None:
        return args.guard
    env = os.environ.get("BMCOLOR_GUARD")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidParameterError(
                f"BMCOLOR_GUARD must be an integer, got {env!r}"
            ) from None
    return DEFAULT_SIZE_GUARD


def _run_algorithm(name: str, g, args: argparse.Namespace) -> Coloring:
    b = args.b
    if name == "split":
        return split(g, b)
    if name == "vcb":
        return vc_b_bipartite(g, b)
    if name == "scheme":
        return scheme(g, b, SchemeParams(p=args.p))
    if name == "tree-exact":
        if args.k is None:
            raise InvalidParameterError("tree-exact needs --k")
        found = tree_exact_fixed_k(g, args.k, b, size_guard=_guard(args))
        if found is None:
            raise InfeasibleError(f"no coloring with exactly {args.k} classes")
        return found
    if name == "greedy":
        return greedy_ec(g, b)
    if name == "convert":
        return convert_ec_tree(g, b)
    if name == "setcover":
        return setcover_approx(g, b)
    if name == "oracle":
        return oracle_opt(g, b, size_guard=_guard(args)).witness
    if name == "list-min":
        return list_driven_minimum(g, b, size_guard=_guard(args)).witness
    raise InvalidParameterError(f"unknown algorithm {name!r}")


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "bipartite":
        if args.left is None or args.right is None:
            raise InvalidParameterError("bipartite generation needs --left and --right")
    elif args.n is None:
        raise InvalidParameterError(f"{args.family} generation needs --n")
    weight_range = (1, 1) if args.unit else (args.wmin, args.wmax)
    g, _ = gen_random(
        args.family,
        args.seed,
        n=args.n or 0,
        n_left=args.left or 0,
        n_right=args.right or 0,
        density=args.density,
        weight_range=weight_range,
        mode=Mode(args.mode),
    )
    _emit(fileio.serialize_instance(g), args.output)
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    g = fileio.parse_instance(_read(args.instance))
    started = time.perf_counter()
    coloring = _run_algorithm(args.alg, g, args)
    elapsed = time.perf_counter() - started
    lines = [
        f"algorithm: {args.alg}",
        f"mode: {g.mode.value}",
        f"items: {g.item_count}",
        f"b: {args.b}",
        f"classes: {coloring.class_count}",
        f"weight: {fileio.format_weight(coloring.total_weight)}",
    ]
    if args.timing:
        lines.append(f"wall_time: {elapsed:.6f}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output is not None:
        _emit(fileio.serialize_coloring(coloring), args.output)
    return EXIT_OK


@dataclass
class RunRecord:
    """One (instance, algorithm) cell of a comparison table."""

    instance: str
    algorithm: str
    b: int
    weight: Fraction
    classes: int
    opt_weight: Fraction | None
    opt_classes: int | None
    ratio: Fraction | None
    wall_time: float | None

    def row(self) -> list[str]:
        return [
            self.instance,
            self.algorithm,
            str(self.b),
            fileio.format_weight(self.weight),
            str(self.classes),
            fileio.format_weight(self.opt_weight) if self.opt_weight is not None else "",
            str(self.opt_classes) if self.opt_classes is not None else "",
            _format_ratio(self.ratio) if self.ratio is not None else "",
            f"{self.wall_time:.6f}" if self.wall_time is not None else "",
        ]


def _format_ratio(r: Fraction) -> str:
    # machine-readable ratios are always num/den, even when integral
    return f"{r.numerator}/{r.denominator}"


CSV_HEADER = [
    "instance",
    "algorithm",
    "b",
    "weight",
    "classes",
    "opt",
    "opt_classes",
    "ratio",
    "wall_time",
]


def _cmd_compare(args: argparse.Namespace) -> int:
    g = fileio.parse_instance(_read(args.instance))
    names = [name.strip() for name in args.algs.split(",") if name.strip()]
    if not names:
        raise InvalidParameterError("no algorithms requested")
    for name in names:
        if name not in ALGORITHMS:
            raise InvalidParameterError(f"unknown algorithm {name!r}")
    opt: OracleResult | None = None
    if args.oracle:
        opt = oracle_opt(g, args.b, size_guard=_guard(args))
    records = []
    for name in names:
        started = time.perf_counter()
        coloring = _run_algorithm(name, g, args)
        elapsed = time.perf_counter() - started
        ratio = None
        if opt is not None and opt.opt_weight > 0:
            ratio = coloring.total_weight / opt.opt_weight
        records.append(
            RunRecord(
                instance=args.instance,
                algorithm=name,
                b=args.b,
                weight=coloring.total_weight,
                classes=coloring.class_count,
                opt_weight=opt.opt_weight if opt is not None else None,
                opt_classes=opt.class_count if opt is not None else None,
                ratio=ratio,
                wall_time=elapsed if args.timing else None,
            )
        )
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.row())
    _emit(buffer.getvalue(), args.csv)
    return EXIT_OK


def _cmd_reduce(args: argparse.Namespace) -> int:
    inst = fileio.parse_list_instance(_read(args.instance))
    if args.from_vertex:
        inst = vertex_chain_to_edge_chain(inst)
    if args.raw:
        if any(bound != CHAIN_BOUND for bound in inst.bounds):
            raise InvalidParameterError(
                f"--raw requires every bound to equal {CHAIN_BOUND}"
            )
        chains = ChainListInstance(graph=inst.graph, k=inst.k, lists=inst.lists)
    else:
        chains = normalize_chain_list_instance(inst)
    out = build_hardness_instance(chains)
    text = fileio.serialize_reduction(out)
    if args.output is None:
        sys.stdout.write(text)
    else:
        _emit(text, args.output)
        summary = [
            f"b_prime: {out.b_prime}",
            f"k: {out.k}",
            f"target: {fileio.format_weight(out.target_weight)}",
            f"components: {out.p}",
            f"tree_vertices: {out.tree.vertex_count}",
            f"tree_edges: {len(out.tree.edges)}",
        ]
        sys.stdout.write("\n".join(summary) + "\n")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.reduction is not None:
        return _verify_reduction(args)
    if args.instance is None or args.b is None:
        raise InvalidParameterError("verify needs -i and --b (or --reduction)")
    g = fileio.parse_instance(_read(args.instance))
    classes = fileio.parse_coloring(_read(args.coloring))
    report = validate_coloring(g, classes, args.b)
    if not report.ok:
        sys.stderr.write(f"invalid: {report.reason}: {report.detail}\n")
        return EXIT_USAGE
    sys.stdout.write(
        f"ok: classes {len(classes)} weight {fileio.format_weight(report.total_weight)}\n"
    )
    return EXIT_OK


def _verify_reduction(args: argparse.Namespace) -> int:
    out = fileio.parse_reduction(_read(args.reduction))
    cert = fileio.parse_certificate(_read(args.coloring))
    coloring = verify_yes_certificate(out, cert)
    report = validate_coloring(out.tree, coloring, out.b_prime)
    if not report.ok:
        sys.stderr.write(f"invalid: {report.reason}: {report.detail}\n")
        return EXIT_USAGE
    if coloring.total_weight != out.target_weight:
        sys.stderr.write(
            f"invalid: weight mismatch: coloring weighs "
            f"{fileio.format_weight(coloring.total_weight)}, target is "
            f"{fileio.format_weight(out.target_weight)}\n"
        )
        return EXIT_USAGE
    sys.stdout.write(
        f"ok: classes {coloring.class_count} weight "
        f"{fileio.format_weight(out.target_weight)} matches target\n"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bmcolor",
        description="Bounded max-coloring: approximation algorithms, exact "
        "solvers, and the hardness reduction on trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance")
    gen.add_argument("--family", choices=("bipartite", "tree", "general"), required=True)
    gen.add_argument("--n", type=int, default=None, help="vertex count (tree/general)")
    gen.add_argument("--left", type=int, default=None, help="left side size (bipartite)")
    gen.add_argument("--right", type=int, default=None, help="right side size (bipartite)")
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--mode", choices=("vertex", "edge"), default="vertex")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--wmin", type=int, default=1)
    gen.add_argument("--wmax", type=int, default=10)
    gen.add_argument("--unit", action="store_true", help="all weights 1")
    gen.add_argument("-o", "--output", default=None)
    gen.set_defaults(handler=_cmd_gen)

    solve = sub.add_parser("solve", help="run one algorithm")
    solve.add_argument("--alg", choices=ALGORITHMS, required=True)
    solve.add_argument("--b", type=int, required=True, help="class cardinality bound")
    solve.add_argument("--p", type=int, default=2, help="prefix color budget (scheme)")
    solve.add_argument("--k", type=int, default=None, help="exact class count (tree-exact)")
    solve.add_argument("--guard", type=int, default=None, help="exact-solver size guard")
    solve.add_argument("--timing", action="store_true", help="report wall-clock time")
    solve.add_argument("-i", "--instance", required=True, help="instance file")
    solve.add_argument("-o", "--output", default=None, help="write the coloring here")
    solve.set_defaults(handler=_cmd_solve)

    compare = sub.add_parser("compare", help="run several algorithms, emit CSV")
    compare.add_argument(
        "--algs", required=True, help="comma-separated algorithm names"
    )
    compare.add_argument(
        "--oracle",
        action="store_true",
        help="also compute the exact optimum and fill opt/ratio columns",
    )
    compare.add_argument("--b", type=int, required=True)
    compare.add_argument("--p", type=int, default=2)
    compare.add_argument("--k", type=int, default=None)
    compare.add_argument("--guard", type=int, default=None)
    compare.add_argument("--timing", action="store_true")
    compare.add_argument("-i", "--instance", required=True)
    compare.add_argument("--csv", default=None, help="CSV output file (default stdout)")
    compare.set_defaults(handler=_cmd_compare)

    reduce_p = sub.add_parser(
        "reduce", help="build the tree hardness instance from a chains list instance"
    )
    reduce_p.add_argument("-i", "--instance", required=True, help="list instance file")
    reduce_p.add_argument(
        "--from-vertex",
        action="store_true",
        help="input lists live on path vertices; take the line graph first",
    )
    reduce_p.add_argument(
        "--raw",
        action="store_true",
        help="input is already normalized (two-color lists, all bounds 5)",
    )
    reduce_p.add_argument("-o", "--output", default=None)
    reduce_p.set_defaults(handler=_cmd_reduce)

    verify = sub.add_parser("verify", help="check a coloring or a reduction certificate")
    verify.add_argument("-i", "--instance", default=None, help="instance file")
    verify.add_argument("--b", type=int, default=None, help="class cardinality bound")
    verify.add_argument(
        "--reduction",
        default=None,
        help="reduction file; -c then holds a chains certificate",
    )
    verify.add_argument(
        "-c", "--coloring", required=True, help="coloring (or certificate) file"
    )
    verify.set_defaults(handler=_cmd_verify)

    return parser


def entrypoint(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (
        ParseError,
        InvalidParameterError,
        InvalidStructureError,
        InvalidCertificateError,
    ) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE
    except GuardExceededError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_GUARD
    except InfeasibleError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_INFEASIBLE
    except OSError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(entrypoint())
