"""Command-line entry point: ``htp <command> ...``.

Exit codes: 0 success/found, 1 unsolvable or failed verification,
2 inconclusive search, 64 usage or file-format error, 65 unsupported shape.
"""

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import fileio
from .bounds import bounds_for, complement_magic
from .hexgrid import (
    InvalidSolution,
    ShapeFamily,
    UnsupportedShape,
    build_shape,
    complement_solution,
    find_violations,
)
from .oracle import OracleTooLarge, oracle_count
from .solver import SearchInconclusive, SolverConfig, Status, ValueOrder, count_solutions, solve_one, sweep

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_SHAPE = 0, 1, 2, 64, 65
TIMEOUT_ENV = "HTP_DEFAULT_TIMEOUT_SECS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_timeout() -> Optional[float]:
    raw = os.environ.get(TIMEOUT_ENV)
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TIMEOUT_ENV} must be a number of seconds, got {raw!r}") from None


def _config(args, timeout: Optional[float]) -> SolverConfig:
    order = args.value_order
    if order is None:
        order = ValueOrder.SEEDED_SHUFFLE if args.seed is not None else ValueOrder.ASCENDING
    return SolverConfig(
        seed=args.seed or 0,
        node_limit=args.node_limit,
        time_budget=timeout if timeout is not None else _default_timeout(),
        value_order=ValueOrder(order),
    )


def _add_shape_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, help=", ".join(f.value for f in ShapeFamily))
    p.add_argument("--order", required=True, type=int)


def _add_search_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="seed for shuffled value order (implies --value-order shuffle)")
    p.add_argument("--value-order", choices=[o.value for o in ValueOrder])
    p.add_argument("--node-limit", type=int)


def cmd_shape(args) -> int:
    shape = build_shape(args.family, args.order)
    if args.json:
        print(json.dumps(shape.to_json(), separators=(",", ":")))
    else:
        print(f"{shape.label} vertices={shape.n} hexagons={len(shape.hexagons)}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    bounds, report = bounds_for(args.family, args.order)
    print(f"{bounds.lower} {bounds.upper} {bounds.kind.value}")
    for line in report.lines():
        print(f"  {line}")
    for name, _ in report.certificates:
        print(f"  certificate ok: {name}")
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    shape = build_shape(args.family, args.order)
    out = solve_one(shape, args.magic, _config(args, args.timeout))
    stats = out.stats
    print(f"{args.magic} {out.status.value} nodes={stats.nodes_expanded} forced={stats.forced_assignments} "
          f"prunes={stats.prunes} ms={round(stats.elapsed * 1000)}")
    if out.status is Status.FOUND:
        print("values " + " ".join(map(str, out.assignment.values)))
        if args.out:
            fileio.write_solution(args.out, fileio.SolutionFile.from_assignment(out.assignment, args.magic))
        return EXIT_OK
    return EXIT_FAIL if out.status is Status.UNSOLVABLE else EXIT_INCONCLUSIVE


def cmd_sweep(args) -> int:
    shape = build_shape(args.family, args.order)
    if (args.lo is None) != (args.hi is None):
        raise UsageError("--from and --to must be given together")
    magic_range = None if args.lo is None else (args.lo, args.hi)
    results = sweep(shape, magic_range, _config(args, args.timeout_per_m), jobs=args.jobs)
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for magic, entry in results.items():
        print(entry.summary())
        if out_dir and entry.found:
            sol = fileio.SolutionFile.from_assignment(entry.assignment, magic)
            fileio.write_solution(out_dir / f"{shape.family.value}-{shape.order}-{magic}.htp", sol)
    return EXIT_OK


def cmd_count(args) -> int:
    shape = build_shape(args.family, args.order)
    if args.oracle:
        try:
            print(oracle_count(shape, args.magic))
        except OracleTooLarge as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_SHAPE
        return EXIT_OK
    try:
        print(count_solutions(shape, args.magic, _config(args, args.timeout)))
    except SearchInconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _verify_file(sol: fileio.SolutionFile) -> List[str]:
    shape = build_shape(sol.family, sol.order)
    magic, problems = find_violations(shape, sol.assignment)
    if not problems and magic != sol.magic:
        problems = [f"declared magic {sol.magic} but every hexagon sums to {magic}"]
    return problems


def cmd_verify(args) -> int:
    sol = fileio.read_solution(args.file)
    problems = _verify_file(sol)
    if problems:
        for problem in problems:
            print(problem)
        return EXIT_FAIL
    print(f"OK magic={sol.magic}")
    return EXIT_OK


def cmd_complement(args) -> int:
    sol = fileio.read_solution(args.file)
    image = complement_solution(sol.assignment)
    n = len(sol.values)
    out = fileio.SolutionFile.from_assignment(image, complement_magic(sol.magic, n))
    if args.out:
        fileio.write_solution(args.out, out)
    else:
        sys.stdout.write(fileio.serialize(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="htp", description="Hexagonal tortoise problem: shapes, bounds and solver.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("shape", help="vertex/hexagon counts or JSON incidence graph")
    _add_shape_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("bounds", help="magic-constant bounds with derivation")
    _add_shape_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("solve", help="search for one solution at a magic constant")
    _add_shape_args(p)
    p.add_argument("--magic", required=True, type=int)
    p.add_argument("--timeout", type=float, help=f"seconds (default ${TIMEOUT_ENV} or none)")
    p.add_argument("--out")
    _add_search_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="solve every magic constant in a range")
    _add_shape_args(p)
    p.add_argument("--from", dest="lo", type=int)
    p.add_argument("--to", dest="hi", type=int)
    p.add_argument("--timeout-per-m", type=float)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir")
    _add_search_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("count", help="exact number of solutions")
    _add_shape_args(p)
    p.add_argument("--magic", required=True, type=int)
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle (<= 16 vertices)")
    p.add_argument("--timeout", type=float)
    _add_search_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="check a solution file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("complement", help="write the complemented solution")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_complement)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedShape as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (UsageError, fileio.SolutionFormatError, InvalidSolution, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
