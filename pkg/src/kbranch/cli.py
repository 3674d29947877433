"""Command-line front end: ``kbranch solve|brute|verify|gen``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from kbranch.generators import (
    DimacsError,
    NotThreeSatTwo,
    parse_dimacs,
    random_instance,
    sat_to_instance,
)
from kbranch.model import (
    Instance,
    ScoreFileError,
    UnlistedParentSet,
    evaluate_score,
    is_k_branching,
    min_deletion_size,
    parse_scores,
    skeleton_is_acyclic,
    to_dot,
    write_scores,
)
from kbranch.oracle import DEFAULT_CAP, SearchSpaceTooLarge, brute_force_optimum
from kbranch.solver import Solution, solve_edmonds, solve_intree_fpt, solve_k_branching

EXIT_PARSE = 2
EXIT_USAGE = 3
EXIT_TOO_LARGE = 4
EXIT_NOT_3SAT2 = 5

log = logging.getLogger("kbranch")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunReport:
    solution: Solution
    mode: str
    guess_count: int
    wall_time_ms: int


def _load_instance(path: str) -> Instance:
    try:
        return parse_scores(Path(path).read_text())
    except (OSError, ScoreFileError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _arc_names(instance: Instance, arcs) -> list[list[str]]:
    return [[instance.names[u], instance.names[v]] for u, v in sorted(arcs)]


def render(instance: Instance, report: RunReport, fmt: str, k: int) -> str:
    sol = report.solution
    if fmt == "dot":
        return to_dot(instance, sol.arcs, sol.deletion_set)
    if fmt == "text":
        lines = [f"score {sol.score:.9f}", f"mode {report.mode}", f"k {k}"]
        lines += [f"{t} -> {h}" for t, h in _arc_names(instance, sol.arcs)]
        lines += [f"delete {t} -> {h}" for t, h in _arc_names(instance, sol.deletion_set)]
        return "\n".join(lines) + "\n"
    payload = {
        "arcs": _arc_names(instance, sol.arcs),
        "score": round(sol.score, 9),
        "deletion_set": _arc_names(instance, sol.deletion_set),
        "mode": report.mode,
        "k": k,
        "guess_count": report.guess_count,
    }
    return json.dumps(payload) + "\n"


def cmd_solve(args) -> int:
    instance = _load_instance(args.scores)
    if args.k < 0:
        raise CliError("k must be non-negative", EXIT_USAGE)
    mode = args.mode
    if mode == "auto":
        mode = "edmonds" if args.k == 0 else "exhaustive"
    if mode == "edmonds" and args.k != 0:
        raise CliError("mode edmonds only solves k = 0", EXIT_USAGE)
    if args.jobs < 1:
        raise CliError("--jobs must be at least 1", EXIT_USAGE)

    start = time.perf_counter()
    if mode == "edmonds":
        sol = solve_edmonds(instance)
        count = 1
    elif mode == "intree":
        sol = solve_intree_fpt(instance, args.k)
        count = sol.guess_count
    else:
        sol = solve_k_branching(instance, args.k, jobs=args.jobs)
        count = sol.guess_count
    report = RunReport(sol, mode, count, int((time.perf_counter() - start) * 1000))
    log.info("mode=%s guesses=%d time=%dms", mode, count, report.wall_time_ms)
    sys.stdout.write(render(instance, report, args.format, args.k))
    return 0


def cmd_brute(args) -> int:
    instance = _load_instance(args.scores)
    if args.k < 0:
        raise CliError("k must be non-negative", EXIT_USAGE)
    start = time.perf_counter()
    try:
        sol = brute_force_optimum(instance, args.k, cap=args.cap)
    except SearchSpaceTooLarge as exc:
        raise CliError(str(exc), EXIT_TOO_LARGE) from None
    report = RunReport(sol, "brute", 1, int((time.perf_counter() - start) * 1000))
    log.info("brute time=%dms", report.wall_time_ms)
    sys.stdout.write(render(instance, report, args.format, args.k))
    return 0


def _load_network(instance: Instance, path: str):
    try:
        data = json.loads(Path(path).read_text())
        raw = data["arcs"]
        index = {name: v for v, name in enumerate(instance.names)}
        return {(index[str(t)], index[str(h)]) for t, h in raw}
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{path}: cannot read network ({exc!r})", EXIT_PARSE) from None


def cmd_verify(args) -> int:
    instance = _load_instance(args.scores)
    arcs = _load_network(instance, args.network)
    polytree = skeleton_is_acyclic(arcs)
    try:
        score = evaluate_score(instance, arcs)
    except UnlistedParentSet as exc:
        score = None
        log.warning("%s", exc)
    ok = is_k_branching(arcs, args.k) and score is not None
    report = {
        "is_polytree": polytree,
        "min_deletion_size": min_deletion_size(arcs),
        "is_k_branching": is_k_branching(arcs, args.k),
        "score": None if score is None else round(score, 9),
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return 0 if ok else 1


def cmd_gen(args) -> int:
    if args.kind == "random":
        try:
            instance = random_instance(args.n, args.max_set_size, args.sets_per_node, args.seed)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_USAGE) from None
        Path(args.out).write_text(write_scores(instance))
        return 0
    try:
        phi = parse_dimacs(Path(args.cnf).read_text())
    except (OSError, DimacsError) as exc:
        raise CliError(f"{args.cnf}: {exc}", EXIT_PARSE) from None
    try:
        instance, meta = sat_to_instance(phi)
    except NotThreeSatTwo as exc:
        raise CliError(f"not a 3-SAT-2 formula: {exc}", EXIT_NOT_3SAT2) from None
    Path(args.out).write_text(write_scores(instance))
    sys.stdout.write(json.dumps({"k": meta.k, "threshold": meta.threshold, "nodes": instance.n}) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kbranch", description="Optimal k-branchings for decomposable scores.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log timings to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a best k-branching")
    p.add_argument("scores")
    p.add_argument("-k", type=int, default=0)
    p.add_argument("--mode", choices=["exhaustive", "intree", "edmonds", "auto"], default="auto")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("brute", help="exhaustive optimum (small instances only)")
    p.add_argument("scores")
    p.add_argument("-k", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("verify", help="check a network against a score file")
    p.add_argument("scores")
    p.add_argument("network")
    p.add_argument("-k", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a generated score file")
    gen = p.add_subparsers(dest="kind", required=True)
    g = gen.add_parser("random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--max-set-size", type=int, default=2)
    g.add_argument("--sets-per-node", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", required=True)
    g = gen.add_parser("sat3")
    g.add_argument("cnf")
    g.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"kbranch: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
