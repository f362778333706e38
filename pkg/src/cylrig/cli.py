"""``cylrig`` command line: rank, verify, generate, split-check.

Exit codes: 0 success or agreement, 1 usage or input error, 2 a verified
disagreement between independent rank computations.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coincident import (
    BRUTE_MAX_VERTICES,
    SCHEMA,
    RankReport,
    brute_uv_rank,
    contraction,
    deletion,
    is_uv_rigid,
    is_uv_rigid_sphere,
    uv_rank,
)
from .constructions import ConstructionError, SplitSpec, check_split_preserves_global, random_uv_independent, vertex_split
from .graph import DesignatedPair, Graph, GraphError, read_graph, serialize_graph
from .numeric import DEFAULT_TRIALS, build_matrix, numeric_edge_rank, numeric_uv_rank, random_realization
from .sparsity import BRUTE_MAX_EDGES, brute_sparse_rank, is_rigid_surface, is_sparse, sparse_rank
from .verify import VerifyConfig, run_verification, worker_count

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # usage errors share exit code 1 with bad input; 2 is reserved for disagreement
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _uv_verdict(g: Graph, pair: DesignatedPair, rank: int) -> str:
    independent = rank == len(g.edges)
    if is_uv_rigid(g, pair):
        return "minimally uv-rigid" if independent else "uv-rigid"
    return "uv-independent" if independent else "uv-dependent"


def _plain_verdict(g: Graph, l: int) -> str:
    if is_sparse(g, l) and len(g.edges) == 2 * len(g) - l:
        return f"(2,{l})-tight"
    if is_rigid_surface(g, l):
        return "rigid"
    if is_sparse(g, l):
        return f"(2,{l})-sparse"
    return "dependent"


def _resolve_pair(args, file_pair: DesignatedPair | None, g: Graph) -> DesignatedPair | None:
    if args.pair is None:
        return None
    if len(args.pair) == 2:
        pair = DesignatedPair(*args.pair)
    elif not args.pair:
        if file_pair is None:
            raise InputError("--pair given without labels and the file has no u/v lines")
        pair = file_pair
    else:
        raise InputError("--pair takes either no labels or exactly two")
    pair.check(g)
    return pair


def cmd_rank(args) -> int:
    g, file_pair = read_graph(args.file)
    pair = _resolve_pair(args, file_pair, g)
    l = 2 if args.surface == "cylinder" else 3
    if l == 3 and (args.numeric or args.dump_matrix):
        raise InputError("exact matrices are only built for the cylinder")
    extra: dict = {"surface": args.surface, "vertices": len(g), "edges": len(g.edges)}
    seed = args.seed

    if pair is None:
        report = RankReport(sparse_rank(g, l))
        if args.brute:
            if len(g.edges) > BRUTE_MAX_EDGES:
                raise InputError(f"--brute needs at most {BRUTE_MAX_EDGES} edges")
            report.brute_rank = brute_sparse_rank(g, l)
        if args.numeric:
            report.trials = args.trials
            report.numeric_rank = max(
                numeric_edge_rank(g, random_realization(g, None, seed + t)) for t in range(args.trials)
            )
        extra["verdict"] = _plain_verdict(g, l)
        parts_agree = True
    elif l == 2:
        rank = uv_rank(g, pair)
        report = RankReport(rank)
        if args.brute:
            if len(g) > BRUTE_MAX_VERTICES:
                raise InputError(f"--brute needs at most {BRUTE_MAX_VERTICES} vertices")
            report.brute_rank = brute_uv_rank(g, pair)
        if args.numeric:
            report.trials = args.trials
            report.numeric_rank = numeric_uv_rank(g, pair, args.trials, seed)
        extra.update(pair=[pair.u, pair.v], verdict=_uv_verdict(g, pair, rank))
        parts_agree = True
    else:
        # sphere: rigidity is decided through the (2,3) ranks of G - uv and G/uv
        dg, cg = deletion(g, pair), contraction(g, pair)
        report = RankReport(sparse_rank(dg, 3))
        contraction_rank = sparse_rank(cg, 3)
        parts_agree = True
        if args.brute:
            if len(dg.edges) > BRUTE_MAX_EDGES:
                raise InputError(f"--brute needs at most {BRUTE_MAX_EDGES} edges")
            report.brute_rank = brute_sparse_rank(dg, 3)
            parts_agree = brute_sparse_rank(cg, 3) == contraction_rank
        rigid = is_uv_rigid_sphere(g, pair)
        extra.update(
            pair=[pair.u, pair.v],
            contraction_rank=contraction_rank,
            verdict="uv-rigid on spheres" if rigid else "not uv-rigid on spheres",
        )

    if args.dump_matrix:
        p = random_realization(g, pair, seed)
        with open(args.dump_matrix, "w", encoding="utf-8") as fh:
            fh.write(build_matrix(g, p).to_json())

    ok = report.agree and parts_agree
    if args.json:
        print(report.to_json(**extra))
    else:
        label = "uv-rank" if pair is not None and l == 2 else "rank"
        if pair is not None and l == 3:
            label = "rank(G-uv)"
        print(f"{label}: {report.combinatorial_rank}")
        if "contraction_rank" in extra:
            print(f"rank(G/uv): {extra['contraction_rank']}")
        if report.brute_rank is not None:
            print(f"brute: {report.brute_rank}")
        if report.numeric_rank is not None:
            print(f"numeric: {report.numeric_rank} ({report.trials} trials)")
        print(f"verdict: {extra['verdict']}")
        if report.brute_rank is not None or report.numeric_rank is not None:
            print(f"agree: {str(ok).lower()}")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_verify(args) -> int:
    try:
        config = VerifyConfig(
            max_exhaustive_n=args.max_exhaustive_n,
            random_samples=args.random_samples,
            random_n_range=(args.n_min, args.n_max),
            trials=args.trials,
            seed=args.seed,
            force=args.force,
            inject_fault=args.inject_fault,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = run_verification(config, workers=args.workers or worker_count())
    if args.json:
        print(json.dumps({
            "schema": SCHEMA,
            "exhaustive": report.exhaustive,
            "random": report.random,
            "disagreements": report.disagreements,
        }, sort_keys=True))
    else:
        print("\n".join(report.lines(config)))
    return EXIT_OK if report.disagreements == 0 else EXIT_DISAGREE


def cmd_generate(args) -> int:
    if args.n < 7:
        raise InputError("--n must be at least 7")
    g, pair = random_uv_independent(args.n, args.seed)
    text = serialize_graph(g, pair)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_split_check(args) -> int:
    g, _ = read_graph(args.file)
    moved = [x for x in args.moved.split(",") if x]
    try:
        spec = SplitSpec.for_graph(g, args.pivot, moved, args.new)
        split = vertex_split(g, spec)
        verdict = check_split_preserves_global(g, spec, args.assume_globally_rigid)
    except (ConstructionError, GraphError) as exc:
        raise InputError(str(exc)) from None
    (v0,) = set(split.vertices) - set(g.vertices)
    print(f"split at {spec.pivot}: new vertex {v0}, moved {','.join(sorted(spec.moved))}")
    print(f"|V| {len(g)} -> {len(split)}, |E| {len(g.edges)} -> {len(split.edges)}")
    print(f"verdict: {verdict}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cylrig", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("rank", help="rank and rigidity verdict for a graph file")
    r.add_argument("file")
    r.add_argument("--surface", choices=("cylinder", "sphere"), default="cylinder")
    r.add_argument("--pair", nargs="*", metavar="LABEL",
                   help="designated pair U V; with no labels, use the file's u/v lines")
    r.add_argument("--numeric", action="store_true", help="also compute exact matrix rank")
    r.add_argument("--brute", action="store_true", help="also run the exhaustive oracle")
    r.add_argument("--json", action="store_true")
    r.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--dump-matrix", metavar="PATH", help="write the exact rigidity matrix as JSON")
    r.set_defaults(func=cmd_rank)

    v = sub.add_parser("verify", help="exhaustive and random three-way agreement check")
    v.add_argument("--max-exhaustive-n", type=int, default=6)
    v.add_argument("--random-samples", type=int, default=500)
    v.add_argument("--n-min", type=int, default=7)
    v.add_argument("--n-max", type=int, default=9)
    v.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=0, help="worker processes (default: CYLRIG_WORKERS or CPU count)")
    v.add_argument("--force", action="store_true", help="allow exhaustive n above 6")
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    gen = sub.add_parser("generate", help="write a random minimally uv-rigid graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_generate)

    s = sub.add_parser("split-check", help="check the hypotheses for a split to keep global rigidity")
    s.add_argument("file")
    s.add_argument("--pivot", required=True)
    s.add_argument("--moved", required=True, help="comma-separated neighbours moved to the new vertex")
    s.add_argument("--new", help="label for the new vertex")
    s.add_argument("--assume-globally-rigid", action="store_true")
    s.set_defaults(func=cmd_split_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, GraphError, OSError) as exc:
        print(f"cylrig: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
