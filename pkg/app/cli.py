"""
Command-line front end: ``tourlink <command> [flags]``.

Exit codes are uniform across commands: 0 on success, 1 when an
algorithm or a verification fails, 2 on usage or input errors
(including exhausted oracle budgets).
"""
import argparse
import logging
import sys
from pathlib import Path as FilePath
from typing import Callable, List, Optional

import numpy as np

from app.linkage import bench
from app.linkage.domination import Flavor, check_degree_bound, greedy_dominating
from app.linkage.flows import strong_connectivity
from app.linkage.linkage_pairs import find_linkage_pair, route
from app.linkage.linker import Linker, LinkRequest, verify_linkage
from app.linkage.oracle import OracleBudget, bf_is_k_linked, bf_strong_connectivity
from app.linkage.tournament import (
    Tournament,
    paley,
    parse,
    random_tournament,
    rotational,
    serialize,
    transitive,
)
from app.linkage.utils.errors import (
    InputError,
    LinkageToolkitError,
    LinkerStageError,
    OracleBudgetExceeded,
)
from app.linkage.utils.formats import format_paths, format_report, parse_pairs, parse_paths

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

GENERATORS = {
    "transitive": lambda n, seed: transitive(n),
    "rotational": lambda n, seed: rotational(n),
    "random": lambda n, seed: random_tournament(n, seed),
    "paley": lambda n, seed: paley(n),
}


def _read(path: str) -> str:
    """Read a text file without newline translation, so stray CRs stay visible."""
    try:
        return FilePath(path).read_bytes().decode("utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise InputError(f"{path} is not UTF-8 text") from e


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _load_tournament(path: str) -> Tournament:
    return parse(_read(path))


def _load_request(path: str) -> LinkRequest:
    return LinkRequest.from_pairs(parse_pairs(_read(path)))


def cmd_gen(args: argparse.Namespace) -> int:
    tournament = GENERATORS[args.kind](args.n, args.seed)
    _write(args.out, serialize(tournament))
    return EXIT_OK


def cmd_kappa(args: argparse.Namespace) -> int:
    tournament = _load_tournament(args.input)
    if args.brute:
        kappa = bf_strong_connectivity(tournament, OracleBudget())
    else:
        kappa = strong_connectivity(tournament)
    print(kappa)
    return EXIT_OK


def cmd_link(args: argparse.Namespace) -> int:
    tournament = _load_tournament(args.input)
    request = _load_request(args.pairs)
    request.check_range(tournament)
    try:
        result = Linker().link(tournament, request, force=args.force)
    except LinkerStageError as e:
        print(f"stage {e.stage} failed", file=sys.stderr)
        for key, value in e.state.items():
            print(f"  {key}: {value}", file=sys.stderr)
        raise

    for stage, summary in result.diagnostics.items():
        print(f"{stage}: {summary}", file=sys.stderr)
    _write(args.out, format_paths(result.paths))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    tournament = _load_tournament(args.input)
    request = _load_request(args.pairs)
    paths = parse_paths(_read(args.paths))
    report = verify_linkage(tournament, request, paths)
    if report:
        print("ok")
        return EXIT_OK
    print(f"violation: {report.violation}")
    return EXIT_FAILURE


def cmd_linkage_pair(args: argparse.Namespace) -> int:
    tournament = _load_tournament(args.input)
    pair = find_linkage_pair(tournament, args.m)
    print(f"mode: {pair.mode}")
    print(f"X: {' '.join(map(str, pair.xs))}")
    print(f"Y: {' '.join(map(str, pair.ys))}")

    rng = np.random.default_rng(args.seed)
    for _ in range(args.perms):
        sigma = [int(j) for j in rng.permutation(pair.m)]
        route(tournament, pair, sigma)
    print(f"routed {args.perms} permutations")
    return EXIT_OK


def cmd_domset(args: argparse.Namespace) -> int:
    tournament = _load_tournament(args.input)
    sequence = greedy_dominating(tournament, tournament.vertices(), args.size, args.flavor)
    holds = check_degree_bound(tournament, sequence)
    print(f"sequence: {' '.join(map(str, sequence.verts))}")
    print(f"residual: {len(sequence.residual)}")
    print(f"degree bound: {'holds' if holds else 'violated'}")
    return EXIT_OK if holds else EXIT_FAILURE


def cmd_oracle(args: argparse.Namespace) -> int:
    tournament = _load_tournament(args.input)
    budget = OracleBudget()
    if args.check == "kappa":
        print(bf_strong_connectivity(tournament, budget))
        return EXIT_OK

    if args.k is None:
        raise InputError("--check linked needs --k")
    verdict = bf_is_k_linked(tournament, args.k, budget)
    if verdict:
        print("linked")
    else:
        pairs = "; ".join(f"{x} {y}" for x, y in verdict.counterexample)
        print(f"not linked: {pairs}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    records = bench.run_suite(args.suite, workers=args.workers, seed_offset=args.seed_offset)
    _write(args.out, format_report(records, timing=not args.no_timing))
    print(f"digest: {bench.report_digest(records)}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tourlink", description="Disjoint-path linking in highly connected tournaments"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("gen", help="generate a tournament file")
    p.add_argument("--kind", choices=sorted(GENERATORS), required=True)
    p.add_argument("--n", type=int, required=True, help="vertex count (the prime p for paley)")
    p.add_argument("--seed", type=int, default=0, help="seed for --kind random")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(handler=cmd_gen)

    p = commands.add_parser("kappa", help="strong connectivity")
    p.add_argument("--in", dest="input", required=True)
    method = p.add_mutually_exclusive_group()
    method.add_argument("--exact", action="store_true", help="flow-based (default)")
    method.add_argument("--brute", action="store_true", help="exhaustive oracle")
    p.set_defaults(handler=cmd_kappa)

    p = commands.add_parser("link", help="link terminal pairs")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--force", action="store_true", help="skip the degree floor check")
    p.add_argument("--out", help="paths file (default: stdout)")
    p.set_defaults(handler=cmd_link)

    p = commands.add_parser("verify", help="verify a paths file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--paths", required=True)
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("lemma21", help="find a linkage pair and route random permutations")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--perms", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_linkage_pair)

    p = commands.add_parser("domset", help="greedy dominating sequence over all vertices")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--flavor", choices=Flavor.ALL, default=Flavor.IN)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(handler=cmd_domset)

    p = commands.add_parser("oracle", help="exhaustive ground truth for small tournaments")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--check", choices=("kappa", "linked"), required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(handler=cmd_oracle)

    p = commands.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--out", help="report file (default: stdout)")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", "--seed-offset", dest="seed_offset", type=int, default=0, help="offset added to every suite seed")
    p.add_argument("--no-timing", action="store_true", help="write '-' for runtimes")
    p.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (InputError, OracleBudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LinkageToolkitError as e:
        print(f"failed: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
