"""Command-line entry point: ``popular-partitions <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import gadgets
from .errors import BudgetExceeded, InvalidArgument, ParseError, PreconditionError, SchemaError
from .experiments import lemma_suite
from .falsify import falsify_popularity
from .io import (
    format_rational, parse_game, parse_partition, parse_qdnf,
    serialize_game, serialize_partition, serialize_roles,
)
from .model import partition_utility
from .popularity import (
    DEFAULT_ENUMERATION_LIMIT, Mode, Verdict, find_popular, mutual_negative_pairs,
    popularity_margin, verify_popular,
)
from .qsat import qsat_solve
from .reductions import build_pistar, reduce

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, path: str | None, out) -> None:
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


def _bits(tau) -> str:
    return "".join("1" if b else "0" for b in tau)


def _report_lines(report, out) -> None:
    print(f"verdict: {report.verdict.value}", file=out)
    print(f"challengers_examined: {report.challengers_examined}", file=out)
    print(f"pruned: {report.pruned}", file=out)
    if report.witness is not None:
        print(f"witness: {report.witness}", file=out)
        mb = report.margin
        print(f"margin: {mb.margin} (prefers_first={mb.prefers_first} "
              f"prefers_second={mb.prefers_second} indifferent={mb.indifferent})", file=out)


def cmd_gadget(args, out) -> int:
    if args.which == "fig1":
        text = serialize_game(gadgets.five_agent_noinstance(), gadgets.FIG1_NAMES)
    else:
        if args.k is None:
            raise InvalidArgument("star gadget needs --k")
        text = serialize_game(gadgets.star_game(args.k), gadgets.star_names(args.k))
    _emit(text, args.output, out)
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    instance = parse_qdnf(_read(args.formula))
    artifact = reduce(instance, args.model)
    names = [r.label for r in artifact.roles]
    _emit(serialize_game(artifact.game, names), args.output, out)
    if args.roles:
        Path(args.roles).write_text(serialize_roles(artifact))
    if args.pistar:
        tau = qsat_solve(instance) if args.tau_x is None else tuple(c == "1" for c in args.tau_x)
        if tau is None:
            raise InvalidArgument("formula has no certified X assignment; pass --tau-x")
        Path(args.pistar).write_text(serialize_partition(build_pistar(artifact, tau)))
    print(f"agents: {artifact.game.n_agents}", file=sys.stderr if not args.output else out)
    return EXIT_OK


def cmd_qsat(args, out) -> int:
    instance = parse_qdnf(_read(args.formula))
    tau = qsat_solve(instance, args.limit)
    print("no" if tau is None else f"yes tau_x={_bits(tau)}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    game = parse_game(_read(args.game))
    pi = parse_partition(_read(args.partition), game.n_agents)
    mode = args.mode
    if mode == "auto":
        mode = "full" if game.n_agents <= args.limit else "falsify"
    if mode == "falsify":
        report = falsify_popularity(game, pi, args.budget, args.seed)
    else:
        report = verify_popular(game, pi, Mode(mode), args.limit, args.workers)
    print(f"mode: {mode}", file=out)
    _report_lines(report, out)
    if args.strict and report.verdict is Verdict.NOT_POPULAR:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_find_popular(args, out) -> int:
    game = parse_game(_read(args.game))
    pairs = () if args.prune_threshold is None else mutual_negative_pairs(game, args.prune_threshold)
    found = find_popular(game, args.limit, pairs, args.workers)
    if found is None:
        print("none", file=out)
        return EXIT_OK
    pi, report = found
    print(f"popular: {pi}", file=out)
    print(f"challengers_examined: {report.challengers_examined}", file=out)
    if args.output:
        Path(args.output).write_text(serialize_partition(pi))
    return EXIT_OK


def cmd_falsify(args, out) -> int:
    game = parse_game(_read(args.game))
    pi = parse_partition(_read(args.partition), game.n_agents)
    _report_lines(falsify_popularity(game, pi, args.budget, args.seed), out)
    return EXIT_OK


def cmd_margin(args, out) -> int:
    game = parse_game(_read(args.game))
    p1 = parse_partition(_read(args.pi1), game.n_agents)
    p2 = parse_partition(_read(args.pi2), game.n_agents)
    subset = None
    if args.subset:
        try:
            subset = [int(s) for s in args.subset.split(",") if s.strip()]
        except ValueError:
            raise InvalidArgument(f"bad --subset {args.subset!r}") from None
    mb = popularity_margin(game, p1, p2, subset)
    print(f"margin: {mb.margin}", file=out)
    print(f"prefers_first: {mb.prefers_first}", file=out)
    print(f"prefers_second: {mb.prefers_second}", file=out)
    print(f"indifferent: {mb.indifferent}", file=out)
    if args.utilities:
        agents = sorted(subset) if subset else range(game.n_agents)
        for a in agents:
            u1 = format_rational(partition_utility(game, p1, a))
            u2 = format_rational(partition_utility(game, p2, a))
            print(f"agent {a}: {u1} vs {u2}", file=out)
    return EXIT_OK


def cmd_lemma_suite(args, out) -> int:
    instance = parse_qdnf(_read(args.formula))
    report = lemma_suite(args.model, instance, args.seed, args.samples, args.workers)
    out.write(report.to_json() if args.json else report.render())
    if args.strict and not report.passed:
        return EXIT_NEGATIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="popular-partitions", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gadget", help="write a fixed small game")
    g.add_argument("which", choices=["fig1", "star"])
    g.add_argument("--k", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gadget)

    r = sub.add_parser("reduce", help="compile a QDNF formula into a hedonic game")
    r.add_argument("--model", choices=["ashg", "fhg"], required=True)
    r.add_argument("formula")
    r.add_argument("-o", "--output")
    r.add_argument("--roles")
    r.add_argument("--pistar", help="also write the constructive partition here")
    r.add_argument("--tau-x", help="bit string for --pistar (default: least certified)")
    r.set_defaults(func=cmd_reduce)

    q = sub.add_parser("qsat", help="brute-force a QDNF formula")
    q.add_argument("formula")
    q.add_argument("--limit", type=int, default=16)
    q.set_defaults(func=cmd_qsat)

    v = sub.add_parser("verify", help="decide whether a partition is popular")
    v.add_argument("game")
    v.add_argument("partition")
    v.add_argument("--mode", choices=["auto", "full", "pareto", "falsify"], default="auto")
    v.add_argument("--strict", action="store_true", help="exit 1 if not popular")
    v.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_LIMIT)
    v.add_argument("--budget", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("find-popular", help="exhaustively search for a popular partition")
    f.add_argument("game")
    f.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_LIMIT)
    f.add_argument("--workers", type=int, default=1)
    f.add_argument("--prune-threshold", type=str, default=None,
                   help="skip candidates grouping pairs valued <= this in both directions")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_find_popular)

    s = sub.add_parser("falsify", help="local search for a more popular partition")
    s.add_argument("game")
    s.add_argument("partition")
    s.add_argument("--budget", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_falsify)

    mg = sub.add_parser("margin", help="popularity margin of PI1 over PI2")
    mg.add_argument("game")
    mg.add_argument("pi1")
    mg.add_argument("pi2")
    mg.add_argument("--subset")
    mg.add_argument("--utilities", action="store_true")
    mg.set_defaults(func=cmd_margin)

    ls = sub.add_parser("lemma-suite", help="replay the reduction checks on a formula")
    ls.add_argument("--model", choices=["ashg", "fhg"], required=True)
    ls.add_argument("formula")
    ls.add_argument("--seed", type=int, default=0)
    ls.add_argument("--samples", type=int, default=1000)
    ls.add_argument("--workers", type=int, default=1)
    ls.add_argument("--json", action="store_true")
    ls.add_argument("--strict", action="store_true", help="exit 1 if any check fails")
    ls.set_defaults(func=cmd_lemma_suite)
    return p


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ParseError, SchemaError, PreconditionError, InvalidArgument,
            BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
