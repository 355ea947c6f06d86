"""Command-line surface: solve, verify, exists, brute, dynamics, reduce, gen.

Exit codes are part of the interface: 0 stable/exists/ok, 1 unstable/absent,
2 usage or input errors, 3 cycle detected, 4 step limit reached.
"""

from __future__ import annotations

import argparse
import sys

from .errors import FormatError, PreconditionError
from .graph_matching import parse_graph
from .matching import Matching, parse_matching, serialize_matching
from .model import (
    MARRIAGE,
    ROOMMATE,
    Game,
    GenParams,
    has_no_unacceptability,
    parse_instance,
    random_game,
    serialize_instance,
)
from .reductions import mmm_to_marriage_ns, mmm_to_roommate_is
from .solvers import (
    brute_force,
    compute_cis_ir,
    compute_cns,
    compute_is_marriage,
    compute_ns_marriage_complete,
    exists_ns_is_roommate_complete,
    run_dynamics,
)
from .stability import (
    Concept,
    DEVIATION_CONCEPTS,
    DeviationWitness,
    find_deviation,
    find_pair_block,
    is_individually_rational,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CYCLE = 3
EXIT_STEP_LIMIT = 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _witness_line(witness: DeviationWitness) -> str:
    target = "alone" if witness.target is None else str(witness.target)
    return (
        f"DEVIATION mover={witness.mover} target={target} "
        f"concept={witness.concept.value.upper()}"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablepairs",
        description="Compute, verify, and stress-test individual-based stable "
        "matchings in marriage and roommate games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a stable matching")
    p.add_argument("--concept", required=True, choices=["is", "cis-ir", "cns", "ns-complete"])
    p.add_argument("instance")

    p = sub.add_parser("verify", help="check a matching against a stability concept")
    p.add_argument(
        "--concept",
        required=True,
        choices=[c.value for c in Concept],
    )
    p.add_argument("instance")
    p.add_argument("matching")

    p = sub.add_parser("exists", help="decide whether a stable matching exists")
    p.add_argument("--concept", required=True, choices=["ns", "is"])
    p.add_argument("--method", choices=["auto", "poly", "brute"], default="auto")
    p.add_argument("--cap", type=int, default=12, help="player cap for brute force")
    p.add_argument("instance")

    p = sub.add_parser("brute", help="brute-force search over all matchings")
    p.add_argument("--concept", required=True, choices=[c.value for c in Concept])
    p.add_argument("--count", action="store_true", help="print the number of stable matchings")
    p.add_argument("--cap", type=int, default=12)
    p.add_argument("instance")

    p = sub.add_parser("dynamics", help="run better-response dynamics with cycle detection")
    p.add_argument("--concept", required=True, choices=["ns", "is", "cns", "cis"])
    p.add_argument(
        "--start",
        default="singletons",
        help="'singletons' or a matching file path",
    )
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("instance")

    p = sub.add_parser("reduce", help="build a hardness-gadget game from a graph")
    p.add_argument("construction", choices=["ns-marriage", "is-roommate"])
    p.add_argument("graph")
    p.add_argument("k", type=int)

    p = sub.add_parser("gen", help="generate a random game instance")
    p.add_argument("kind", choices=[ROOMMATE, MARRIAGE])
    p.add_argument("--n", type=int, default=0, help="players (roommate)")
    p.add_argument("--men", type=int, default=0)
    p.add_argument("--women", type=int, default=0)
    p.add_argument("--tie-prob", type=float, default=0.0)
    p.add_argument("--accept-prob", type=float, default=1.0)
    p.add_argument("--mutual", action="store_true")
    p.add_argument("--complete", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_solve(args: argparse.Namespace) -> int:
    game = parse_instance(_read(args.instance))
    if args.concept == "is":
        matching = compute_is_marriage(game)
        header = "# solve concept=is"
    elif args.concept == "ns-complete":
        matching = compute_ns_marriage_complete(game)
        header = "# solve concept=ns-complete"
    elif args.concept == "cis-ir":
        report = compute_cis_ir(game)
        matching = report.matching
        header = f"# solve concept=cis-ir deviations={report.deviation_count}"
    else:
        report = compute_cns(game)
        matching = report.matching
        header = f"# solve concept=cns deviations={report.deviation_count}"
    print(header)
    sys.stdout.write(serialize_matching(matching))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    game = parse_instance(_read(args.instance))
    matching = parse_matching(_read(args.matching), game)
    concept = Concept(args.concept)
    if concept is Concept.IR:
        if is_individually_rational(game, matching):
            print("STABLE")
            return EXIT_OK
        violator = next(
            i
            for i in game.players()
            if game.prefs(i).rank_of(matching.partner_of(i)) > game.prefs(i).self_rank
        )
        print("UNSTABLE")
        print(f"UNACCEPTABLE player={violator} partner={matching.partner_of(violator)}")
        return EXIT_NEGATIVE
    if concept in DEVIATION_CONCEPTS:
        witness = find_deviation(game, matching, concept)
        if witness is None:
            print("STABLE")
            return EXIT_OK
        print("UNSTABLE")
        print(_witness_line(witness))
        return EXIT_NEGATIVE
    block = find_pair_block(game, matching, strict=concept is Concept.STRICT_CORE)
    if block is None:
        print("STABLE")
        return EXIT_OK
    print("UNSTABLE")
    print(f"BLOCK i={block.i} j={block.j}")
    return EXIT_NEGATIVE


def _poly_exists(game: Game, concept: Concept) -> tuple[bool, Matching | None] | str:
    """Polynomial existence decision, or an explanation why none applies."""
    if game.kind == MARRIAGE:
        if concept is Concept.IS:
            return True, compute_is_marriage(game)
        if has_no_unacceptability(game):
            return True, compute_ns_marriage_complete(game)
        return (
            "no polynomial method: ns existence for marriage games needs "
            "complete lists (try --method brute)"
        )
    if has_no_unacceptability(game):
        found = exists_ns_is_roommate_complete(game)
        return (found is not None), found
    return (
        "no polynomial method: roommate existence checks need complete "
        "lists (try --method brute)"
    )


def _cmd_exists(args: argparse.Namespace) -> int:
    game = parse_instance(_read(args.instance))
    concept = Concept(args.concept)
    method = args.method
    if method in ("auto", "poly"):
        outcome = _poly_exists(game, concept)
        if isinstance(outcome, str):
            if method == "poly":
                print(outcome, file=sys.stderr)
                return EXIT_USAGE
        else:
            exists, matching = outcome
            if exists:
                print("YES")
                assert matching is not None
                sys.stdout.write(serialize_matching(matching))
                return EXIT_OK
            print("NO")
            return EXIT_NEGATIVE
    found, _count = brute_force(game, concept, cap=args.cap, stop_after=1)
    if found is not None:
        print("YES")
        sys.stdout.write(serialize_matching(found))
        return EXIT_OK
    print("NO")
    return EXIT_NEGATIVE


def _cmd_brute(args: argparse.Namespace) -> int:
    game = parse_instance(_read(args.instance))
    concept = Concept(args.concept)
    if args.count:
        _found, count = brute_force(game, concept, cap=args.cap)
        print(count)
        return EXIT_OK
    found, _count = brute_force(game, concept, cap=args.cap, stop_after=1)
    if found is None:
        print("NONE")
        return EXIT_NEGATIVE
    sys.stdout.write(serialize_matching(found))
    return EXIT_OK


def _cmd_dynamics(args: argparse.Namespace) -> int:
    game = parse_instance(_read(args.instance))
    concept = Concept(args.concept)
    if args.start == "singletons":
        initial = Matching.singletons(game.n)
    else:
        initial = parse_matching(_read(args.start), game)
    trace = run_dynamics(game, concept, initial, args.max_steps)
    for step, (_matching, witness) in enumerate(trace.steps, 1):
        print(f"STEP {step} {_witness_line(witness)}")
    total = len(trace.steps)
    if trace.outcome == "stable":
        print(f"STABLE steps={total}")
        sys.stdout.write(serialize_matching(trace.final))
        return EXIT_OK
    if trace.outcome == "cycle":
        length = total - (trace.cycle_start or 0)
        print(f"CYCLE start={trace.cycle_start} length={length} steps={total}")
        return EXIT_CYCLE
    print(f"STEP-LIMIT steps={total}")
    return EXIT_STEP_LIMIT


def _cmd_reduce(args: argparse.Namespace) -> int:
    graph = parse_graph(_read(args.graph))
    if args.construction == "ns-marriage":
        artifact = mmm_to_marriage_ns(graph, args.k)
    else:
        artifact = mmm_to_roommate_is(graph, args.k)
    print(f"# reduction {args.construction} n={artifact.n} k={artifact.k} r={artifact.r}")
    for player in sorted(artifact.roles):
        role = artifact.roles[player]
        fields = [f"player={player}", f"kind={role.kind}"]
        if role.vertex is not None:
            fields.append(f"vertex={role.vertex}")
        if role.gadget is not None:
            fields.append(f"gadget={role.gadget}")
        if role.layer is not None:
            fields.append(f"layer={role.layer}")
        print("# role " + " ".join(fields))
    sys.stdout.write(serialize_instance(artifact.game))
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    params = GenParams(
        kind=args.kind,
        n=args.n,
        n_men=args.men,
        n_women=args.women,
        tie_probability=args.tie_prob,
        acceptability_probability=args.accept_prob,
        mutual=args.mutual,
        complete=args.complete,
        seed=args.seed,
    )
    game = random_game(params)
    print(
        f"# gen kind={params.kind} seed={params.seed} "
        f"tie={params.tie_probability} accept={params.acceptability_probability} "
        f"mutual={params.mutual} complete={params.complete}"
    )
    sys.stdout.write(serialize_instance(game))
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "exists": _cmd_exists,
    "brute": _cmd_brute,
    "dynamics": _cmd_dynamics,
    "reduce": _cmd_reduce,
    "gen": _cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (FormatError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
