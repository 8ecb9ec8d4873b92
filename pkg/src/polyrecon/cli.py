"""Command-line front end; every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import json
import sys

from .deck_mod import deck_mod_report
from .errors import NotApplicableError, PolyReconError
from .graph import read_graph
from .oracle import deck_collision_search, verify_sweep
from .poly import Deck, Poly, charpoly, deck
from .reconstruct import (
    ReconstructionOutcome,
    reconstruct_c4free_lowrank,
    reconstruct_controllable,
    reconstruct_general,
    full_truncation,
)
from .symmetric import complement_charpoly_mod4
from .walks import rank_F2, rank_Q, walk_matrix

OK, ERROR, VERDICT, SWEEP_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from exc


def _read_deck(path: str) -> Deck:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise UsageError("deck file must hold a JSON object")
    return Deck.from_json(data)


def _outcome_status(outcome: ReconstructionOutcome) -> int:
    return OK if outcome.ok else VERDICT


def cmd_charpoly(args):
    phi = charpoly(read_graph(args.graph))
    if args.mod:
        phi = phi.reduce(args.mod)
    return {"phi": phi.to_json()}, OK


def cmd_deck(args):
    g = read_graph(args.graph)
    d = deck(g, generalized=args.generalized, truncate_co=args.truncate_co,
             truncate=args.truncate, modulus=args.mod)
    return d.to_json(), OK


def cmd_reconstruct(args):
    d = _read_deck(args.deck)
    if args.controllable:
        outcome = reconstruct_controllable(d)
    else:
        s = args.s if args.s is not None else min(d.s, full_truncation(d.n))
        t = args.t if args.t is not None else d.t
        outcome = reconstruct_general(d, s=s, t=t)
    return outcome.to_json(), _outcome_status(outcome)


def cmd_reconstruct_c4free(args):
    outcome = reconstruct_c4free_lowrank(_read_deck(args.deck))
    return outcome.to_json(), _outcome_status(outcome)


def cmd_complement_mod4(args):
    data = _read_json(args.poly)
    if isinstance(data, dict):
        data = data.get("phi", data.get("poly"))
    if not isinstance(data, list):
        raise UsageError("polynomial file must hold a coefficient array")
    coeffs = tuple(int(c) for c in data)
    if args.n is not None and len(coeffs) != args.n + 1:
        raise UsageError(f"expected {args.n + 1} coefficients for n = {args.n}, got {len(coeffs)}")
    out = complement_charpoly_mod4(Poly(coeffs).reduce(4))
    return {"phi_complement_mod4": out.to_json()}, OK


def cmd_deck_mod(args):
    report = deck_mod_report(_read_deck(args.deck))
    return report.to_json(), OK if report.theorem4 is not None else VERDICT


def cmd_walk_rank(args):
    w = walk_matrix(read_graph(args.graph))
    out = {"rank_q": rank_Q(w), "rank_f2": rank_F2(w)}
    if args.mod2:
        out = {"rank_f2": out["rank_f2"]}
    return out, OK


def cmd_verify(args):
    checks = "all" if args.checks == "all" else [c.strip() for c in args.checks.split(",") if c.strip()]
    report = verify_sweep(args.n_max, checks, jobs=args.jobs, n_min=args.n_min)
    return report.to_json(), OK if report.passed else SWEEP_FAILED


def cmd_collisions(args):
    report = deck_collision_search(args.n)
    return report.to_json(), OK if not report.counterexamples else SWEEP_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyrecon", description=__doc__)
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a graph6 graph")
    p.add_argument("graph", help="graph6 string or file")
    p.add_argument("--mod", type=int)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("deck", help="polynomial deck of a graph")
    p.add_argument("graph")
    p.add_argument("--generalized", action="store_true", help="include complement cards")
    p.add_argument("--truncate-co", type=int, metavar="S", help="keep the top S co-card coefficients")
    p.add_argument("--truncate", type=int, metavar="T", help="keep the top T card coefficients")
    p.add_argument("--mod", type=int)
    p.add_argument("--out", default="-", help="output file ('-' for stdout)")
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("reconstruct", help="(phi, phibar) from a generalized deck")
    p.add_argument("--deck", required=True)
    p.add_argument("--s", type=int, help="co-card coefficients to use")
    p.add_argument("--t", type=int, help="card coefficients to use")
    p.add_argument("--controllable", action="store_true",
                   help="truncate both families to ceil((2n+4)/3)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("reconstruct-c4free", help="(phi, phibar) from a plain deck of a C4-free low-rank graph")
    p.add_argument("--deck", required=True)
    p.set_defaults(func=cmd_reconstruct_c4free)

    p = sub.add_parser("complement-mod4", help="phi of the complement mod 4 from phi mod 4")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_complement_mod4)

    p = sub.add_parser("deck-mod", help="mod 2 / mod 4 data recoverable from a plain deck")
    p.add_argument("--deck", required=True)
    p.set_defaults(func=cmd_deck_mod)

    p = sub.add_parser("walk-rank", help="rank of the walk matrix")
    p.add_argument("graph")
    p.add_argument("--mod2", action="store_true", help="report only the rank over F2")
    p.set_defaults(func=cmd_walk_rank)

    p = sub.add_parser("verify", help="run invariant checks over all small graphs")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--checks", default="all", help="comma-separated check names or 'all'")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("collisions", help="search for same-deck graphs with different phi")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_collisions)
    return parser


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=False)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pretty = "--pretty" in argv
    argv = [a for a in argv if a != "--pretty"]
    args = None
    try:
        args = build_parser().parse_args(argv)
        result, status = args.func(args)
    except UsageError as exc:
        result, status = {"error": "usage", "message": str(exc)}, ERROR
    except NotApplicableError as exc:
        result, status = {"status": "not_applicable", "reason": str(exc)}, VERDICT
    except (PolyReconError, ValueError, KeyError, OSError) as exc:
        result, status = {"error": type(exc).__name__, "message": str(exc)}, ERROR
    text = _dump(result, pretty) + "\n"
    out = getattr(args, "out", "-") if status == OK else "-"
    if out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
