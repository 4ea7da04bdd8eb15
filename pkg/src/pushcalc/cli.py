"""Command line interface.

One subcommand per invocation; output is deterministic for fixed flags
and seed.  Every error path prints a single line of the form
``error:<code>: message`` to stderr and exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .embedding import (
    block_matrix_to_json,
    embed,
    format_block_matrix,
    materialize,
    to_tsv,
)
from .errors import PushcalcError
from .monoid import compose, format_self_map, self_map_from_json, self_map_to_json
from .orbits import components_bruteforce, components_formula, target_from_json
from .pushing import (
    ManifoldModel,
    NotInImage,
    PuncturedSignature,
    format_braid,
    kernel_report,
    loop_coefficient,
    parse_braid,
    push_braid,
    push_word,
    push_word_closed,
    recover_braid,
)
from .ring import format_ring, ring_to_json
from .verification import SUITES, run_suite
from .words import parse_word


class _Parser(argparse.ArgumentParser):
    """Parser whose usage errors match the single-line error protocol."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(2, f"error:usage: {message}\n")


def _die(code: str, message: str) -> int:
    print(f"error:{code}: {message}", file=sys.stderr)
    return 1


def _print_json(obj: object) -> None:
    print(json.dumps(obj, indent=2))


def _load_json(path: str) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _CliIOError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliIOError(f"{path} is not valid JSON: {exc}") from exc


class _CliIOError(Exception):
    pass


def _signature(g: int, d: int, k: int) -> PuncturedSignature:
    return PuncturedSignature(ManifoldModel.default(g, d), k)


def cmd_push_word(args: argparse.Namespace) -> int:
    sig = _signature(args.g, args.d, args.k)
    w = parse_word(args.word)
    h = push_word(sig, w, args.slot)
    agrees = None
    if args.closed_form:
        agrees = push_word_closed(sig, w, args.slot) == h
    if args.json:
        obj: dict = {"map": self_map_to_json(h)}
        if args.matrix:
            obj["matrix"] = block_matrix_to_json(embed(h))
        if args.closed_form:
            obj["loop_coefficients"] = {
                f"f{i}": ring_to_json(loop_coefficient(w, i))
                for i in range(1, args.g + 1)
            }
            obj["closed_form_agrees"] = agrees
        _print_json(obj)
    else:
        print(format_self_map(h))
        if args.matrix:
            print(format_block_matrix(embed(h)))
        if args.closed_form:
            for i in range(1, args.g + 1):
                print(f"f{i} = {format_ring(loop_coefficient(w, i))}")
            print(f"closed-form agrees: {'yes' if agrees else 'no'}")
    return 0 if agrees in (None, True) else 1


def cmd_push_braid(args: argparse.Namespace) -> int:
    braid = parse_braid(args.braid, k=args.k)
    sig = _signature(args.g, args.d, braid.k)
    h = push_braid(sig, braid)
    if args.json:
        _print_json({"braid": format_braid(braid), "map": self_map_to_json(h)})
    else:
        print(format_self_map(h))
    return 0


def cmd_compose(args: argparse.Namespace) -> int:
    outer = self_map_from_json(_load_json(args.outer))
    inner = self_map_from_json(_load_json(args.inner))
    h = compose(outer, inner)
    if args.json:
        _print_json(self_map_to_json(h))
    else:
        print(format_self_map(h))
    return 0


def _map_from_args(args: argparse.Namespace) -> object:
    if args.map is not None:
        return self_map_from_json(_load_json(args.map))
    if args.word is None:
        raise _CliUsage("either --map FILE or a word with -g/-k/--slot is required")
    if args.g is None or args.k is None or args.slot is None:
        raise _CliUsage("word mode needs -g, -k, and --slot")
    sig = _signature(args.g, args.d, args.k)
    return push_word(sig, parse_word(args.word), args.slot)


class _CliUsage(Exception):
    pass


def cmd_embed(args: argparse.Namespace) -> int:
    h = _map_from_args(args)
    mat = embed(h)
    if args.truncate is not None:
        window = materialize(mat, args.truncate)
        if args.json:
            _print_json({
                "matrix": block_matrix_to_json(mat),
                "radius": args.truncate,
                "row_radius": window.row_radius,
                "tsv": to_tsv(window),
            })
        else:
            print(to_tsv(window), end="")
    elif args.json:
        _print_json(block_matrix_to_json(mat))
    else:
        print(format_block_matrix(mat))
    return 0


def cmd_recover(args: argparse.Namespace) -> int:
    h = self_map_from_json(_load_json(args.map))
    g = h.sig.g
    k = sum(1 for lab in h.sig.labels if lab.kind == "p")
    sig = PuncturedSignature(ManifoldModel.default(g, h.sig.d), k)
    got = recover_braid(sig, h)
    if isinstance(got, NotInImage):
        return _die("not-in-image", got.reason)
    if args.json:
        _print_json({"braid": format_braid(got)})
    else:
        print(format_braid(got))
    return 0


def cmd_kernel(args: argparse.Namespace) -> int:
    sig = _signature(args.g, args.d, args.k)
    report = kernel_report(sig, args.max_len, args.max_braids, seed=args.seed)
    if args.json:
        _print_json({
            "g": report.g,
            "k": report.k,
            "max_word_len": report.max_word_len,
            "exhaustive": report.exhaustive,
            "checked": report.total_checked,
            "nontrivial": [format_braid(b) for b in report.nontrivial_kernel],
        })
    else:
        print(f"mode: {'exhaustive' if report.exhaustive else 'sampled'}")
        print(f"checked: {report.total_checked}")
        if report.passed:
            print("kernel: trivial")
        else:
            print(f"kernel: nontrivial ({len(report.nontrivial_kernel)} found)")
            for b in report.nontrivial_kernel:
                print(f"  {format_braid(b)}")
    return 0 if report.passed else 1


def cmd_components(args: argparse.Namespace) -> int:
    target = target_from_json(_load_json(args.target))
    model = ManifoldModel.default(args.g, args.d)
    try:
        if args.assume_hypotheses:
            formula = components_formula(target, args.g, args.k)
        else:
            formula = components_formula(target, model, args.k)
        brute = None
        if args.brute_force:
            max_states = _max_states_from_env()
            brute = components_bruteforce(
                target, model, args.k,
                max_states=max_states, force=args.assume_hypotheses,
            )
    except PushcalcError as exc:
        hint = ""
        if exc.code == "hypothesis-violation":
            hint = " (pass --assume-hypotheses if they hold for your manifold)"
        elif exc.code == "too-large":
            hint = " (raise PUSHCALC_MAX_STATES to explore a larger state graph)"
        return _die(exc.code, f"{exc}{hint}")
    if args.json:
        obj: dict = {"formula": formula}
        if brute is not None:
            obj["brute_force"] = brute
            obj["agree"] = formula == brute
        _print_json(obj)
        return 0 if brute in (None, formula) else 1
    if brute is None:
        print(f"formula: {formula}")
        return 0
    verdict = "agree" if formula == brute else "DISAGREE"
    print(f"formula: {formula}, brute-force: {brute}, {verdict}")
    return 0 if formula == brute else 1


def _max_states_from_env() -> int:
    raw = os.environ.get("PUSHCALC_MAX_STATES")
    if raw is None:
        return 1_000_000
    try:
        return int(raw)
    except ValueError:
        raise _CliIOError(f"PUSHCALC_MAX_STATES must be an integer, got {raw!r}") from None


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(
        args.suite, seed=args.seed, cases=args.cases,
        inject_fault=args.inject_fault,
    )
    _print_json(report.to_json())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pushcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def model_flags(p: argparse.ArgumentParser, *, need_k: bool = True) -> None:
        p.add_argument("-g", type=int, required=True, help="number of handles")
        p.add_argument("-d", type=int, default=3, help="ambient dimension (default 3)")
        if need_k:
            p.add_argument("-k", type=int, required=True, help="number of punctures")

    p = sub.add_parser("push-word", help="push a puncture around a loop word")
    model_flags(p)
    p.add_argument("--slot", type=int, required=True, help="which puncture moves")
    p.add_argument("word", help="loop word, e.g. 'a1 A2'")
    p.add_argument("--closed-form", action="store_true",
                   help="also evaluate the closed form and report agreement")
    p.add_argument("--matrix", action="store_true", help="also print the matrix form")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_push_word)

    p = sub.add_parser("push-braid", help="push punctures along a braid")
    p.add_argument("-g", type=int, required=True)
    p.add_argument("-d", type=int, default=3)
    p.add_argument("-k", type=int, default=None,
                   help="expected puncture count (checked against the braid)")
    p.add_argument("braid", help="braid text, e.g. '[a1 | e ; (1 2)]'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_push_braid)

    p = sub.add_parser("compose", help="compose two self-map JSON files")
    p.add_argument("outer", help="JSON file of the map applied second")
    p.add_argument("inner", help="JSON file of the map applied first")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("embed", help="matrix form of a self-map")
    p.add_argument("--map", default=None, help="self-map JSON file")
    p.add_argument("-g", type=int, default=None)
    p.add_argument("-d", type=int, default=3)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--slot", type=int, default=None)
    p.add_argument("word", nargs="?", default=None)
    p.add_argument("--truncate", type=int, default=None, metavar="RADIUS",
                   help="print the finite window as TSV")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("recover", help="recover the braid behind a self-map")
    p.add_argument("--map", required=True, help="self-map JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("kernel", help="search for braids acting trivially")
    model_flags(p)
    p.add_argument("--max-len", type=int, default=4, help="slot word length bound")
    p.add_argument("--max-braids", type=int, default=20000,
                   help="exhaustive below this count, sampled above")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("components", help="count components of a mapping space")
    p.add_argument("--target", required=True, help="target model JSON file")
    p.add_argument("-g", type=int, required=True)
    p.add_argument("-d", type=int, default=3)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--brute-force", action="store_true",
                   help="also count by exploring the state graph")
    p.add_argument("--assume-hypotheses", action="store_true",
                   help="assert the counting hypotheses hold for your manifold")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--inject-fault", action="store_true",
                   help="add a deliberately false property (negative control)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliUsage as exc:
        print(f"error:usage: {exc}", file=sys.stderr)
        return 2
    except _CliIOError as exc:
        return _die("io", str(exc))
    except PushcalcError as exc:
        return _die(exc.code, str(exc))
    except ValueError as exc:
        return _die("invalid", str(exc))


if __name__ == "__main__":
    sys.exit(main())
