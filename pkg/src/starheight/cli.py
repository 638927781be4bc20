"""Command-line front end: build, evaluate and verify expressions."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .counting import DEFAULT_COMPOSITION_CAP, Unsupported, classify_word, count_language
from .expr import Alphabet, Expr, parse, render, render_tree, star_height
from .lang import DEFAULT_LEN_CAP, enumerate_words, equiv_bounded, member
from .rees import (
    DEFAULT_TUPLE_BUDGET,
    ZERO,
    extend_morphism,
    format_element,
    load_rees_spec,
    parse_element,
    preimage_element_expr,
    preimage_zero_expr,
    recognized_language_expr,
)
from .verify import format_table, supported_words, verify_count, verify_rees

EMPTY_WORD = "ε"


class UsageError(Exception):
    pass


def _alphabet(text: str) -> Alphabet:
    try:
        return Alphabet.of(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _word(text: str) -> str:
    return "" if text == EMPTY_WORD else text


def _show_word(w: str) -> str:
    return w or EMPTY_WORD


def _check_word(w: str, alphabet: Alphabet) -> None:
    stray = sorted(set(w) - set(alphabet))
    if stray:
        raise UsageError(f"letters {''.join(stray)!r} of word {w!r} are not in alphabet {str(alphabet)!r}")


def _emit_expr(e: Expr, args) -> None:
    print(render_tree(e) if args.tree else render(e))
    print(f"height: {star_height(e)}")


def _cmd_height(args) -> int:
    print(f"height: {star_height(parse(args.expr, args.alphabet))}")
    return 0


def _cmd_member(args) -> int:
    w = _word(args.word)
    _check_word(w, args.alphabet)
    print("true" if member(parse(args.expr, args.alphabet), w) else "false")
    return 0


def _cmd_enum(args) -> int:
    for w in enumerate_words(parse(args.expr, args.alphabet), args.alphabet, args.max_len, cap=args.len_cap):
        print(_show_word(w))
    return 0


def _cmd_equiv(args) -> int:
    e1 = parse(args.expr1, args.alphabet)
    e2 = parse(args.expr2, args.alphabet)
    report = equiv_bounded(e1, e2, args.alphabet, args.max_len, cap=args.len_cap)
    if report.equivalent:
        print(f"equivalent up to length {report.max_len_checked}")
    else:
        print(f"not equivalent: counterexample {_show_word(report.counterexample)}")
    return 0


def _cmd_count_lang(args) -> int:
    e = count_language(args.word, args.k, args.alphabet, args.mod, cap=args.composition_cap)
    _emit_expr(e, args)
    return 0


def _cmd_rees_eval(args) -> int:
    S, phi = load_rees_spec(args.spec)
    w = _word(args.word)
    _check_word(w, phi.alphabet)
    if not w:
        raise UsageError("morphisms are defined on non-empty words only")
    print(format_element(extend_morphism(S, phi, w)))
    return 0


def _cmd_rees_preimage(args) -> int:
    S, phi = load_rees_spec(args.spec)
    s = parse_element(args.element, S)
    if s is ZERO:
        e = preimage_zero_expr(S, phi)
    else:
        e = preimage_element_expr(S, phi, s, budget=args.tuple_budget, cap=args.composition_cap)
    _emit_expr(e, args)
    return 0


def _cmd_rees_recognized(args) -> int:
    S, phi = load_rees_spec(args.spec)
    X = [parse_element(part, S) for part in args.elements.split(";") if part.strip()]
    e = recognized_language_expr(S, phi, X, budget=args.tuple_budget, cap=args.composition_cap)
    _emit_expr(e, args)
    return 0


def _report(rows) -> int:
    print(format_table(rows))
    failed = sum(not r.ok for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return 1 if failed else 0


def _cmd_verify_count(args) -> int:
    alphabet = args.alphabet
    if args.word is not None:
        _check_word(args.word, alphabet)
        case = classify_word(args.word, alphabet)
        if isinstance(case, Unsupported):
            raise UsageError(case.reason)
        words = [args.word]
    else:
        words = supported_words(alphabet)
    if args.mod is not None and args.mod < 2:
        raise UsageError("--mod must be at least 2")
    rows = verify_count(alphabet, words, args.max_k, args.mod, args.max_len,
                        cap=args.composition_cap, len_cap=args.len_cap)
    return _report(rows)


def _cmd_verify_rees(args) -> int:
    S, phi = load_rees_spec(args.spec)
    rows = verify_rees(S, phi, args.max_len, budget=args.tuple_budget,
                       cap=args.composition_cap, len_cap=args.len_cap)
    return _report(rows)


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--len-cap", type=int, default=DEFAULT_LEN_CAP,
                      help="largest word length enumeration may reach (default %(default)s)")
    caps.add_argument("--tuple-budget", type=int, default=DEFAULT_TUPLE_BUDGET,
                      help="residue tuples allowed per contribution expression (default %(default)s)")
    caps.add_argument("--composition-cap", type=int, default=DEFAULT_COMPOSITION_CAP,
                      help="largest occurrence count expanded into compositions (default %(default)s)")
    caps.add_argument("--tree", action="store_true", help="print expressions as an indented tree")

    parser = argparse.ArgumentParser(
        prog="starheight",
        description="Bounded star-height expressions for subword counting and Rees zero-matrix semigroup languages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("height", parents=[caps], help="star-height of an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--alphabet", required=True, type=_alphabet)
    p.set_defaults(func=_cmd_height)

    p = sub.add_parser("member", parents=[caps], help="test a word for membership")
    p.add_argument("--expr", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--alphabet", required=True, type=_alphabet)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("enum", parents=[caps], help="list members up to a length")
    p.add_argument("--expr", required=True)
    p.add_argument("--alphabet", required=True, type=_alphabet)
    p.add_argument("--max-len", required=True, type=int)
    p.set_defaults(func=_cmd_enum)

    p = sub.add_parser("equiv", parents=[caps], help="bounded equivalence of two expressions")
    p.add_argument("--expr1", required=True)
    p.add_argument("--expr2", required=True)
    p.add_argument("--alphabet", required=True, type=_alphabet)
    p.add_argument("--max-len", required=True, type=int)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("count-lang", parents=[caps], help="expression for Count(w,k) or ModCount(w,k,n)")
    p.add_argument("--word", required=True)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--mod", type=int)
    p.add_argument("--alphabet", required=True, type=_alphabet)
    p.set_defaults(func=_cmd_count_lang)

    rees = sub.add_parser("rees", help="Rees zero-matrix semigroup languages")
    rsub = rees.add_subparsers(dest="rees_command", required=True)
    p = rsub.add_parser("eval", parents=[caps], help="image of a word under the morphism")
    p.add_argument("--spec", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_rees_eval)
    p = rsub.add_parser("preimage", parents=[caps], help="expression for the preimage of one element")
    p.add_argument("--spec", required=True)
    p.add_argument("--element", required=True, help='"zero" or "i,r1,...,rm,lambda"')
    p.set_defaults(func=_cmd_rees_preimage)
    p = rsub.add_parser("recognized", parents=[caps], help="expression for the preimage of a set of elements")
    p.add_argument("--spec", required=True)
    p.add_argument("--elements", required=True, help="semicolon-separated elements")
    p.set_defaults(func=_cmd_rees_recognized)

    verify = sub.add_parser("verify", help="check constructions against brute force")
    vsub = verify.add_subparsers(dest="verify_command", required=True)
    p = vsub.add_parser("count", parents=[caps], help="Count/ModCount constructions")
    p.add_argument("--word")
    p.add_argument("--max-k", required=True, type=int)
    p.add_argument("--mod", type=int)
    p.add_argument("--alphabet", required=True, type=_alphabet)
    p.add_argument("--max-len", required=True, type=int)
    p.set_defaults(func=_cmd_verify_count)
    p = vsub.add_parser("rees", parents=[caps], help="preimage constructions")
    p.add_argument("--spec", required=True)
    p.add_argument("--max-len", required=True, type=int)
    p.set_defaults(func=_cmd_verify_rees)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError, OSError) as exc:
        print(f"starheight: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
