"""Bounded-length checks of constructed expressions against direct semantics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from .counting import DEFAULT_COMPOSITION_CAP, CountSpec, Unsupported, build_count, build_modcount, classify_word
from .expr import Alphabet, Expr, star_height
from .lang import DEFAULT_LEN_CAP, CapExceededError, count_occurrences, derivative, nullable
from .rees import (
    DEFAULT_TUPLE_BUDGET,
    ZERO,
    Morphism,
    ReesSemigroup,
    extend_morphism,
    format_element,
    preimage_element_expr,
    preimage_zero_expr,
)

__all__ = ["Check", "sweep", "supported_words", "verify_count", "verify_rees", "format_table"]

MAX_SHOWN = 3


@dataclass
class Check:
    construction: str
    words: int
    mismatches: int
    height: int | None
    bound: int | None
    counterexamples: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        height_ok = self.height is None or self.bound is None or self.height <= self.bound
        return self.mismatches == 0 and height_ok


def sweep(
    e: Expr,
    alphabet: Alphabet,
    max_len: int,
    expected: Callable[[str], bool],
    *,
    nonempty: bool = False,
) -> tuple[int, list[str]]:
    """Compare membership in ``e`` with ``expected`` on every word up to max_len.

    Returns the number of words checked and the mismatching words in
    length-then-letter order.
    """
    cache: dict = {}
    checked = 0
    bad: list[str] = []
    level = [("", e)]
    for n in range(max_len + 1):
        for w, state in level:
            if nonempty and not w:
                continue
            checked += 1
            if nullable(state) != expected(w):
                bad.append(w)
        if n < max_len:
            level = [(w + x, derivative(state, x, cache)) for w, state in level for x in alphabet]
    return checked, bad


def _check(name: str, e: Expr, bound: int, alphabet: Alphabet, max_len: int, expected, **kw) -> Check:
    words, bad = sweep(e, alphabet, max_len, expected, **kw)
    return Check(name, words, len(bad), star_height(e), bound, tuple(bad[:MAX_SHOWN]))


def supported_words(alphabet: Alphabet, max_length: int = 3) -> list[str]:
    words = []
    for n in range(1, max_length + 1):
        for letters in itertools.product(alphabet.letters, repeat=n):
            w = "".join(letters)
            if not isinstance(classify_word(w, alphabet), Unsupported):
                words.append(w)
    return words


def verify_count(
    alphabet: Alphabet,
    words: Iterable[str],
    max_k: int,
    modulus: int | None,
    max_len: int,
    *,
    cap: int = DEFAULT_COMPOSITION_CAP,
    len_cap: int = DEFAULT_LEN_CAP,
) -> list[Check]:
    """Count(w, k) for k <= max_k, and with a modulus every ModCount class plus
    a partition check of those classes."""
    if max_len > len_cap:
        raise CapExceededError(f"max_len {max_len} exceeds the enumeration cap {len_cap}")
    rows = []
    for w in words:
        for k in range(max_k + 1):
            e = build_count(CountSpec(w, k, alphabet), cap=cap)
            rows.append(_check(f"Count({w},{k})", e, 0, alphabet, max_len,
                               lambda v, w=w, k=k: count_occurrences(v, w) == k))
        if modulus is None:
            continue
        classes = []
        for k in range(modulus):
            e = build_modcount(CountSpec(w, k, alphabet, modulus), cap=cap)
            classes.append(e)
            rows.append(_check(f"ModCount({w},{k},{modulus})", e, 1, alphabet, max_len,
                               lambda v, w=w, k=k: count_occurrences(v, w) % modulus == k))
        rows.append(_partition_check(f"partition ModCount({w},*,{modulus})", classes, alphabet, max_len))
    return rows


def _partition_check(name: str, classes: list[Expr], alphabet: Alphabet, max_len: int) -> Check:
    """Every word must lie in exactly one class."""
    cache: dict = {}
    checked = 0
    bad = []
    level = [("", list(classes))]
    for n in range(max_len + 1):
        for w, states in level:
            checked += 1
            if sum(nullable(s) for s in states) != 1:
                bad.append(w)
        if n < max_len:
            level = [(w + x, [derivative(s, x, cache) for s in states]) for w, states in level for x in alphabet]
    return Check(name, checked, len(bad), None, None, tuple(bad[:MAX_SHOWN]))


def verify_rees(
    S: ReesSemigroup,
    phi: Morphism,
    max_len: int,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    cap: int = DEFAULT_COMPOSITION_CAP,
    len_cap: int = DEFAULT_LEN_CAP,
) -> list[Check]:
    """Preimage expressions of every element against ``extend_morphism``."""
    if max_len > len_cap:
        raise CapExceededError(f"max_len {max_len} exceeds the enumeration cap {len_cap}")
    images: dict[str, object] = {}

    def image(w: str):
        if w not in images:
            images[w] = extend_morphism(S, phi, w)
        return images[w]

    rows = []
    for s in S.elements():
        if s is ZERO:
            e, bound = preimage_zero_expr(S, phi), 0
        else:
            e, bound = preimage_element_expr(S, phi, s, budget=budget, cap=cap), 1
        rows.append(_check(f"preimage({format_element(s)})", e, bound, phi.alphabet, max_len,
                           lambda w, s=s: bool(w) and image(w) == s, nonempty=True))
    return rows


def format_table(rows: list[Check]) -> str:
    header = ("construction", "words", "mismatches", "height", "bound", "status")
    body = [
        (
            r.construction,
            str(r.words),
            str(r.mismatches),
            "-" if r.height is None else str(r.height),
            "-" if r.bound is None else f"<={r.bound}",
            "ok" if r.ok else "FAIL",
        )
        for r in rows
    ]
    widths = [max(len(row[i]) for row in (header, *body)) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in (header, *body)]
    for r in rows:
        if not r.ok and r.counterexamples:
            shown = ", ".join(w or "ε" for w in r.counterexamples)
            lines.append(f"counterexample for {r.construction}: {shown}")
        elif not r.ok:
            lines.append(f"{r.construction}: height {r.height} exceeds bound {r.bound}")
    return "\n".join(lines)
