"""Language semantics of generalised expressions via Brzozowski derivatives.

Derivatives commute with complement, so membership for the full operation
set reduces to repeated differentiation followed by a nullability test.
Bounded enumeration and equivalence walk the prefix tree of words.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .expr import (
    EMPTY,
    EPSILON,
    Alphabet,
    Complement,
    Concat,
    EmptySet,
    Epsilon,
    Expr,
    Lit,
    Star,
    Union,
    smart_complement,
    smart_concat,
    smart_union,
)

__all__ = [
    "DEFAULT_LEN_CAP",
    "CapExceededError",
    "EquivReport",
    "nullable",
    "derivative",
    "member",
    "enumerate_words",
    "equiv_bounded",
    "all_words",
    "count_occurrences",
    "maximal_border",
]

DEFAULT_LEN_CAP = 12


class CapExceededError(ValueError):
    pass


def nullable(e: Expr) -> bool:
    """True iff ε ∈ L(e)."""
    cached = e.nullable_
    if cached is not None:
        return cached
    if isinstance(e, (EmptySet, Lit)):
        result = False
    elif isinstance(e, (Epsilon, Star)):
        result = True
    elif isinstance(e, Complement):
        result = not nullable(e.inner)
    elif isinstance(e, Union):
        result = nullable(e.left) or nullable(e.right)
    elif isinstance(e, Concat):
        result = nullable(e.left) and nullable(e.right)
    else:
        raise TypeError(f"not an expression: {e!r}")
    e.nullable_ = result
    return result


def derivative(e: Expr, x: str, cache: dict | None = None) -> Expr:
    """Left quotient of L(e) by the letter ``x``.

    ``cache`` maps ``(node, letter)`` to a derivative; pass the same dict to
    share work between calls on related expressions.
    """
    if cache is None:
        cache = {}
    return _derive(e, x, cache)


def _derive(e: Expr, x: str, cache: dict) -> Expr:
    key = (e, x)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if isinstance(e, (EmptySet, Epsilon)):
        result = EMPTY
    elif isinstance(e, Lit):
        result = EPSILON if e.letter == x else EMPTY
    elif isinstance(e, Union):
        result = smart_union(_derive(e.left, x, cache), _derive(e.right, x, cache))
    elif isinstance(e, Concat):
        result = smart_concat(_derive(e.left, x, cache), e.right)
        if nullable(e.left):
            result = smart_union(result, _derive(e.right, x, cache))
    elif isinstance(e, Star):
        result = smart_concat(_derive(e.inner, x, cache), e)
    elif isinstance(e, Complement):
        result = smart_complement(_derive(e.inner, x, cache))
    else:
        raise TypeError(f"not an expression: {e!r}")
    cache[key] = result
    return result


def member(e: Expr, word: str, cache: dict | None = None) -> bool:
    if cache is None:
        cache = {}
    for x in word:
        e = _derive(e, x, cache)
    return nullable(e)


def _check_cap(max_len: int, cap: int) -> None:
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if max_len > cap:
        raise CapExceededError(f"max_len {max_len} exceeds the enumeration cap {cap}")


def all_words(alphabet: Alphabet, max_len: int) -> Iterator[str]:
    """Every word of length ≤ max_len, length-then-lexicographic."""
    for n in range(max_len + 1):
        for letters in itertools.product(alphabet.letters, repeat=n):
            yield "".join(letters)


def enumerate_words(e: Expr, alphabet: Alphabet, max_len: int, *, cap: int = DEFAULT_LEN_CAP) -> list[str]:
    """Members of L(e) of length ≤ max_len, sorted by length then letter order."""
    _check_cap(max_len, cap)
    cache: dict = {}
    found = []
    level = [("", e)]
    for n in range(max_len + 1):
        found.extend(w for w, state in level if nullable(state))
        if n == max_len:
            break
        level = [
            (w + x, nxt)
            for w, state in level
            for x in alphabet
            if (nxt := _derive(state, x, cache)) is not EMPTY
        ]
    return found


@dataclass(frozen=True)
class EquivReport:
    equivalent: bool
    counterexample: str | None
    max_len_checked: int

    def __post_init__(self) -> None:
        if self.equivalent == (self.counterexample is not None):
            raise ValueError("counterexample must be present exactly when not equivalent")

    def __bool__(self) -> bool:
        return self.equivalent


def equiv_bounded(e1: Expr, e2: Expr, alphabet: Alphabet, max_len: int, *, cap: int = DEFAULT_LEN_CAP) -> EquivReport:
    """Compare memberships on all words of length ≤ max_len.

    Breadth-first in letter order, so the first disagreement found is the
    shortest, lexicographically least counterexample.
    """
    _check_cap(max_len, cap)
    cache: dict = {}
    level = [("", e1, e2)]
    for n in range(max_len + 1):
        for w, s1, s2 in level:
            if nullable(s1) != nullable(s2):
                return EquivReport(False, w, max_len)
        if n == max_len:
            break
        level = [
            (w + x, _derive(s1, x, cache), _derive(s2, x, cache))
            for w, s1, s2 in level
            if s1 is not s2
            for x in alphabet
        ]
    return EquivReport(True, None, max_len)


def count_occurrences(v: str, w: str) -> int:
    """|v|_w: start positions of w in v, overlaps included."""
    if not w:
        raise ValueError("pattern must be non-empty")
    count = 0
    start = v.find(w)
    while start != -1:
        count += 1
        start = v.find(w, start + 1)
    return count


def maximal_border(w: str) -> str:
    """Longest proper prefix of ``w`` that is also a suffix (KMP failure value)."""
    if not w:
        raise ValueError("word must be non-empty")
    fail = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return w[: fail[-1]]
