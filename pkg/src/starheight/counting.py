"""Star-height-bounded expressions for subword counting languages.

``Count(w, k)`` holds the words with exactly ``k`` (possibly overlapping)
occurrences of ``w``; ``ModCount(w, k, n)`` those whose count is ``k`` mod
``n``. Four shapes of ``w`` are handled: any word over a unary alphabet, a
power of a letter, a word with empty maximal border, and ``aba``. The
expressions built for ``Count`` are star-free; those for ``ModCount`` use a
single star.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union as TypingUnion

from .expr import (
    EPSILON,
    UNIVERSE,
    Alphabet,
    Expr,
    letter_class,
    power,
    smart_complement,
    smart_concat,
    smart_star,
    smart_union,
    union_all,
    concat_all,
    word_expr,
    Lit,
)
from .lang import maximal_border

__all__ = [
    "DEFAULT_COMPOSITION_CAP",
    "UnsupportedWordError",
    "CompositionCapError",
    "UnaryAlphabet",
    "PowerOfLetter",
    "EmptyBorder",
    "AbaPattern",
    "Unsupported",
    "CaseTag",
    "CountSpec",
    "classify_word",
    "compositions",
    "build_count_zero",
    "build_count",
    "build_wedge",
    "build_countps",
    "build_multiple",
    "build_modcount",
    "count_language",
]

DEFAULT_COMPOSITION_CAP = 6


class UnsupportedWordError(ValueError):
    pass


class CompositionCapError(ValueError):
    pass


@dataclass(frozen=True)
class UnaryAlphabet:
    base: str
    exponent: int


@dataclass(frozen=True)
class PowerOfLetter:
    base: str
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise ValueError("exponent must be at least 1")


@dataclass(frozen=True)
class EmptyBorder:
    word: str


@dataclass(frozen=True)
class AbaPattern:
    a: str
    b: str

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("aba pattern needs two distinct letters")

    @property
    def word(self) -> str:
        return self.a + self.b + self.a


@dataclass(frozen=True)
class Unsupported:
    reason: str


CaseTag = TypingUnion[UnaryAlphabet, PowerOfLetter, EmptyBorder, AbaPattern, Unsupported]


def _check_word(w: str, alphabet: Alphabet) -> None:
    if not w:
        raise ValueError("counted word must be non-empty")
    stray = sorted(set(w) - set(alphabet))
    if stray:
        raise ValueError(f"letters {''.join(stray)!r} of {w!r} are not in alphabet {str(alphabet)!r}")


def classify_word(w: str, alphabet: Alphabet) -> CaseTag:
    """Pick the construction for ``w``; earlier cases win when several apply."""
    _check_word(w, alphabet)
    if len(alphabet) == 1:
        return UnaryAlphabet(w[0], len(w))
    if len(set(w)) == 1:
        return PowerOfLetter(w[0], len(w))
    border = maximal_border(w)
    if not border:
        return EmptyBorder(w)
    if len(w) == 3 and w[0] == w[2] != w[1]:
        return AbaPattern(w[0], w[1])
    return Unsupported(f"{w!r} has non-empty maximal border {border!r} and is not of the form aba")


@dataclass(frozen=True)
class CountSpec:
    w: str
    k: int
    alphabet: Alphabet
    modulus: int | None = None

    def __post_init__(self) -> None:
        _check_word(self.w, self.alphabet)
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.modulus is not None:
            if self.modulus < 2:
                raise ValueError("modulus must be at least 2")
            if self.k >= self.modulus:
                raise ValueError(f"k = {self.k} must be below the modulus {self.modulus}")


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``, lexicographic."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def build_count_zero(w: str, alphabet: Alphabet) -> Expr:
    """(∅^c w ∅^c)^c: words with no factor ``w``. Valid for every ``w``."""
    _check_word(w, alphabet)
    return smart_complement(concat_all([UNIVERSE, word_expr(w), UNIVERSE]))


def _cap(k: int, cap: int) -> None:
    if k > cap:
        raise CompositionCapError(f"occurrence count {k} exceeds the composition cap {cap}")


def _others(alphabet: Alphabet, a: str) -> Expr:
    return letter_class(x for x in alphabet if x != a)


def build_wedge(case: CaseTag, alphabet: Alphabet) -> Expr:
    """Separator words that keep neighbouring occurrence runs from merging."""
    if isinstance(case, PowerOfLetter):
        buffers = _others(alphabet, case.base)
        zero = build_count_zero(case.base * case.exponent, alphabet)
        return smart_union(buffers, concat_all([buffers, zero, buffers]))
    if isinstance(case, AbaPattern):
        a, b = Lit(case.a), Lit(case.b)
        forbidden = union_all([
            b,
            concat_all([b, a, UNIVERSE]),
            concat_all([UNIVERSE, a, b]),
            concat_all([UNIVERSE, word_expr(case.word), UNIVERSE]),
        ])
        return smart_complement(forbidden)
    raise TypeError(f"wedges exist only for letter powers and aba, not {case!r}")


def build_countps(case: CaseTag, k: int, alphabet: Alphabet, *, cap: int = DEFAULT_COMPOSITION_CAP) -> Expr:
    """Words with exactly ``k`` occurrences that also begin and end with the pattern.

    Each run of occurrences is a maximal block ``a^{k_i}`` (letter powers)
    or ``a(ba)^{k_i}`` (aba), blocks separated by wedges; block counts range
    over compositions of ``k``.
    """
    if not isinstance(case, (PowerOfLetter, AbaPattern)):
        raise TypeError(f"CountPS is defined only for letter powers and aba, not {case!r}")
    if k < 1:
        raise ValueError("CountPS needs k >= 1")
    _cap(k, cap)
    wedge = build_wedge(case, alphabet)
    if isinstance(case, PowerOfLetter):
        a, r = Lit(case.base), case.exponent

        def block(m: int) -> Expr:
            # m occurrences of a^r need a run of m + r - 1 letters
            return power(a, m + r - 1)
    else:
        head, tail = Lit(case.a), word_expr(case.b + case.a)

        def block(m: int) -> Expr:
            return smart_concat(head, power(tail, m))

    terms = []
    for j in range(1, k + 1):
        for parts in compositions(k, j):
            pieces = [block(parts[0])]
            for m in parts[1:]:
                pieces += [wedge, block(m)]
            terms.append(concat_all(pieces))
    return union_all(terms)


def build_multiple(
    case: CaseTag,
    n: int,
    alphabet: Alphabet,
    *,
    cap: int = DEFAULT_COMPOSITION_CAP,
    first_index: int = 0,
) -> Expr:
    """Blocks that add exactly ``n`` occurrences after a word ending in the pattern.

    For ``a^r`` these are the words ``w`` with ``|a^{r-1} w| = n`` occurrences
    ending in ``a^r``; for ``aba`` the words with ``|a w| = n`` ending in
    ``aba``. ``first_index`` sets where the union over leading powers
    starts. The default 0 keeps the wedge-first term, without which words
    such as ``bbababbaba`` are lost.
    """
    if n < 1:
        raise ValueError("Multiple needs n >= 1")
    if isinstance(case, PowerOfLetter):
        lead = Lit(case.base)
    elif isinstance(case, AbaPattern):
        lead = word_expr(case.b + case.a)
    else:
        raise TypeError(f"Multiple is defined only for letter powers and aba, not {case!r}")
    wedge = build_wedge(case, alphabet)
    terms = [power(lead, n)]
    for i in range(first_index, n):
        terms.append(concat_all([power(lead, i), wedge, build_countps(case, n - i, alphabet, cap=cap)]))
    return union_all(terms)


def _frame(case: CaseTag, alphabet: Alphabet) -> tuple[Expr, Expr]:
    """Prefix and suffix languages surrounding the occurrence-bearing core."""
    if isinstance(case, PowerOfLetter):
        buffers = _others(alphabet, case.base)
        zero = build_count_zero(case.base * case.exponent, alphabet)
        return (
            smart_union(EPSILON, smart_concat(zero, buffers)),
            smart_union(smart_concat(buffers, zero), EPSILON),
        )
    a, b = Lit(case.a), Lit(case.b)
    inside = concat_all([UNIVERSE, word_expr(case.word), UNIVERSE])
    prefix = smart_complement(smart_union(inside, concat_all([UNIVERSE, a, b])))
    suffix = smart_complement(smart_union(concat_all([b, a, UNIVERSE]), inside))
    return prefix, suffix


def _supported(spec: CountSpec) -> CaseTag:
    case = classify_word(spec.w, spec.alphabet)
    if isinstance(case, Unsupported):
        raise UnsupportedWordError(case.reason)
    return case


def build_count(spec: CountSpec, *, cap: int = DEFAULT_COMPOSITION_CAP) -> Expr:
    """Star-free expression for Count(w, k)."""
    if spec.modulus is not None:
        raise ValueError("build_count takes a spec without modulus; use build_modcount")
    case = _supported(spec)
    w, k, alphabet = spec.w, spec.k, spec.alphabet
    if k == 0:
        return build_count_zero(w, alphabet)
    if isinstance(case, UnaryAlphabet):
        return power(Lit(case.base), case.exponent + k - 1)
    if isinstance(case, EmptyBorder):
        zero = build_count_zero(w, alphabet)
        return smart_concat(power(smart_concat(zero, word_expr(w)), k), zero)
    prefix, suffix = _frame(case, alphabet)
    return concat_all([prefix, build_countps(case, k, alphabet, cap=cap), suffix])


def build_modcount(spec: CountSpec, *, cap: int = DEFAULT_COMPOSITION_CAP, multiple_first_index: int = 0) -> Expr:
    """Expression of star-height at most one for ModCount(w, k, n)."""
    if spec.modulus is None:
        raise ValueError("build_modcount needs a modulus")
    case = _supported(spec)
    w, k, n, alphabet = spec.w, spec.k, spec.modulus, spec.alphabet
    if isinstance(case, UnaryAlphabet):
        a, r = Lit(case.base), case.exponent
        period = smart_star(power(a, n))
        if k > 0:
            return smart_concat(power(a, r + k - 1), period)
        short = union_all(power(a, i) for i in range(r))
        return smart_union(short, smart_concat(power(a, r + n - 1), period))
    if isinstance(case, EmptyBorder):
        zero = build_count_zero(w, alphabet)
        step = smart_concat(zero, word_expr(w))
        return concat_all([power(step, k), smart_star(power(step, n)), zero])
    # letter powers and aba share one shape; k = 0 reuses the k = n core
    prefix, suffix = _frame(case, alphabet)
    core = build_countps(case, k if k > 0 else n, alphabet, cap=cap)
    repeat = smart_star(build_multiple(case, n, alphabet, cap=cap, first_index=multiple_first_index))
    expr = concat_all([prefix, core, repeat, suffix])
    if k == 0:
        expr = smart_union(build_count_zero(w, alphabet), expr)
    return expr


def count_language(
    w: str,
    k: int,
    alphabet: Alphabet | str,
    modulus: int | None = None,
    *,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> Expr:
    """Count(w, k) when ``modulus`` is None, else ModCount(w, k, modulus)."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    spec = CountSpec(w, k, alphabet, modulus)
    if modulus is None:
        return build_count(spec, cap=cap)
    return build_modcount(spec, cap=cap)
