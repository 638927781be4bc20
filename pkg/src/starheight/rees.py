"""Rees zero-matrix semigroups over finite abelian groups.

The group is given as a product of cyclic groups ``Z_n1 x ... x Z_nm``;
elements are residue tuples. Indices into ``I`` and ``Lambda`` are 1-based.
Besides the multiplication this module builds expressions for preimages of
elements under a morphism from ``A^+``: star-height 0 for the zero, at most
1 for every other element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional, Union as TypingUnion

from .counting import DEFAULT_COMPOSITION_CAP, CountSpec, build_modcount
from .expr import (
    EMPTY,
    EPSILON,
    UNIVERSE,
    Alphabet,
    Expr,
    concat_all,
    difference,
    intersect,
    intersect_all,
    letter_class,
    union_all,
)

__all__ = [
    "DEFAULT_TUPLE_BUDGET",
    "BudgetExceededError",
    "SpecFormatError",
    "Zero",
    "ZERO",
    "Triple",
    "ReesElem",
    "ReesSemigroup",
    "Morphism",
    "multiply",
    "is_regular_matrix",
    "extend_morphism",
    "preimage_zero_expr",
    "grp_contribution_expr",
    "mat_contribution_expr",
    "preimage_element_expr",
    "recognized_language_expr",
    "project",
    "project_semigroup",
    "project_morphism",
    "parse_element",
    "format_element",
    "parse_rees_spec",
    "load_rees_spec",
]

DEFAULT_TUPLE_BUDGET = 4096

Residues = tuple[int, ...]
Entry = Optional[Residues]  # None is the zero entry


class BudgetExceededError(ValueError):
    pass


class SpecFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Zero:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = object.__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __reduce__(self):
        return (Zero, ())


ZERO = Zero()


@dataclass(frozen=True)
class Triple:
    i: int
    g: Residues
    lam: int

    def __repr__(self) -> str:
        return f"({self.i},[{','.join(map(str, self.g))}],{self.lam})"


ReesElem = TypingUnion[Zero, Triple]


@dataclass(frozen=True)
class ReesSemigroup:
    """M^0[G; I, Lambda; P] with G = Z_n1 x ... x Z_nm.

    ``matrix[lam - 1][i - 1]`` is the sandwich entry p_{lam,i}.
    """

    moduli: Residues
    i_size: int
    lambda_size: int
    matrix: tuple[tuple[Entry, ...], ...]

    def __post_init__(self) -> None:
        if not self.moduli or any(n < 2 for n in self.moduli):
            raise ValueError("moduli must be a non-empty list of integers >= 2")
        if self.i_size < 1 or self.lambda_size < 1:
            raise ValueError("index sets must be non-empty")
        if len(self.matrix) != self.lambda_size or any(len(row) != self.i_size for row in self.matrix):
            raise ValueError(f"sandwich matrix must be {self.lambda_size} x {self.i_size}")
        for row in self.matrix:
            for entry in row:
                if entry is not None:
                    self.check_group(entry)

    def check_group(self, g: Residues) -> None:
        if len(g) != len(self.moduli) or any(not 0 <= r < n for r, n in zip(g, self.moduli)):
            raise ValueError(f"group element {g} does not fit moduli {self.moduli}")

    def check(self, x: ReesElem) -> None:
        if x is ZERO:
            return
        if not isinstance(x, Triple):
            raise TypeError(f"not a semigroup element: {x!r}")
        if not 1 <= x.i <= self.i_size or not 1 <= x.lam <= self.lambda_size:
            raise IndexError(f"element {x!r} has an index out of range")
        self.check_group(x.g)

    def entry(self, lam: int, i: int) -> Entry:
        return self.matrix[lam - 1][i - 1]

    def add(self, *gs: Residues) -> Residues:
        return tuple(sum(parts) % n for n, parts in zip(self.moduli, zip(*gs)))

    def group_elements(self) -> Iterator[Residues]:
        return itertools.product(*(range(n) for n in self.moduli))

    def triples(self) -> Iterator[Triple]:
        for i in range(1, self.i_size + 1):
            for g in self.group_elements():
                for lam in range(1, self.lambda_size + 1):
                    yield Triple(i, g, lam)

    def elements(self) -> list[ReesElem]:
        return [ZERO, *self.triples()]


@dataclass(frozen=True)
class Morphism:
    alphabet: Alphabet
    images: Mapping[str, ReesElem] = field(hash=False)

    def __post_init__(self) -> None:
        missing = [x for x in self.alphabet if x not in self.images]
        extra = [x for x in self.images if x not in self.alphabet]
        if missing or extra:
            raise ValueError(f"morphism must map exactly the alphabet letters (missing {missing}, extra {extra})")

    def __call__(self, letter: str) -> ReesElem:
        return self.images[letter]

    def zero_letters(self) -> list[str]:
        return [x for x in self.alphabet if self.images[x] is ZERO]

    def live_letters(self) -> list[str]:
        return [x for x in self.alphabet if self.images[x] is not ZERO]

    def letters_where(self, pred) -> list[str]:
        return [x for x in self.live_letters() if pred(self.images[x])]


def multiply(S: ReesSemigroup, x: ReesElem, y: ReesElem) -> ReesElem:
    S.check(x)
    S.check(y)
    if x is ZERO or y is ZERO:
        return ZERO
    p = S.entry(x.lam, y.i)
    if p is None:
        return ZERO
    return Triple(x.i, S.add(x.g, p, y.g), y.lam)


def is_regular_matrix(S: ReesSemigroup) -> bool:
    rows = all(any(e is not None for e in row) for row in S.matrix)
    cols = all(any(row[i] is not None for row in S.matrix) for i in range(S.i_size))
    return rows and cols


def extend_morphism(S: ReesSemigroup, phi: Morphism, word: str) -> ReesElem:
    """Image of a non-empty word: the product of its letter images."""
    if not word:
        raise ValueError("morphisms are defined on non-empty words only")
    result = phi(word[0])
    for x in word[1:]:
        result = multiply(S, result, phi(x))
    return result


# ---------------------------------------------------------------------------
# preimage expressions


def _classes(S: ReesSemigroup, phi: Morphism) -> dict[Triple, list[str]]:
    """Letters grouped by their non-zero image, in element order."""
    groups: dict[Triple, list[str]] = {}
    for x in phi.live_letters():
        groups.setdefault(phi(x), []).append(x)
    return dict(sorted(groups.items(), key=lambda kv: (kv[0].i, kv[0].g, kv[0].lam)))


def preimage_zero_expr(S: ReesSemigroup, phi: Morphism) -> Expr:
    """Star-free expression for the words mapped to zero.

    A word maps to zero iff it contains a zero letter or two adjacent
    letters whose images meet a zero sandwich entry.
    """
    terms = [concat_all([UNIVERSE, letter_class(phi.zero_letters()), UNIVERSE])]
    classes = _classes(S, phi)
    for s, left in classes.items():
        for t, right in classes.items():
            if S.entry(s.lam, t.i) is None:
                terms.append(concat_all([UNIVERSE, letter_class(left), letter_class(right), UNIVERSE]))
    return union_all(terms)


def _solutions(weights: list[int], target: int, n: int, budget: int) -> Iterator[tuple[int, ...]]:
    size = n ** len(weights)
    if size > budget:
        raise BudgetExceededError(f"{size} residue tuples exceed the budget of {budget}")
    for ks in itertools.product(range(n), repeat=len(weights)):
        if sum(g * k for g, k in zip(weights, ks)) % n == target % n:
            yield ks


def grp_contribution_expr(
    weights: Mapping[str, int],
    target: int,
    n: int,
    alphabet: Alphabet,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> Expr:
    """Words w with sum over letters a of weights[a] * |w|_a = target (mod n)."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    letters = list(weights)
    terms = []
    for ks in _solutions([weights[x] for x in letters], target, n, budget):
        terms.append(intersect_all(build_modcount(CountSpec(x, k, alphabet, n), cap=cap) for x, k in zip(letters, ks)))
    return union_all(terms)


def mat_contribution_expr(
    pair_weights: Mapping[str, int],
    target: int,
    n: int,
    alphabet: Alphabet,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> Expr:
    """Words w with sum over two-letter factors ab of pair_weights[ab] * |w|_ab = target (mod n).

    ``pair_weights`` is keyed by two-letter strings.
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    pairs = list(pair_weights)
    if any(len(ab) != 2 for ab in pairs):
        raise ValueError("pair weights must be keyed by two-letter words")
    terms = []
    for ks in _solutions([pair_weights[ab] for ab in pairs], target, n, budget):
        terms.append(intersect_all(build_modcount(CountSpec(ab, k, alphabet, n), cap=cap) for ab, k in zip(pairs, ks)))
    return union_all(terms)


def _middle_coordinate(
    S: ReesSemigroup,
    phi: Morphism,
    t: int,
    g: int,
    *,
    budget: int,
    cap: int,
) -> Expr:
    """Words whose coordinate-t group sum (letters plus sandwich entries) is g."""
    n = S.moduli[t]
    live = phi.live_letters()
    weights = {x: phi(x).g[t] for x in live}
    pair_weights = {}
    for x in live:
        for y in live:
            p = S.entry(phi(x).lam, phi(y).i)
            if p is not None:
                pair_weights[x + y] = p[t]
    terms = []
    for g1 in range(n):
        g2 = (g - g1) % n
        grp = grp_contribution_expr(weights, g1, n, phi.alphabet, budget=budget, cap=cap)
        mat = mat_contribution_expr(pair_weights, g2, n, phi.alphabet, budget=budget, cap=cap)
        terms.append(intersect(grp, mat))
    return union_all(terms)


def preimage_element_expr(
    S: ReesSemigroup,
    phi: Morphism,
    s: Triple,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> Expr:
    """Expression of star-height at most one for the words mapped to ``s``.

    Per cyclic factor: first letter carries index i, last letter carries
    lambda, and the group sum in that coordinate is s.g[t]. The factors are
    intersected, then words mapped to zero are removed; the coordinate
    conditions alone do not see zero letters or zero entries.
    """
    if not isinstance(s, Triple):
        raise TypeError("preimage_element_expr needs a non-zero element; use preimage_zero_expr")
    S.check(s)
    starts = letter_class(phi.letters_where(lambda e: e.i == s.i))
    ends = letter_class(phi.letters_where(lambda e: e.lam == s.lam))
    first = concat_all([starts, UNIVERSE])
    last = concat_all([UNIVERSE, ends])
    per_factor = []
    for t in range(len(S.moduli)):
        middle = _middle_coordinate(S, phi, t, s.g[t], budget=budget, cap=cap)
        per_factor.append(intersect_all([first, middle, last]))
    return difference(intersect_all(per_factor), preimage_zero_expr(S, phi))


def recognized_language_expr(
    S: ReesSemigroup,
    phi: Morphism,
    X: Iterable[ReesElem],
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> Expr:
    """Expression for the preimage of the subset X, as a union of element preimages."""
    parts = []
    for x in X:
        S.check(x)
        if x is ZERO:
            parts.append(preimage_zero_expr(S, phi))
        else:
            parts.append(preimage_element_expr(S, phi, x, budget=budget, cap=cap))
    language = union_all(parts)
    if language is EMPTY:
        return EMPTY
    return difference(language, EPSILON)


# ---------------------------------------------------------------------------
# projections onto cyclic factors


def project(S: ReesSemigroup, t: int, x: ReesElem) -> ReesElem:
    """Keep only group coordinate ``t`` of an element."""
    if not 0 <= t < len(S.moduli):
        raise IndexError(f"coordinate {t} out of range for {len(S.moduli)} factors")
    if x is ZERO:
        return ZERO
    S.check(x)
    return Triple(x.i, (x.g[t],), x.lam)


def project_semigroup(S: ReesSemigroup, t: int) -> ReesSemigroup:
    """The factor semigroup over Z_{n_t}; zero entries stay zero."""
    if not 0 <= t < len(S.moduli):
        raise IndexError(f"coordinate {t} out of range for {len(S.moduli)} factors")
    matrix = tuple(tuple(None if e is None else (e[t],) for e in row) for row in S.matrix)
    return ReesSemigroup((S.moduli[t],), S.i_size, S.lambda_size, matrix)


def project_morphism(S: ReesSemigroup, phi: Morphism, t: int) -> Morphism:
    return Morphism(phi.alphabet, {x: project(S, t, phi(x)) for x in phi.alphabet})


# ---------------------------------------------------------------------------
# text formats


def format_element(x: ReesElem) -> str:
    if x is ZERO:
        return "zero"
    return ",".join(map(str, (x.i, *x.g, x.lam)))


def parse_element(text: str, S: ReesSemigroup) -> ReesElem:
    """``zero`` or ``i,r1,...,rm,lambda``."""
    text = text.strip()
    if text == "zero":
        return ZERO
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse element {text!r}") from None
    if len(values) != len(S.moduli) + 2:
        raise ValueError(f"element {text!r} needs {len(S.moduli)} residues between i and lambda")
    x = Triple(values[0], tuple(values[1:-1]), values[-1])
    S.check(x)
    return x


def _residues(text: str, moduli: Residues, line: int) -> Residues:
    try:
        g = tuple(int(r) for r in text.split(","))
    except ValueError:
        raise SpecFormatError(f"bad group element {text!r}", line) from None
    if len(g) != len(moduli) or any(not 0 <= r < n for r, n in zip(g, moduli)):
        raise SpecFormatError(f"group element {text!r} does not fit moduli {moduli}", line)
    return g


def parse_rees_spec(text: str) -> tuple[ReesSemigroup, Morphism]:
    """Read the line-oriented semigroup and morphism description."""
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))

    moduli = i_size = lambda_size = None
    rows: list[tuple[Entry, ...]] = []
    letters = None
    images: dict[str, tuple[int, str]] = {}
    pos = 0
    while pos < len(lines):
        number, content = lines[pos]
        pos += 1
        key, sep, value = content.partition(":")
        if not sep:
            raise SpecFormatError(f"expected 'key: value', got {content!r}", number)
        key, value = key.strip(), value.strip()
        if key == "group":
            try:
                moduli = tuple(int(n) for n in value.split("x"))
            except ValueError:
                raise SpecFormatError(f"bad group {value!r}", number) from None
            if any(n < 2 for n in moduli):
                raise SpecFormatError("cyclic moduli must be at least 2", number)
        elif key == "I":
            i_size = int(value)
        elif key == "Lambda":
            lambda_size = int(value)
        elif key == "P":
            if moduli is None or i_size is None or lambda_size is None:
                raise SpecFormatError("group, I and Lambda must precede P", number)
            if value:
                raise SpecFormatError("matrix rows go on the lines after 'P:'", number)
            for _ in range(lambda_size):
                if pos >= len(lines):
                    raise SpecFormatError(f"P needs {lambda_size} rows")
                number, content = lines[pos]
                pos += 1
                cells = content.split()
                if len(cells) != i_size:
                    raise SpecFormatError(f"matrix row needs {i_size} entries", number)
                rows.append(tuple(None if c == "-" else _residues(c, moduli, number) for c in cells))
        elif key == "alphabet":
            try:
                letters = Alphabet.of(value)
            except ValueError as exc:
                raise SpecFormatError(str(exc), number) from None
        elif key.startswith("map "):
            letter = key[4:].strip()
            if letter in images:
                raise SpecFormatError(f"letter {letter!r} mapped twice", number)
            images[letter] = (number, value)
        else:
            raise SpecFormatError(f"unknown key {key!r}", number)

    if moduli is None or i_size is None or lambda_size is None or not rows:
        raise SpecFormatError("spec needs group, I, Lambda and P")
    if letters is None:
        raise SpecFormatError("spec needs an alphabet line")
    try:
        S = ReesSemigroup(moduli, i_size, lambda_size, tuple(rows))
    except ValueError as exc:
        raise SpecFormatError(str(exc)) from None

    mapped: dict[str, ReesElem] = {}
    for letter, (number, value) in images.items():
        if letter not in letters:
            raise SpecFormatError(f"letter {letter!r} is not in the alphabet", number)
        if value == "zero":
            mapped[letter] = ZERO
            continue
        parts = value.split()
        if len(parts) != 3:
            raise SpecFormatError("image must be 'zero' or '<i> <r1,...,rm> <lambda>'", number)
        try:
            x = Triple(int(parts[0]), _residues(parts[1], moduli, number), int(parts[2]))
            S.check(x)
        except (ValueError, IndexError) as exc:
            raise SpecFormatError(str(exc), number) from None
        mapped[letter] = x
    missing = [x for x in letters if x not in mapped]
    if missing:
        raise SpecFormatError(f"no image for letters {''.join(missing)!r}")
    return S, Morphism(letters, {x: mapped[x] for x in letters})


def load_rees_spec(path: str | Path) -> tuple[ReesSemigroup, Morphism]:
    return parse_rees_spec(Path(path).read_text())
