"""Generalised regular expressions: union, concatenation, star and complement.

Nodes are hash-consed, so two structurally equal trees are the same object.
That makes equality an identity check and lets derivative caches key on
nodes directly.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Alphabet",
    "Expr",
    "EmptySet",
    "Epsilon",
    "Lit",
    "Union",
    "Concat",
    "Star",
    "Complement",
    "EMPTY",
    "EPSILON",
    "UNIVERSE",
    "ExprSyntaxError",
    "UnknownLetterError",
    "smart_empty",
    "smart_epsilon",
    "smart_lit",
    "smart_union",
    "smart_concat",
    "smart_star",
    "smart_complement",
    "intersect",
    "difference",
    "union_all",
    "concat_all",
    "intersect_all",
    "word_expr",
    "power",
    "letter_class",
    "star_height",
    "parse",
    "render",
    "render_tree",
]

LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Alphabet:
    """A finite, non-empty, ordered set of single-character letters."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in alphabet {''.join(self.letters)!r}")
        for x in self.letters:
            if len(x) != 1 or x not in LETTERS:
                raise ValueError(f"letters must be single characters a-z, got {x!r}")

    @classmethod
    def of(cls, letters: str | Iterable[str]) -> Alphabet:
        return cls(tuple(letters))

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, x: object) -> bool:
        return x in self.letters

    def __str__(self) -> str:
        return "".join(self.letters)

    def sort_key(self, word: str) -> tuple[int, tuple[int, ...]]:
        """Length-then-lexicographic key, letters ranked by declaration order."""
        return len(word), tuple(self.letters.index(x) for x in word)


# ---------------------------------------------------------------------------
# nodes

_table: weakref.WeakValueDictionary = weakref.WeakValueDictionary()


class Expr:
    """Base class of expression nodes. Instances are immutable and interned."""

    __slots__ = ("height", "nullable_", "__weakref__")
    children: tuple[Expr, ...] = ()

    def __new__(cls, *args):
        key = (cls, *args)
        node = _table.get(key)
        if node is None:
            node = object.__new__(cls)
            node._init(*args)
            node.nullable_ = None
            _table[key] = node
        return node

    def _init(self, *args) -> None:
        self.height = 0

    def __setattr__(self, name, value):
        if name in ("nullable_",) or not hasattr(self, "height"):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), self._args())

    def _args(self) -> tuple:
        return ()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(map(repr, self._args()))})"

    def __str__(self) -> str:
        return render(self)

    # operator sugar; all go through the smart constructors
    def __or__(self, other: Expr) -> Expr:
        return smart_union(self, other)

    def __add__(self, other: Expr) -> Expr:
        return smart_concat(self, other)

    def __and__(self, other: Expr) -> Expr:
        return intersect(self, other)

    def __sub__(self, other: Expr) -> Expr:
        return difference(self, other)

    def __invert__(self) -> Expr:
        return smart_complement(self)


class EmptySet(Expr):
    __slots__ = ()


class Epsilon(Expr):
    __slots__ = ()


class Lit(Expr):
    __slots__ = ("letter",)

    def _init(self, letter: str) -> None:
        if len(letter) != 1 or letter not in LETTERS:
            raise ValueError(f"letter must be a single character a-z, got {letter!r}")
        object.__setattr__(self, "letter", letter)
        self.height = 0

    def _args(self) -> tuple:
        return (self.letter,)


class Union(Expr):
    __slots__ = ("left", "right")

    def _init(self, left: Expr, right: Expr) -> None:
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self.height = max(left.height, right.height)

    def _args(self) -> tuple:
        return (self.left, self.right)

    @property
    def children(self) -> tuple[Expr, ...]:
        return (self.left, self.right)


class Concat(Expr):
    __slots__ = ("left", "right")

    def _init(self, left: Expr, right: Expr) -> None:
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self.height = max(left.height, right.height)

    def _args(self) -> tuple:
        return (self.left, self.right)

    @property
    def children(self) -> tuple[Expr, ...]:
        return (self.left, self.right)


class Star(Expr):
    __slots__ = ("inner",)

    def _init(self, inner: Expr) -> None:
        object.__setattr__(self, "inner", inner)
        self.height = inner.height + 1

    def _args(self) -> tuple:
        return (self.inner,)

    @property
    def children(self) -> tuple[Expr, ...]:
        return (self.inner,)


class Complement(Expr):
    __slots__ = ("inner",)

    def _init(self, inner: Expr) -> None:
        object.__setattr__(self, "inner", inner)
        self.height = inner.height

    def _args(self) -> tuple:
        return (self.inner,)

    @property
    def children(self) -> tuple[Expr, ...]:
        return (self.inner,)


EMPTY = EmptySet()
EPSILON = Epsilon()
UNIVERSE = Complement(EMPTY)  # A* = !0


def star_height(e: Expr) -> int:
    """Nesting depth of stars; complement, union and product do not add to it."""
    return e.height


# ---------------------------------------------------------------------------
# smart constructors


def smart_empty() -> Expr:
    return EMPTY


def smart_epsilon() -> Expr:
    return EPSILON


def smart_lit(letter: str) -> Expr:
    return Lit(letter)


def _union_operands(e: Expr) -> Iterator[Expr]:
    while isinstance(e, Union):
        yield from _union_operands(e.left) if isinstance(e.left, Union) else (e.left,)
        e = e.right
    yield e


def smart_union(e1: Expr, e2: Expr) -> Expr:
    """Union with ∅ dropped and repeated operands of the union chain merged.

    The result is a right-nested chain in first-occurrence order.
    """
    if e1 is EMPTY:
        return e2
    if e2 is EMPTY or e1 is e2:
        return e1
    operands: list[Expr] = []
    seen: set[int] = set()
    for part in (*_union_operands(e1), *_union_operands(e2)):
        if part is EMPTY or id(part) in seen:
            continue
        seen.add(id(part))
        operands.append(part)
    result = operands[-1]
    for part in reversed(operands[:-1]):
        result = Union(part, result)
    return result


def smart_concat(e1: Expr, e2: Expr) -> Expr:
    if e1 is EMPTY or e2 is EMPTY:
        return EMPTY
    if e1 is EPSILON:
        return e2
    if e2 is EPSILON:
        return e1
    return Concat(e1, e2)


def smart_star(e: Expr) -> Expr:
    if e is EMPTY or e is EPSILON:
        return EPSILON
    return Star(e)


def smart_complement(e: Expr) -> Expr:
    if isinstance(e, Complement):
        return e.inner
    return Complement(e)


def intersect(e1: Expr, e2: Expr) -> Expr:
    """E ∩ F as (E^c ∪ F^c)^c."""
    return smart_complement(smart_union(smart_complement(e1), smart_complement(e2)))


def difference(e1: Expr, e2: Expr) -> Expr:
    """E \\ F as E ∩ F^c."""
    return intersect(e1, smart_complement(e2))


def union_all(parts: Iterable[Expr]) -> Expr:
    """Right-nested union over ``parts`` in iteration order; ∅ when empty."""
    items = list(parts)
    result = EMPTY
    for part in reversed(items):
        result = smart_union(part, result)
    return result


def concat_all(parts: Iterable[Expr]) -> Expr:
    items = list(parts)
    result = EPSILON
    for part in reversed(items):
        result = smart_concat(part, result)
    return result


def intersect_all(parts: Iterable[Expr]) -> Expr:
    """Intersection over ``parts``; the empty intersection is A* (``!0``)."""
    items = list(parts)
    if not items:
        return UNIVERSE
    result = items[-1]
    for part in reversed(items[:-1]):
        result = intersect(part, result)
    return result


def word_expr(word: str) -> Expr:
    return concat_all(Lit(x) for x in word)


def power(e: Expr, k: int) -> Expr:
    """``e`` concatenated with itself ``k`` times (ε for k = 0)."""
    if k < 0:
        raise ValueError("negative exponent")
    return concat_all([e] * k)


def letter_class(letters: Iterable[str]) -> Expr:
    """Finite union of single letters; ∅ for an empty class."""
    return union_all(Lit(x) for x in letters)


# ---------------------------------------------------------------------------
# text syntax


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownLetterError(ValueError):
    def __init__(self, letter: str, position: int, alphabet: Alphabet):
        super().__init__(f"letter {letter!r} at position {position} is not in alphabet {str(alphabet)!r}")
        self.letter = letter
        self.position = position


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.tokens = [(i, c) for i, c in enumerate(text) if not c.isspace()]
        self.pos = 0
        self.alphabet = alphabet
        self.end = len(text)

    def peek(self) -> str | None:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else self.end

    def take(self) -> str:
        c = self.tokens[self.pos][1]
        self.pos += 1
        return c

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek() is not None:
            raise ExprSyntaxError(f"unexpected {self.peek()!r}", self.where())
        return e

    def expr(self) -> Expr:
        e = self.diff()
        while self.peek() == "|":
            self.take()
            e = smart_union(e, self.diff())
        return e

    def diff(self) -> Expr:
        e = self.isect()
        while self.peek() == "-":
            self.take()
            e = difference(e, self.isect())
        return e

    def isect(self) -> Expr:
        e = self.concat()
        while self.peek() == "&":
            self.take()
            e = intersect(e, self.concat())
        return e

    def concat(self) -> Expr:
        parts = [self.postfix()]
        while self.peek() is not None and self.peek() not in "|-&)*":
            parts.append(self.postfix())
        return concat_all(parts)

    def postfix(self) -> Expr:
        e = self.atom()
        while self.peek() == "*":
            self.take()
            e = smart_star(e)
        return e

    def atom(self) -> Expr:
        c = self.peek()
        at = self.where()
        if c is None:
            raise ExprSyntaxError("unexpected end of input", at)
        self.take()
        if c == "0":
            return EMPTY
        if c == "1":
            return EPSILON
        if c == "!":
            return smart_complement(self.atom())
        if c == "(":
            e = self.expr()
            if self.peek() != ")":
                raise ExprSyntaxError("expected ')'", self.where())
            self.take()
            return e
        if c in LETTERS:
            if c not in self.alphabet:
                raise UnknownLetterError(c, at, self.alphabet)
            return Lit(c)
        raise ExprSyntaxError(f"unexpected {c!r}", at)


def parse(text: str, alphabet: Alphabet | str) -> Expr:
    """Parse the text grammar; ``&`` and ``-`` are desugared by De Morgan."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    return _Parser(text, alphabet).parse()


def _atomic(e: Expr) -> str:
    """Render ``e`` so that it can take a postfix star or a prefix ``!``."""
    if isinstance(e, (EmptySet, Epsilon, Lit, Complement)):
        return render(e)
    return f"({render(e)})"


def render(e: Expr) -> str:
    # iterative over union and concat spines; those are the long chains
    if isinstance(e, EmptySet):
        return "0"
    if isinstance(e, Epsilon):
        return "1"
    if isinstance(e, Lit):
        return e.letter
    if isinstance(e, Complement):
        return "!" + _atomic(e.inner)
    if isinstance(e, Star):
        inner = e.inner
        body = render(inner) if isinstance(inner, Star) else _atomic(inner)
        return body + "*"
    if isinstance(e, Union):
        out = []
        while isinstance(e, Union):
            left = e.left
            out.append(f"({render(left)})" if isinstance(left, Union) else render(left))
            e = e.right
        out.append(render(e))
        return "|".join(out)
    if isinstance(e, Concat):
        out = []
        while isinstance(e, Concat):
            left = e.left
            out.append(f"({render(left)})" if isinstance(left, (Union, Concat)) else render(left))
            e = e.right
        out.append(f"({render(e)})" if isinstance(e, Union) else render(e))
        return "".join(out)
    raise TypeError(f"not an expression: {e!r}")


def render_tree(e: Expr, indent: str = "  ") -> str:
    """Indented structural form, one node per line."""
    lines: list[str] = []

    def walk(node: Expr, depth: int) -> None:
        pad = indent * depth
        if isinstance(node, Lit):
            lines.append(f"{pad}Lit({node.letter})")
            return
        lines.append(f"{pad}{type(node).__name__}")
        for child in node.children:
            walk(child, depth + 1)

    walk(e, 0)
    return "\n".join(lines)
