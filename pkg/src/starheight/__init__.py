"""Generalised star-height constructions with bounded-length verification."""

from .counting import CountSpec, build_count, build_modcount, classify_word, count_language
from .expr import Alphabet, Expr, intersect, parse, render, star_height
from .lang import count_occurrences, enumerate_words, equiv_bounded, maximal_border, member
from .rees import (
    ZERO,
    Morphism,
    ReesSemigroup,
    Triple,
    extend_morphism,
    load_rees_spec,
    multiply,
    preimage_element_expr,
    preimage_zero_expr,
    recognized_language_expr,
)

__all__ = [
    "CountSpec",
    "build_count",
    "build_modcount",
    "classify_word",
    "count_language",
    "Alphabet",
    "Expr",
    "intersect",
    "parse",
    "render",
    "star_height",
    "count_occurrences",
    "enumerate_words",
    "equiv_bounded",
    "maximal_border",
    "member",
    "ZERO",
    "Morphism",
    "ReesSemigroup",
    "Triple",
    "extend_morphism",
    "load_rees_spec",
    "multiply",
    "preimage_element_expr",
    "preimage_zero_expr",
    "recognized_language_expr",
]

__version__ = "0.1.0"
