import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import border, bounded_language, occurrences, words_upto
from strategies import build, plans
from starheight.expr import EMPTY, EPSILON, Alphabet, Complement, Concat, Lit, Star, Union, parse
from starheight.lang import (
    CapExceededError,
    EquivReport,
    all_words,
    count_occurrences,
    derivative,
    enumerate_words,
    equiv_bounded,
    maximal_border,
    member,
    nullable,
)

A, AB = Alphabet.of("a"), Alphabet.of("ab")
a, b = Lit("a"), Lit("b")
words_ab = st.text(alphabet="ab", max_size=4)


@pytest.mark.parametrize(
    "e, expected",
    [
        (Star(a), True),
        (Complement(EPSILON), False),
        (Concat(Star(a), b), False),
        (EMPTY, False),
        (Complement(EMPTY), True),
        (Union(a, EPSILON), True),
    ],
)
def test_nullable(e, expected):
    assert nullable(e) is expected


def test_derivative_examples():
    assert derivative(a, "a") is EPSILON
    assert derivative(a, "b") is EMPTY
    # d_b(ab) = ∅ and d_b(b) = ε
    assert derivative(Union(Concat(a, b), b), "b") is EPSILON
    assert derivative(Complement(a), "a") is Complement(EPSILON)
    assert derivative(Star(a), "a") is Star(a)


def test_member_examples():
    no_aa = parse("!(!0 aa !0)", AB)
    assert not member(no_aa, "aa")
    assert member(no_aa, "aba")
    assert member(no_aa, "") is nullable(no_aa)


def test_enumerate_examples():
    assert enumerate_words(parse("a*", AB), AB, 2) == ["", "a", "aa"]
    assert enumerate_words(parse("!0", A), A, 2) == ["", "a", "aa"]
    assert enumerate_words(parse("0", AB), AB, 3) == []
    assert enumerate_words(parse("a|b", Alphabet.of("ba")), Alphabet.of("ba"), 1) == ["b", "a"]


def test_enumerate_cap():
    enumerate_words(parse("a*", AB), AB, 12)
    with pytest.raises(CapExceededError):
        enumerate_words(parse("a*", AB), AB, 13)
    assert len(enumerate_words(parse("!0", AB), AB, 13, cap=13)) == 2 ** 14 - 1


def test_equiv_examples():
    # B* = A* \ A*(A \ B)A* with B = {b}
    report = equiv_bounded(parse("b*", AB), parse("!0 - (!0 a !0)", AB), AB, 5)
    assert report == EquivReport(True, None, 5)
    report = equiv_bounded(parse("a", AB), parse("a|aa", AB), AB, 2)
    assert report == EquivReport(False, "aa", 2)
    e = parse("(ab)*|b", AB)
    assert equiv_bounded(e, e, AB, 6).equivalent


def test_equiv_counterexample_is_shortest_then_least():
    report = equiv_bounded(parse("!0", AB), parse("!0 - (ba|ab|bb)", AB), AB, 4)
    assert report.counterexample == "ab"
    assert not report


def test_equiv_report_invariant():
    with pytest.raises(ValueError):
        EquivReport(True, "a", 3)
    with pytest.raises(ValueError):
        EquivReport(False, None, 3)


@pytest.mark.parametrize(
    "v, w, count",
    [("abababa", "aba", 3), ("aaaa", "aa", 3), ("", "a", 0), ("aaa", "aa", 2), ("abc", "abcd", 0)],
)
def test_count_occurrences(v, w, count):
    assert count_occurrences(v, w) == count


def test_count_occurrences_rejects_empty_pattern():
    with pytest.raises(ValueError):
        count_occurrences("ab", "")


@pytest.mark.parametrize("w, expected", [("aba", "a"), ("abc", ""), ("abab", "ab"), ("a", ""), ("aaaa", "aaa")])
def test_maximal_border(w, expected):
    assert maximal_border(w) == expected


def test_maximal_border_rejects_empty():
    with pytest.raises(ValueError):
        maximal_border("")


def test_maximal_border_matches_quadratic_scan():
    for w in words_upto("ab", 8)[1:]:
        assert maximal_border(w) == border(w), w


def test_count_occurrences_matches_window_scan():
    for v in words_upto("ab", 7):
        for w in words_upto("ab", 3)[1:]:
            assert count_occurrences(v, w) == occurrences(v, w)


def test_unary_counts():
    for s in range(10):
        for r in range(1, 5):
            assert count_occurrences("a" * s, "a" * r) == max(0, s - r + 1)


def test_all_words_order():
    assert list(all_words(AB, 2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]


@given(plans(max_leaves=10))
@settings(max_examples=150, deadline=None)
def test_enumeration_agrees_with_set_semantics(plan):
    e = build(plan)
    truth = bounded_language(e, "ab", 5)
    listed = enumerate_words(e, AB, 5)
    assert set(listed) == truth
    assert all(member(e, w) for w in listed)


@given(plans(), st.sampled_from("ab"), words_ab)
@settings(max_examples=300, deadline=None)
def test_derivative_is_left_quotient(plan, x, v):
    e = build(plan)
    assert member(e, x + v) == member(derivative(e, x), v)
    assert (x + v in bounded_language(e, "ab", 5)) == member(derivative(e, x), v)


@given(plans(), words_ab)
@settings(max_examples=200, deadline=None)
def test_complement_law(plan, w):
    e = build(plan)
    assert member(Complement(e), w) is not member(e, w)
