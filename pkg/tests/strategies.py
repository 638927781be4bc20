from __future__ import annotations

import random

from hypothesis import strategies as st

from starheight.expr import (
    EMPTY,
    EPSILON,
    Complement,
    Concat,
    Lit,
    Star,
    Union,
    smart_complement,
    smart_concat,
    smart_star,
    smart_union,
)

NAIVE = {"union": Union, "concat": Concat, "star": Star, "complement": Complement}
SMART = {"union": smart_union, "concat": smart_concat, "star": smart_star, "complement": smart_complement}


def plans(letters: str = "ab", max_leaves: int = 12):
    """Construction plans: nested tuples that can be built naively or smartly."""
    leaves = st.sampled_from([("empty",), ("eps",)] + [("lit", x) for x in letters])
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.tuples(st.sampled_from(["union", "concat"]), kids, kids),
            st.tuples(st.sampled_from(["star", "complement"]), kids),
        ),
        max_leaves=max_leaves,
    )


def build(plan, table=SMART):
    tag = plan[0]
    if tag == "empty":
        return EMPTY
    if tag == "eps":
        return EPSILON
    if tag == "lit":
        return Lit(plan[1])
    return table[tag](*(build(p, table) for p in plan[1:]))


def random_plan(rng: random.Random, letters: str, depth: int):
    if depth == 0 or rng.random() < 0.25:
        choice = rng.randrange(len(letters) + 2)
        if choice == 0:
            return ("empty",)
        if choice == 1:
            return ("eps",)
        return ("lit", letters[choice - 2])
    tag = rng.choice(["union", "concat", "star", "complement"])
    if tag in ("union", "concat"):
        return (tag, random_plan(rng, letters, depth - 1), random_plan(rng, letters, depth - 1))
    return (tag, random_plan(rng, letters, depth - 1))


def plan_depth(plan) -> int:
    if plan[0] in ("empty", "eps", "lit"):
        return 0
    return 1 + max(plan_depth(p) for p in plan[1:])
