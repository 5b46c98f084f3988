"""S-expression round trips for program terms and descriptors."""

import random

import pytest

import celab  # noqa: F401
from celab.programs import Combinator, Evaluator, FullColumnOf, script
from celab.reductions import gen_pair_columns, random_ep_descriptor
from celab.serialization import (ParseError, desc_from_sexpr, desc_to_sexpr,
                                 term_from_sexpr, term_to_sexpr)


def test_term_round_trips():
    terms = [
        script([(0, {1, 5}), (3, {2})]),
        FullColumnOf(4),
        Combinator("expand_columns", (script([(0, {2})]),), ()),
        Combinator("cut_below", (FullColumnOf(1),), (2,), variant=3),
    ]
    for t in terms:
        assert term_from_sexpr(term_to_sexpr(t)) == t


def test_term_parse_examples():
    t = term_from_sexpr("(script (0 (5)))")
    assert Evaluator().approx(t, 3) == frozenset({5})
    assert term_from_sexpr("(fullcolumn 2)") == FullColumnOf(2)


@pytest.mark.parametrize("bad", [
    "", "(script", "(script (x (1)))", "(combinator)", "(indexed a)",
    "(script (0 (1))) extra", "(unknown 1)",
])
def test_malformed_terms_are_rejected(bad):
    with pytest.raises(ParseError):
        term_from_sexpr(bad)


def test_descriptor_round_trips():
    rng = random.Random(2)
    for _ in range(150):
        d = random_ep_descriptor(rng)
        assert desc_from_sexpr(desc_to_sexpr(d)) == d
    for _ in range(60):
        a, b = gen_pair_columns(rng)
        assert desc_from_sexpr(desc_to_sexpr(a)) == a
        assert desc_from_sexpr(desc_to_sexpr(b)) == b


@pytest.mark.parametrize("bad", [
    "(progression 1)", "(difference (finite 1))", "(blocks (finite))",
    "(finite -3)",
])
def test_malformed_descriptors_are_rejected(bad):
    with pytest.raises(ParseError):
        desc_from_sexpr(bad)
