"""Evaluator semantics: stage monotonicity, determinism, budgets."""

import pytest
from hypothesis import given, settings, strategies as st

import celab  # noqa: F401  (registers combinators)
from celab.pairing import pair
from celab.numbering import decode as program_from_code, encode as program_code
from celab.programs import (BudgetExceeded, Combinator, Evaluator,
                            FullColumnOf, columns_of, script)

entries = st.lists(
    st.tuples(st.integers(min_value=0, max_value=8),
              st.sets(st.integers(min_value=0, max_value=30), max_size=4)),
    max_size=5)


@given(entries, st.integers(min_value=0, max_value=12))
def test_script_approx_is_monotone(pairs, s):
    term = script(pairs)
    ev = Evaluator()
    assert ev.approx(term, s) <= ev.approx(term, s + 1)


@given(entries)
def test_script_limit_is_union_of_entries(pairs):
    term = script(pairs)
    ev = Evaluator()
    top = max((stage for stage, _ in pairs), default=0)
    want = set()
    for _, elems in pairs:
        want |= set(elems)
    assert set(ev.approx(term, top)) == want


def test_full_column_contents():
    ev = Evaluator()
    got = ev.approx(FullColumnOf(3), 4)
    assert got == frozenset(pair(3, k) for k in range(5))
    assert columns_of(got) == {3: frozenset(range(5))}


def test_separate_evaluators_agree():
    term = Combinator("expand_columns", (script([(0, {1}), (2, {4})]),), ())
    a = Evaluator().approx(term, 9)
    b = Evaluator().approx(term, 9)
    assert a == b


def test_budget_exhaustion_raises():
    ev = Evaluator(budget=50)
    with pytest.raises(BudgetExceeded):
        ev.approx(Combinator("expand_columns", (FullColumnOf(0),), ()), 40)


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=5000))
def test_program_numbering_is_a_bijection(code):
    term = program_from_code(code)
    assert program_code(term) == code
