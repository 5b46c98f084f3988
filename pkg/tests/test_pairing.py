"""Pairing and sequence codings are bijections."""

from hypothesis import given, strategies as st

from celab.pairing import (pair, unpair, triple, untriple, seq_encode,
                           seq_decode, set_encode, set_decode)

nats = st.integers(min_value=0, max_value=10 ** 6)
small = st.integers(min_value=0, max_value=2000)


@given(small, small)
def test_pair_unpair_roundtrip(a, b):
    assert unpair(pair(a, b)) == (a, b)


@given(nats)
def test_unpair_pair_roundtrip(n):
    a, b = unpair(n)
    assert pair(a, b) == n


@given(small, small, small)
def test_triple_roundtrip(a, b, c):
    assert untriple(triple(a, b, c)) == (a, b, c)


def test_pair_is_monotone_in_components():
    # components never exceed the code, so bounded searches terminate
    for n in range(500):
        a, b = unpair(n)
        assert a <= n and b <= n


@given(st.lists(st.integers(min_value=0, max_value=50), max_size=6))
def test_seq_roundtrip(xs):
    assert seq_decode(seq_encode(tuple(xs))) == tuple(xs)


@given(nats)
def test_seq_decode_total(n):
    assert seq_encode(seq_decode(n)) == n


@given(st.frozensets(st.integers(min_value=0, max_value=40), max_size=10))
def test_set_roundtrip(s):
    assert set_decode(set_encode(s)) == frozenset(s)


@given(st.integers(min_value=0, max_value=10 ** 9))
def test_set_decode_total(n):
    assert set_encode(set_decode(n)) == n
