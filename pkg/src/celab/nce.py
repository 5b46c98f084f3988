"""Iterated difference/union combinations of enumerable sets.

A combination is a nonempty tuple of programs (or descriptors)
``(A1, ..., An)`` denoting ``((A1 - A2) | A3) - A4 ...`` folded left to
right: even positions subtract, odd positions (from the third on) add
back.  Membership of a point can therefore change at most ``n`` times
along the stages, once per alternation level.
"""

from __future__ import annotations

from .pairing import seq_encode, seq_decode, pair, unpair
from .descriptors import Descriptor, encode_descriptor, decode_descriptor, EMPTY


def nce_stage_value(ev, terms, s: int) -> frozenset:
    """The fold evaluated on the stage-s approximations."""
    acc: frozenset = frozenset()
    for i, t in enumerate(terms, start=1):
        cur = ev.approx(t, s)
        if i == 1:
            acc = cur
        elif i % 2 == 0:
            acc = acc - cur
        else:
            acc = acc | cur
    return acc


def toggle_count(ev, terms, x: int, last_stage: int) -> int:
    """How often membership of x flips over stages 0..last_stage."""
    flips = 0
    prev = False
    for s in range(last_stage + 1):
        cur = x in nce_stage_value(ev, terms, s)
        if cur != prev:
            flips += 1
        prev = cur
    return flips


def toggle_bound(terms) -> int:
    """Monotone inputs flip the fold at most once per tuple slot."""
    return len(terms)


def embed_next_level(parts: tuple) -> tuple:
    """View an n-slot combination as an (n+1)-slot one.

    Appending an empty slot leaves the fold's value unchanged whether
    the new slot subtracts or adds back.
    """
    return tuple(parts) + (EMPTY,)


def tuple_encode(parts) -> int:
    """Bijection between nonempty descriptor tuples and naturals."""
    if not parts:
        raise ValueError("combination tuples are nonempty")
    return seq_encode(tuple(encode_descriptor(d) for d in parts)) - 1


def tuple_decode(code: int) -> tuple:
    return tuple(decode_descriptor(c) for c in seq_decode(code + 1))


def ltomega_encode(t) -> int:
    """Bijection between nonempty tuples of naturals and naturals:
    iterated right-nested pairing with a length prefix."""
    if not t:
        raise ValueError("level tuples are nonempty")
    x = t[-1]
    for v in reversed(t[:-1]):
        x = pair(v, x)
    return pair(len(t) - 1, x)


def ltomega_decode(code: int) -> tuple:
    n, x = unpair(code)
    out = []
    for _ in range(n):
        h, x = unpair(x)
        out.append(h)
    out.append(x)
    return tuple(out)
