"""Oracle relations: equivalence laws and cross-relation implications."""

import random

import pytest

import celab  # noqa: F401
from celab.descriptors import Difference, Finite, Union, member
from celab.relations import RELATIONS, decide, digraph_canonical, nce_value
from celab.reductions import (gen_pair_1d, gen_pair_columns, perturb_finitely,
                              random_ep_descriptor, repackage)

ONE_D = ["eq_ce", "e0", "z0", "e_min", "e_max", "e_med", "e_gcd", "e_lcm",
         "el_omega", "h_omega", "eq_1", "eq_m", "e2"]
COLUMNS = ["e1", "e3", "eset"]


def pairs_1d(seed, n=40):
    rng = random.Random(seed)
    return [gen_pair_1d(rng) for _ in range(n)]


def pairs_cols(seed, n=40):
    rng = random.Random(seed)
    return [gen_pair_columns(rng) for _ in range(n)]


@pytest.mark.parametrize("rid", ONE_D)
def test_equivalence_laws_1d(rid):
    ps = pairs_1d(hash(rid) % 1000)
    for a, b in ps:
        assert decide(rid, a, a)
        assert decide(rid, a, b) == decide(rid, b, a)
    # transitivity on a small cluster
    rng = random.Random(5)
    for _ in range(20):
        a = random_ep_descriptor(rng)
        b, c = repackage(rng, a), perturb_finitely(rng, a)
        if decide(rid, a, b) and decide(rid, b, c):
            assert decide(rid, a, c)


@pytest.mark.parametrize("rid", COLUMNS)
def test_equivalence_laws_columns(rid):
    for a, b in pairs_cols(hash(rid) % 1000):
        assert decide(rid, a, a)
        assert decide(rid, a, b) == decide(rid, b, a)


def test_equality_refines_the_1d_relations():
    for a, b in pairs_1d(21):
        if decide("eq_ce", a, b):
            for rid in ONE_D:
                assert decide(rid, a, b), rid


def test_almost_equality_implies_density_zero():
    for a, b in pairs_1d(22):
        if decide("e0", a, b):
            assert decide("z0", a, b)


def test_e1_implies_eset_and_e3_on_tail_families():
    # relations compare column families; on the tracked corpora the
    # classical implications E_1 => E_set is not expected, but all
    # columns almost equal (E_3) follows from all columns equal
    for a, b in pairs_cols(23):
        if decide("e1", a, b) and decide("eset", a, b):
            pass  # no containment either way; just exercise the deciders
        if decide("eq_ce", a, b):
            assert decide("e1", a, b) and decide("e3", a, b)
            assert decide("eset", a, b)


def test_repackage_never_changes_the_set():
    rng = random.Random(9)
    for _ in range(60):
        a = random_ep_descriptor(rng)
        b = repackage(rng, a)
        assert decide("eq_ce", a, b)


def test_perturbation_stays_in_the_e0_class():
    rng = random.Random(10)
    for _ in range(60):
        a = random_ep_descriptor(rng)
        b = perturb_finitely(rng, a)
        assert decide("e0", a, b)


def test_median_distinguishes_midpoints():
    a = Finite(frozenset({0, 10}))
    b = Finite(frozenset({5}))
    c = Finite(frozenset({4}))
    assert decide("e_med", a, b)
    assert not decide("e_med", a, c)


def test_digraph_canonical_is_isomorphism_invariant():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(1, 6)
        edges = frozenset(
            (rng.randrange(n), rng.randrange(n))
            for _ in range(rng.randrange(1, 7)))
        perm = list(range(n))
        rng.shuffle(perm)
        mapped = frozenset((perm[u], perm[v]) for u, v in edges)
        assert digraph_canonical(edges) == digraph_canonical(mapped)


def test_nce_value_folds_differences_and_unions():
    a = Finite(frozenset({1, 2, 3}))
    b = Finite(frozenset({2}))
    c = Finite(frozenset({5}))
    val = nce_value((a, b, c))
    got = {x for x in range(10) if val.member(x)}
    assert got == {1, 3, 5}


def test_every_relation_has_a_registered_doc():
    for rid, rel in RELATIONS.items():
        assert rel.doc, rid
