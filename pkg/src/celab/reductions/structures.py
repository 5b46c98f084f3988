"""Reductions into structures and between computability degrees.

Images here are binary structures (edge sets coded as pairs), column
families, or column-family copies of input graphs; sources range over
the degree-style relations (cardinality matching, many-one and one-one
interreducibility) and the iterated difference/union hierarchy.
"""

from __future__ import annotations

import math

from ..pairing import pair, unpair, seq_decode, set_decode
from ..programs import Combinator, register_combinator, arg, param
from ..descriptors import (
    Descriptor, Finite, Cofinite, Union, Difference, ColumnsBySet,
    EMPTY, FULL, analyze, member,
)
from ..relations import (
    ClassKey, NceTuple, column_family_key, digraph_canonical, many_one_key,
    one_equivalence_key, nce_value,
)
from ..nce import nce_stage_value
from . import (
    Built, Reduction, register_reduction, register_mutant,
    gen_pair_1d, gen_pair_columns, compile_arg, random_ep_descriptor,
    repackage,
)


# ---------------------------------------------------------------------------
# combinator steps


def _step_star_edges(ev, args, params, s, state):
    """Element n of the argument adds the edge root -> leaf n+1."""
    a = arg(args, 0)
    skip = param(params, 0)
    out = []
    for n in ev.approx(a, s):
        ev.tick()
        if ev.entry_stage(a, n, s) == s and n >= skip:
            out.append(pair(0, n + 1))
    return out


def _tree_edge(x: int, has, trim: int) -> bool:
    """Decode x as an edge of the membership tree.

    Vertex codes: 0 is the root; 1 + 2*b is the branch for b = <n, r>
    (column n, copy r); 2 + 2*<b, <k, t>> is position t of the chain
    recording element k under branch b.  ``has(n, k)`` tests column
    membership; chains run to position k - trim (trim 0 is honest).
    """
    u, v = unpair(x)
    if u == 0:
        return v % 2 == 1          # the root sees every branch copy
    if v < 2 or v % 2 != 0:
        return False
    bv, ktv = unpair((v - 2) // 2)
    k, t = unpair(ktv)
    if t > k - trim:
        return False
    n = unpair(bv)[0]
    if u % 2 == 1:                 # branch -> chain start
        return (u - 1) // 2 == bv and t == 0 and has(n, k)
    bu, ktu = unpair((u - 2) // 2)
    k2, t2 = unpair(ktu)
    return bu == bv and k2 == k and t2 + 1 == t and has(n, k)


def _step_membership_tree(ev, args, params, s, state):
    """Re-scan all codes <= s against the current column approximation.

    Edge conditions are monotone in the argument, so the output is
    stage-monotone; the evaluator deduplicates re-emitted codes.
    """
    a = arg(args, 0)
    trim = param(params, 0)
    cur = ev.approx(a, s)
    out = []
    for x in range(s + 1):
        ev.tick()
        if _tree_edge(x, lambda n, k: pair(n, k) in cur, trim):
            out.append(x)
    return out


def _perm_of(m: int):
    """The candidate finite-support permutation coded by m, or None."""
    p = seq_decode(m)
    if sorted(p) != list(range(len(p))):
        return None
    return p


def _copies_point(x: int, edge_has, shift: int) -> bool:
    """Decode x as a point of the copies family.

    Odd columns 2t+1 enumerate the t-th marked finite set ({0} plus the
    set shifted up by one); even columns 2m hold the image of the input
    edge set under candidate permutation m (edge codes shifted by
    ``shift``; 1 is honest, keeping 0 free as the marker), or the marked
    empty set {0} when m is not a valid permutation code.
    """
    c, y = unpair(x)
    if c % 2 == 1:
        t = (c - 1) // 2
        return y == 0 or (y - 1) in set_decode(t)
    p = _perm_of(c // 2)
    if p is None:
        return y == 0
    if y < shift:
        return False
    u, v = unpair(y - shift)
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    pu = inv[u] if u < len(p) else u
    pv = inv[v] if v < len(p) else v
    return edge_has(pair(pu, pv))


def _step_perm_copies(ev, args, params, s, state):
    a = arg(args, 0)
    shift = param(params, 0, default=1)
    cur = ev.approx(a, s)
    out = []
    for x in range(s + 1):
        ev.tick()
        if _copies_point(x, lambda e: e in cur, shift):
            out.append(x)
    return out


def _step_level_columns(ev, args, params, s, state):
    """Column k of the output grows at exactly the stages where k lies
    in the running difference/union fold of the arguments."""
    shift = param(params, 0)
    cur = nce_stage_value(ev, args, s)
    out = []
    for k in cur:
        ev.tick()
        if k <= s:
            out.append(pair(k + shift, s))
    return out


def register_structures_combinators() -> None:
    from ..programs import COMBINATORS
    steps = {
        "star_edges": _step_star_edges,
        "membership_tree": _step_membership_tree,
        "perm_copies": _step_perm_copies,
        "level_columns": _step_level_columns,
    }
    for cid, step in steps.items():
        if cid not in COMBINATORS:
            register_combinator(cid, step)


# ---------------------------------------------------------------------------
# eqm_to_eq1: full-column images separate empty / full / proper


_EQ1_KEY = {
    "empty": (0, math.inf),
    "full": (math.inf, 0),
    "proper": (math.inf, math.inf),
}


def _eqm_predict(payload):
    return ClassKey("eq_1", _EQ1_KEY[many_one_key(analyze(payload))])


def _build_full_columns(cid: str = "expand_columns"):
    def build(payload, rng=None):
        term_a, settle_a, _ = compile_arg(payload, rng)
        image = ColumnsBySet(payload, FULL, EMPTY)
        return Built(Combinator(cid, (term_a,)),
                     lambda M: settle_a(M) + M + 1,
                     lambda x: member(image, x))
    return build


def _gen_pair_eqm(rng):
    """Pairs mixing the three many-one classes in varied presentations."""
    def one():
        roll = rng.random()
        if roll < 0.25:
            return rng.choice([
                EMPTY,
                Finite(frozenset()),
                Difference(Finite(frozenset({2})), Finite(frozenset({2}))),
            ])
        if roll < 0.5:
            return rng.choice([
                FULL,
                Cofinite(frozenset()),
                Union((FULL, Finite(frozenset({1})))),
            ])
        return random_ep_descriptor(rng, 20)
    return one(), one()


eqm_to_eq1 = register_reduction(Reduction(
    name="eqm_to_eq1", source="eq_m", target="eq_1",
    build=_build_full_columns(),
    predict=_eqm_predict,
    gen_case=_gen_pair_eqm,
    window=128,
    combinator="expand_columns",
    doc="many-one classes of decidable sets drop to cardinality classes"
        " via full-column images",
))
register_mutant("eqm_to_eq1", "transposed-pairs",
                _build_full_columns("expand_columns_swapped"))


def one_one_from_many_one(phi):
    """Turn a many-one reduction into an injective one, targeting the
    cylinder {<b, n> : b in B}: x -> <phi(x), x>."""
    return lambda x: pair(phi(x), x)


def many_one_from_one_one(psi):
    """An injective reduction is in particular a many-one reduction."""
    return psi


def cylinder_member(in_b):
    """Membership in the cylinder of B, the canonical one-one target."""
    return lambda z: in_b(unpair(z)[0])


# ---------------------------------------------------------------------------
# eq1_to_compiso: star graphs


def _star_member(payload):
    def mem(x):
        u, v = unpair(x)
        return u == 0 and v >= 1 and member(payload, v - 1)
    return mem


def _build_star(skip: int = 0):
    def build(payload, rng=None):
        term_a, settle_a, _ = compile_arg(payload, rng)
        return Built(Combinator("star_edges", (term_a,),
                                (skip,) if skip else ()),
                     lambda M: settle_a(M) + 1,
                     _star_member(payload))
    return build


eq1_to_compiso = register_reduction(Reduction(
    name="eq1_to_compiso", source="eq_1", target="compiso_bin",
    build=_build_star(),
    predict=lambda payload: ClassKey(
        "compiso_bin", one_equivalence_key(analyze(payload))),
    gen_case=gen_pair_1d,
    window=128,
    combinator="star_edges",
    doc="cardinality classes become computable-isomorphism classes of"
        " star graphs",
))
register_mutant("eq1_to_compiso", "dropped-leaf", _build_star(skip=1))


# ---------------------------------------------------------------------------
# eset_to_isobin: column families as membership trees


def _tree_member(payload):
    return lambda x: _tree_edge(
        x, lambda n, k: member(payload, pair(n, k)), 0)


def _build_membership_tree(trim: int = 0):
    def build(payload, rng=None):
        term_a, settle_a, _ = compile_arg(payload, rng)

        def settle(M):
            h = max((M - 2) // 2 + 1, 1)
            return max(M, settle_a(pair(h, h))) + 1

        return Built(Combinator("membership_tree", (term_a,),
                                (trim,) if trim else ()),
                     settle, _tree_member(payload))
    return build


eset_to_isobin = register_reduction(Reduction(
    name="eset_to_isobin", source="eset", target="iso_bin",
    build=_build_membership_tree(),
    predict=lambda payload: ClassKey(
        "iso_bin", ("membership-tree", column_family_key(payload))),
    gen_case=lambda rng: gen_pair_columns(rng, hi=6),
    window=24,
    combinator="membership_tree",
    doc="column families become trees: one branch per (column, copy),"
        " one depth-k chain per column element k",
))
register_mutant("eset_to_isobin", "short-chains", _build_membership_tree(1))


# ---------------------------------------------------------------------------
# compiso_to_eset: all permuted copies, padded by marked finite sets


def _edge_codes(payload) -> frozenset:
    if not isinstance(payload, Finite):
        raise ValueError("expected a finite edge-set payload")
    return payload.elems


def _copies_member(payload, shift: int = 1):
    edges = _edge_codes(payload)
    return lambda x: _copies_point(x, lambda e: e in edges, shift)


def _build_perm_copies(shift: int = 1):
    def build(payload, rng=None):
        term_a, settle_a, _ = compile_arg(payload, rng)
        emax = max(_edge_codes(payload), default=0)
        return Built(Combinator("perm_copies", (term_a,), (shift,)),
                     lambda M: max(M, settle_a(emax)) + 1,
                     _copies_member(payload, shift=1))
    return build


def _gen_pair_digraphs(rng):
    """Random digraphs on at most 3 vertices, with isomorphic-relabel
    and equal-presentation pairs mixed in."""
    def graph():
        n = rng.randrange(1, 4)
        edges = frozenset(
            pair(rng.randrange(n), rng.randrange(n))
            for _ in range(rng.randrange(4)))
        return Finite(edges)

    a = graph()
    roll = rng.random()
    if roll < 0.2:
        return a, a
    if roll < 0.45:
        verts = sorted({w for e in a.elems for w in unpair(e)})
        relabel = {v: i for i, v in enumerate(
            rng.sample(verts, len(verts)))} if verts else {}
        b = Finite(frozenset(
            pair(relabel[u], relabel[v])
            for u, v in (unpair(e) for e in a.elems)))
        return a, b
    return a, graph()


compiso_to_eset = register_reduction(Reduction(
    name="compiso_to_eset", source="compiso_bin", target="eset",
    build=_build_perm_copies(),
    predict=lambda payload: ClassKey(
        "eset", ("iso-copies", digraph_canonical(
            frozenset(unpair(e) for e in _edge_codes(payload))))),
    gen_case=_gen_pair_digraphs,
    window=128,
    combinator="perm_copies",
    doc="a graph maps to the family of all its finite-support permuted"
        " copies, hidden among the marked finite sets",
))
register_mutant("compiso_to_eset", "unmarked-copies", _build_perm_copies(0))


# ---------------------------------------------------------------------------
# the iterated difference/union ladder


def _compile_tuple(payload: NceTuple, rng):
    terms = []
    settles = []
    for d in payload.parts:
        term, settle, _ = compile_arg(d, rng)
        terms.append(term)
        settles.append(settle)
    return tuple(terms), lambda M: max(s(M) for s in settles) + 1


def gen_pair_nce(rng, hi: int = 25):
    """Pairs of difference/union tuples with a healthy verdict mix."""
    def tup():
        n = rng.randrange(1, 4)
        return NceTuple(tuple(
            random_ep_descriptor(rng, hi) for _ in range(n)))

    a = tup()
    roll = rng.random()
    if roll < 0.2:
        return a, NceTuple(tuple(repackage(rng, d, hi) for d in a.parts))
    if roll < 0.4:
        # padding with empty slots never changes the fold's value
        pad = (EMPTY,) * rng.randrange(1, 3)
        return a, NceTuple(a.parts + pad)
    return a, tup()


def _validate_nce_embed(ev, built, payload, window):
    issues = []
    limit = nce_value(payload.parts + (EMPTY,))
    s1 = built.settle(window)
    got = {x for x in nce_stage_value(ev, built.parts, s1) if x <= window}
    want = {x for x in range(window + 1) if limit.member(x)}
    if got != want:
        issues.append(f"fold window diff +{sorted(got - want)[:5]}"
                      f" -{sorted(want - got)[:5]}")
    later = {x for x in nce_stage_value(ev, built.parts, s1 + 20)
             if x <= window}
    if later != got:
        issues.append("fold value still moving after the settle bound")
    return issues


def _build_nce_embed(filler: Descriptor = EMPTY):
    def build(payload, rng=None):
        term_f, settle_f, _ = compile_arg(filler, rng)
        terms, settle = _compile_tuple(payload, rng)
        terms = terms + (term_f,)
        return Built(terms[0],
                     lambda M: max(settle(M), settle_f(M)) + 1,
                     None, parts=terms)
    return build


nce_embed = register_reduction(Reduction(
    name="nce_embed", source="eq_nce", target="eq_ltomega",
    build=_build_nce_embed(),
    predict=lambda payload: NceTuple(payload.parts + (EMPTY,)),
    gen_case=gen_pair_nce,
    window=64,
    validator=_validate_nce_embed,
    payload_kind="nce",
    combinator="",
    doc="a length-n difference/union tuple embeds into length n+1 by an"
        " empty slot",
))
register_mutant("nce_embed", "full-filler", _build_nce_embed(filler=FULL))


def _validate_level_columns(ev, built, payload, window):
    issues = []
    limit = nce_value(payload.parts)
    s1 = built.settle(window)
    span = 20
    first = ev.approx(built.term, s1)
    second = ev.approx(built.term, s1 + span)
    for k in range(window + 1):
        col1 = {t for t in range(s1 + span + 1) if pair(k, t) in first}
        col2 = {t for t in range(s1 + span + 1) if pair(k, t) in second}
        if limit.member(k):
            if len(col2) <= len(col1):
                issues.append(f"column {k} stopped growing despite limit"
                              " membership")
        else:
            if col2 != col1:
                issues.append(f"column {k} kept growing after its level"
                              " left the fold")
        if len(issues) >= 3:
            break
    return issues


def _build_level_columns(shift: int = 0):
    def build(payload, rng=None):
        terms, settle = _compile_tuple(payload, rng)
        return Built(Combinator("level_columns", terms,
                                (shift,) if shift else ()),
                     lambda M: settle(M) + M + 1,
                     None, parts=terms)
    return build


ltomega_to_e3 = register_reduction(Reduction(
    name="ltomega_to_e3", source="eq_ltomega", target="e3",
    build=_build_level_columns(),
    predict=lambda payload: ClassKey(
        "e3", ("level-set", nce_value(payload.parts))),
    gen_case=gen_pair_nce,
    window=24,
    validator=_validate_level_columns,
    payload_kind="nce",
    combinator="level_columns",
    doc="column k grows forever exactly when k stays in the limit of the"
        " difference/union fold",
))
register_mutant("ltomega_to_e3", "shifted-levels", _build_level_columns(1))


# ---------------------------------------------------------------------------
# eq_nat into E_min: singleton images


def _build_singleton(shift: int = 0):
    def build(a, rng=None):
        d = Finite(frozenset({a + shift}))
        term, settle, _ = compile_arg(d, rng)
        return Built(term, settle, lambda x: x == a + shift)
    return build


def _gen_pair_nat(rng):
    a = rng.randrange(30)
    if rng.random() < 0.4:
        return a, a
    return a, rng.randrange(30)


eqnat_to_emin = register_reduction(Reduction(
    name="eqnat_to_emin", source="eq_nat", target="e_min",
    build=_build_singleton(),
    predict=lambda a: Finite(frozenset({a})),
    gen_case=_gen_pair_nat,
    window=64,
    payload_kind="nat",
    combinator="",
    doc="equality of naturals realized by singleton minima",
))
register_mutant("eqnat_to_emin", "shifted-point", _build_singleton(1))


# ---------------------------------------------------------------------------
# families mirrored through a selector program


def family_columns(ev, family_terms, selector_term, stages: int):
    """Mirror selected family members into output columns.

    The k-th element to enter the selector (ordered by entry stage, then
    value) names the member mirrored in column k.  Returns the selection
    order and the mirrored columns at the final stage.
    """
    elems = ev.approx(selector_term, stages)
    order = sorted(elems,
                   key=lambda n: (ev.entry_stage(selector_term, n, stages), n))
    columns = {}
    for k, n in enumerate(order):
        if n < len(family_terms):
            columns[k] = set(ev.approx(family_terms[n], stages))
        else:
            columns[k] = set()
    return order, columns


def family_columns_permutation(order_a, order_b):
    """The column permutation aligning two runs over the same selector
    set, or None when the selections differ as sets."""
    if sorted(order_a) != sorted(order_b):
        return None
    pos_b = {n: j for j, n in enumerate(order_b)}
    return {k: pos_b[n] for k, n in enumerate(order_a)}
