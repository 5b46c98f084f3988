"""Exact deciders for the equivalence relations under study.

Every relation is registered with a decision procedure on *semantic
payloads*: usually descriptors (compared through their eventually
periodic analysis), sometimes richer objects produced by reduction
transforms (rational cuts, class keys, relation-indexed points).  The
deciders are ground truth: they either answer correctly or raise
``UnsupportedDescriptor``; they never guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import permutations
from typing import Callable, Optional

from .pairing import unpair
from .descriptors import (
    EP, BlockImage, Descriptor, Finite, Cofinite, Columns, ColumnsBySet,
    TailColumns, OverrideColumns, UnsupportedDescriptor, analyze,
    block_bounds, columns_view, ep_intersection, ep_symdiff, region_pairs,
)

# ---------------------------------------------------------------------------
# semantic payload objects


@dataclass(frozen=True)
class ClassKey:
    """A point given directly by its class invariant under a relation."""

    rid: str
    key: object


@dataclass(frozen=True)
class QCut:
    """The set of rational codes q with q < bound (an exact Fraction)."""

    bound: Fraction


@dataclass(frozen=True)
class UcePoint:
    """A point of the domain of a scripted equivalence relation.

    ``pairs`` is the finite generating set of related pairs; the relation
    is its reflexive-symmetric-transitive closure.
    """

    pairs: frozenset  # frozenset of (a, b)
    point: int


@dataclass(frozen=True)
class NceTuple:
    """An alternating difference/union combination of descriptors.

    Denotes ((d1 - d2) | d3) - d4 ... folding left to right.
    """

    parts: tuple  # tuple of Descriptor


# ---------------------------------------------------------------------------
# analysis-level helpers (EP | BlockImage)


def _sem(x):
    if isinstance(x, (EP, BlockImage)):
        return x
    return analyze(x)


def _size_class(a) -> str:
    """'fin' / 'cofin' / 'sym' (infinite and co-infinite)."""
    if isinstance(a, EP):
        return "fin" if a.is_finite else "cofin" if a.is_cofinite else "sym"
    if a.index.is_finite:
        return "fin"
    return "cofin" if a.index.is_cofinite else "sym"


def _counts(a) -> tuple:
    return (ana_card(a), ana_cocard(a))


def ana_eq(a, b) -> bool:
    if isinstance(a, EP) and isinstance(b, EP):
        return a == b
    if isinstance(a, BlockImage) and isinstance(b, BlockImage):
        if a.kind == b.kind:
            return a.index == b.index
        if _counts(a) != _counts(b):
            return False
        raise UnsupportedDescriptor("cross-kind block image comparison")
    ep, bi = (a, b) if isinstance(a, EP) else (b, a)
    if _size_class(bi) != "sym":
        # a finite or cofinite union reaches this path only past the
        # materialization cap, so counting separates it from any EP the
        # corpora can build
        if _counts(ep) != _counts(bi):
            return False
        raise UnsupportedDescriptor("block union beyond materialization cap")
    # an infinite, co-infinite block union has unbounded runs of both
    # members and gaps, so it is never eventually periodic
    return False


def ana_almost_eq(a, b) -> bool:
    """Finite symmetric difference.

    On this closed class the finite-weighted-difference and
    density-zero-difference relations coincide with it: any infinite
    block-level difference contributes a fixed positive weight and a
    fixed positive density per differing block, and any infinite EP
    difference is an arithmetic progression.
    """
    if isinstance(a, EP) and isinstance(b, EP):
        return ep_symdiff(a, b).is_finite
    if isinstance(a, BlockImage) and isinstance(b, BlockImage):
        if a.kind == b.kind:
            return ep_symdiff(a.index, b.index).is_finite
        sa, sb = _size_class(a), _size_class(b)
        if sa == sb == "sym":
            raise UnsupportedDescriptor("cross-kind block image comparison")
        # two finite sets, or two cofinite sets, always differ finitely;
        # any other mix differs on an infinite set
        return sa == sb
    ep, bi = (a, b) if isinstance(a, EP) else (b, a)
    sb = _size_class(bi)
    if sb != "sym":
        return sb == _size_class(ep)
    # the symmetric difference hits a positive fraction of infinitely
    # many blocks whatever the EP density, so it is infinite
    return False


def ana_is_finite(a) -> bool:
    return a.is_finite if isinstance(a, EP) else a.index.is_finite


def ana_is_empty(a) -> bool:
    return a.is_empty if isinstance(a, EP) else a.index.is_empty


def ana_min(a) -> Optional[int]:
    if isinstance(a, EP):
        return a.min()
    n = a.index.min()
    return None if n is None else block_bounds(a.kind, n)[0]


def ana_max(a) -> Optional[int]:
    if isinstance(a, EP):
        return a.max()
    if not a.index.is_finite:
        raise UnsupportedDescriptor("max of infinite set")
    n = a.index.max()
    return None if n is None else block_bounds(a.kind, n)[1] - 1


def ana_card(a):
    if isinstance(a, EP):
        return a.cardinality()
    if not a.index.is_finite:
        return math.inf
    return sum(
        hi - lo
        for n in a.index.elements()
        for lo, hi in [block_bounds(a.kind, n)]
    )


def ana_cocard(a):
    if isinstance(a, EP):
        return a.complement().cardinality()
    if a.index.is_cofinite:
        extra = 1 if a.kind == "dyadic" else 0  # dyadic blocks miss 0
        return extra + sum(
            hi - lo
            for n in a.index.complement().elements()
            for lo, hi in [block_bounds(a.kind, n)]
        )
    # otherwise the image misses infinitely many whole blocks
    return math.inf


# ---------------------------------------------------------------------------
# per-relation keys on 1-D payloads


def sup_key(a):
    """Order type of the strict cut below the set, as a count."""
    if ana_is_empty(a):
        return 0
    if not ana_is_finite(a):
        return math.inf
    return ana_max(a)


def hull_key(a):
    if ana_is_empty(a):
        return ("empty",)
    if ana_is_finite(a):
        return ("fin", ana_min(a), ana_max(a))
    return ("inf", ana_min(a))


def min_key(a):
    m = ana_min(a)
    return ("empty",) if m is None else ("min", m)


def max_key(a):
    if ana_is_empty(a):
        return ("empty",)
    if not ana_is_finite(a):
        return ("inf",)
    return ("max", ana_max(a))


def med_key(a):
    if not isinstance(a, EP):
        raise UnsupportedDescriptor("median needs an EP analysis")
    return a.median_key()


def gcd_key(a):
    if not isinstance(a, EP):
        raise UnsupportedDescriptor("gcd needs an EP analysis")
    return a.gcd_value()


def lcm_key(a):
    if not isinstance(a, EP):
        raise UnsupportedDescriptor("lcm needs an EP analysis")
    return a.lcm_value()


def one_equivalence_key(a):
    return (ana_card(a), ana_cocard(a))


def many_one_key(a):
    if isinstance(a, EP):
        if a.is_empty:
            return "empty"
        if a.is_full:
            return "full"
    return "proper"


def set_identity_key(a):
    """A canonical token for extensional equality of a 1-D payload."""
    if isinstance(a, EP):
        return a
    return ("blocks", a.kind, a.index)


# ---------------------------------------------------------------------------
# column-structured relations


def _columnish(d) -> bool:
    return isinstance(d, (Columns, ColumnsBySet, TailColumns,
                          OverrideColumns))


def columns_equal(a, b) -> bool:
    """Extensional equality of column-structured payloads."""
    if isinstance(a, TailColumns) and isinstance(b, TailColumns):
        return ana_eq(analyze(a.base), analyze(b.base))
    if isinstance(a, TailColumns) or isinstance(b, TailColumns):
        raise UnsupportedDescriptor("mixed tail/constant column shapes")
    for region, ca, cb in region_pairs(columns_view(a), columns_view(b)):
        if not ana_eq(analyze(ca), analyze(cb)):
            return False
    return True


def columns_symdiff_finite(a, b) -> bool:
    """Finite symmetric difference of column-structured payloads.

    Finitely many columns may differ, each by a finite set; on any
    region with infinitely many columns the columns must agree exactly.
    """
    if isinstance(a, TailColumns) and isinstance(b, TailColumns):
        # the total difference is sum over x in base diff of (x+1)
        return ana_almost_eq(analyze(a.base), analyze(b.base))
    if isinstance(a, TailColumns) or isinstance(b, TailColumns):
        raise UnsupportedDescriptor("mixed tail/constant column shapes")
    for region, ca, cb in region_pairs(columns_view(a), columns_view(b)):
        if region.is_finite:
            if not ana_almost_eq(analyze(ca), analyze(cb)):
                return False
        else:
            if not ana_eq(analyze(ca), analyze(cb)):
                return False
    return True


def _tailcolumns_pair(a: Descriptor, b: Descriptor):
    if isinstance(a, TailColumns) and isinstance(b, TailColumns):
        return analyze(a.base), analyze(b.base)
    return None


def decide_almost_all_columns_equal(a, b) -> bool:
    """All but finitely many columns extensionally equal."""
    tails = _tailcolumns_pair(a, b)
    if tails is not None:
        # column c is base minus [0, c); tails agree from some column on
        # exactly when the bases have finite symmetric difference
        return ana_almost_eq(*tails)
    if isinstance(a, TailColumns) or isinstance(b, TailColumns):
        tc, other = (a, b) if isinstance(a, TailColumns) else (b, a)
        base = analyze(tc.base)
        view = columns_view(other)
        if not isinstance(base, EP):
            raise UnsupportedDescriptor("tail base must be EP")
        if not base.is_finite:
            # the tails base-minus-[0,c) are pairwise distinct, so they
            # match any fixed column family only finitely often
            return False
        # beyond max(base) every tail column is empty
        for region, col in view.regions:
            if not region.is_finite and not ana_is_empty(analyze(col)):
                return False
        return True
    va, vb = columns_view(a), columns_view(b)
    for region, ca, cb in region_pairs(va, vb):
        if region.is_finite:
            continue
        if not ana_eq(analyze(ca), analyze(cb)):
            return False
    return True


def decide_all_columns_almost_equal(a, b) -> bool:
    """Every column pair has finite symmetric difference."""
    tails = _tailcolumns_pair(a, b)
    if tails is not None:
        # (A - [0,c)) vs (B - [0,c)) differ finitely for every c exactly
        # when A and B differ finitely
        return ana_almost_eq(*tails)
    if isinstance(a, TailColumns) or isinstance(b, TailColumns):
        raise UnsupportedDescriptor("mixed tail/constant column shapes")
    va, vb = columns_view(a), columns_view(b)
    for region, ca, cb in region_pairs(va, vb):
        if not ana_almost_eq(analyze(ca), analyze(cb)):
            return False
    return True


def columnwise_key(d, colkey) -> frozenset:
    """Canonical form of the map column-index -> colkey(column).

    Regions with the same column invariant are merged, so the key does
    not depend on how the payload happens to be presented.
    """
    from .descriptors import ep_union
    buckets: dict = {}
    for region, col in columns_view(d).regions:
        if region.is_empty:
            continue
        k = colkey(analyze(col))
        buckets[k] = (region if k not in buckets
                      else ep_union(buckets[k], region))
    return frozenset(buckets.items())


def column_family_key(a) -> frozenset:
    """The set of distinct columns occurring in a column payload."""
    view = columns_view(a)
    keys = set()
    for region, col in view.regions:
        if not region.is_empty:
            keys.add(set_identity_key(analyze(col)))
    return frozenset(keys)


# ---------------------------------------------------------------------------
# finite binary structures


def digraph_canonical(edges) -> tuple:
    """Canonical form of a finite digraph up to vertex renaming.

    Vertices are the endpoints of the given edges; the canonical form is
    the lexicographically least relabeled edge tuple.  Brute force over
    vertex bijections -- payloads stay small by corpus design.
    """
    verts = sorted({v for e in edges for v in e})
    if len(verts) > 8:
        raise UnsupportedDescriptor("digraph too large for brute force")
    best = None
    for perm in permutations(range(len(verts))):
        relabel = dict(zip(verts, perm))
        cand = tuple(sorted((relabel[u], relabel[v]) for u, v in edges))
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def _edges_of(payload) -> frozenset:
    if isinstance(payload, Finite):
        return frozenset(unpair(x) for x in payload.elems)
    raise UnsupportedDescriptor("expected a finite edge-set payload")


# ---------------------------------------------------------------------------
# tuples of descriptors (iterated difference/union)


def nce_value(parts) -> EP:
    """((d1 - d2) | d3) - d4 ..., as an EP analysis."""
    from .descriptors import ep_union, ep_difference
    acc = EP.from_finite(())
    for i, d in enumerate(parts, start=1):
        ana = analyze(d) if not isinstance(d, EP) else d
        if not isinstance(ana, EP):
            raise UnsupportedDescriptor("tuple parts must be EP")
        if i == 1:
            acc = ana
        elif i % 2 == 0:
            acc = ep_difference(acc, ana)
        else:
            acc = ep_union(acc, ana)
    return acc


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Relation:
    rid: str
    decide: Optional[Callable]  # (payload, payload) -> bool, or None
    level: str = ""
    doc: str = ""


RELATIONS: dict = {}


def register_relation(rid: str, decide, level: str = "", doc: str = "") -> None:
    if rid in RELATIONS:
        raise ValueError(f"relation {rid!r} already registered")
    RELATIONS[rid] = Relation(rid, decide, level, doc)


def decide(rid: str, a, b) -> bool:
    rel = RELATIONS.get(rid)
    if rel is None or rel.decide is None:
        raise KeyError(f"no decider for relation {rid!r}")
    if isinstance(a, ClassKey) or isinstance(b, ClassKey):
        if not (isinstance(a, ClassKey) and isinstance(b, ClassKey)
                and a.rid == rel.rid == b.rid):
            raise UnsupportedDescriptor("mismatched class-key payloads")
        return a.key == b.key
    return rel.decide(a, b)


def _keyed(keyfn):
    return lambda a, b: keyfn(_sem(a)) == keyfn(_sem(b))


def _decide_eq_ce(a, b):
    if isinstance(a, QCut) and isinstance(b, QCut):
        return a.bound == b.bound
    if _columnish(a) or _columnish(b):
        return columns_equal(a, b)
    return ana_eq(_sem(a), _sem(b))


def _decide_e0(a, b):
    if _columnish(a) or _columnish(b):
        return columns_symdiff_finite(a, b)
    return ana_almost_eq(_sem(a), _sem(b))


def _decide_iso(a, b):
    return digraph_canonical(_edges_of(a)) == digraph_canonical(_edges_of(b))


def _decide_uce(a, b):
    if not (isinstance(a, UcePoint) and isinstance(b, UcePoint)):
        raise UnsupportedDescriptor("expected scripted-relation points")
    if a.pairs != b.pairs:
        raise UnsupportedDescriptor("points of different scripted relations")
    if a.point == b.point:
        return True
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in a.pairs:
        parent[find(u)] = find(v)
    return find(a.point) == find(b.point)


def _decide_tuple_eq(a, b):
    pa = a.parts if isinstance(a, NceTuple) else a
    pb = b.parts if isinstance(b, NceTuple) else b
    return nce_value(pa) == nce_value(pb)


register_relation(
    "eq_ce", _decide_eq_ce, level="Pi-0-2-complete",
    doc="extensional equality of enumerated sets",
)
register_relation(
    "e0", _decide_e0,
    level="Sigma-0-3-complete", doc="finite symmetric difference",
)
register_relation(
    "e1", decide_almost_all_columns_equal, level="Pi-0-3",
    doc="all but finitely many columns equal",
)
register_relation(
    "e2", lambda a, b: ana_almost_eq(_sem(a), _sem(b)), level="Sigma-0-3",
    doc="symmetric difference of finite harmonic weight",
)
register_relation(
    "e3", decide_all_columns_almost_equal, level="Pi-0-4",
    doc="every column pair almost equal",
)
register_relation(
    "eset", lambda a, b: column_family_key(a) == column_family_key(b),
    level="Pi-0-3-complete", doc="equality of enumerated column families",
)
register_relation(
    "z0", lambda a, b: ana_almost_eq(_sem(a), _sem(b)), level="Pi-0-3",
    doc="symmetric difference of vanishing density",
)
register_relation("e_min", _keyed(min_key), level="Delta-0-2",
                  doc="equal minima (or both empty)")
register_relation("e_max", _keyed(max_key), level="Pi-0-2-complete",
                  doc="equal maxima (both empty / both unbounded)")
register_relation("e_med", _keyed(med_key),
                  doc="equal medians of finite nonempty sets")
register_relation("e_gcd", _keyed(gcd_key),
                  doc="equal gcd of all elements (infinite for subsets of {0})")
register_relation("e_lcm", _keyed(lcm_key),
                  doc="equal lcm of the positive elements")
register_relation("el_omega", _keyed(sup_key),
                  doc="equal cuts induced in the order omega")
register_relation("h_omega", _keyed(hull_key),
                  doc="equal convex hulls in the order omega")
register_relation("eq_nat", lambda a, b: a == b, doc="equality of naturals")
register_relation("uce", _decide_uce,
                  doc="closure of a scripted relation on naturals")
register_relation("eq_1", _keyed(one_equivalence_key),
                  level="Sigma-0-3-complete",
                  doc="matching cardinality and co-cardinality")
register_relation("eq_m", _keyed(many_one_key), level="Sigma-0-3-complete",
                  doc="many-one interreducibility of decidable sets")
register_relation("eq_T", lambda a, b: True, level="Sigma-0-3-complete",
                  doc="Turing interreducibility of decidable sets")
register_relation("iso_bin", _decide_iso, level="Sigma-1-1-complete",
                  doc="isomorphism of binary structures")
register_relation("compiso_bin", _decide_iso, level="Sigma-0-3",
                  doc="computable isomorphism of binary structures")
register_relation("eq_nce", _decide_tuple_eq, level="Pi-0-2",
                  doc="equality of iterated difference/union combinations")
register_relation("eq_ltomega", _decide_tuple_eq,
                  doc="equality across all finite difference levels")
register_relation("ufomega", None,
                  doc="orbit relation of a free group action (node only)")
register_relation("egamma", None,
                  doc="orbit relation of a finite group action (node only)")


def stage_classify(rid: str, approx_a: frozenset, approx_b: frozenset) -> bool:
    """The relation applied to two finite stage approximations.

    Meaningful for relations whose verdict on finite sets is the
    limiting verdict once both programs have settled.
    """
    return decide(rid, Finite(approx_a), Finite(approx_b))
