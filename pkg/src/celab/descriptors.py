"""Closed-form set descriptors: the ground-truth side of every check.

A Descriptor denotes a subset of the naturals.  Membership is decidable
in finite time, every descriptor compiles to a stage-monotone program
with a known settlement stage, and the relations module decides
equivalence relations on descriptors exactly.

The workhorse is the *eventually periodic* analysis ``EP``: the class of
Finite/Cofinite/Progression descriptors is closed under union and
difference and supports exact minima, cardinalities, densities, gcd/lcm
and symmetric-difference reasoning.  The two block-image shapes
(``DyadicBlocks``/``WeightBlocks``) fall outside EP when their index set
is infinite and co-infinite; for those, same-shape comparisons reduce to
the index level and anything else raises ``UnsupportedDescriptor``
(which signals a corpus bug, never a guess).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Tuple, Union as TUnion

from .pairing import pair, unpair, seq_encode, seq_decode

# Block shapes whose total extent exceeds this are kept symbolic.
MATERIALIZE_CAP = 1 << 16


class UnsupportedDescriptor(Exception):
    """No closed form applies; the corpus should never trigger this."""


# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class Finite:
    elems: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elems", frozenset(self.elems))


@dataclass(frozen=True)
class Cofinite:
    excluded: frozenset

    def __post_init__(self):
        object.__setattr__(self, "excluded", frozenset(self.excluded))


@dataclass(frozen=True)
class Progression:
    start: int
    step: int  # >= 1


@dataclass(frozen=True)
class Union:
    parts: tuple


@dataclass(frozen=True)
class Difference:
    left: "Descriptor"
    right: "Descriptor"


@dataclass(frozen=True)
class DyadicBlocks:
    """Union of the dyadic intervals [2^n, 2^(n+1)) over n in the index set."""

    index: "Descriptor"


@dataclass(frozen=True)
class WeightBlocks:
    """Union of consecutive blocks I_n with sum of 1/(i+1) >= 1 each."""

    index: "Descriptor"


@dataclass(frozen=True)
class Columns:
    """A set of pair codes: finitely many explicit columns plus a default."""

    cols: tuple  # sorted tuple of (column, Descriptor)
    default: "Descriptor"


@dataclass(frozen=True)
class ColumnsBySet:
    """Column c is `incol` when c lies in the index set, else `outcol`."""

    index: "Descriptor"
    incol: "Descriptor"
    outcol: "Descriptor"


@dataclass(frozen=True)
class TailColumns:
    """Column x is base minus {0, ..., x-1}."""

    base: "Descriptor"


@dataclass(frozen=True)
class OverrideColumns:
    """Finitely many explicit columns on top of a column-shaped base."""

    cols: tuple  # sorted tuple of (column, Descriptor)
    base: "Descriptor"


Descriptor = TUnion[
    Finite, Cofinite, Progression, Union, Difference,
    DyadicBlocks, WeightBlocks, Columns, ColumnsBySet, TailColumns,
    OverrideColumns,
]

EMPTY = Finite(frozenset())
FULL = Cofinite(frozenset())


def finite(*elems) -> Finite:
    return Finite(frozenset(elems))


def columns(colmap: dict, default: Descriptor = EMPTY) -> Columns:
    return Columns(tuple(sorted(colmap.items())), default)


# ---------------------------------------------------------------------------
# eventually periodic analysis


@dataclass(frozen=True)
class EP:
    """x < threshold: x in head; x >= threshold: x % period in residues."""

    threshold: int
    period: int
    head: frozenset
    residues: frozenset  # absolute residues mod period

    # -- construction --------------------------------------------------

    @staticmethod
    def make(threshold: int, period: int, head, residues) -> "EP":
        head = frozenset(head)
        residues = frozenset(residues)
        # minimal period
        for q in sorted(_divisors(period)):
            classes = frozenset(r % q for r in residues)
            if frozenset(
                r for r in range(period) if r % q in classes
            ) == residues:
                period, residues = q, classes
                break
        # minimal threshold
        t = threshold
        head = frozenset(x for x in head if x < t)
        while t > 0 and ((t - 1) in head) == ((t - 1) % period in residues):
            head = head - {t - 1}
            t -= 1
        return EP(t, period, head, residues)

    @staticmethod
    def from_finite(elems) -> "EP":
        elems = frozenset(elems)
        t = max(elems) + 1 if elems else 0
        return EP.make(t, 1, elems, frozenset())

    @staticmethod
    def from_cofinite(excluded) -> "EP":
        excluded = frozenset(excluded)
        t = max(excluded) + 1 if excluded else 0
        head = frozenset(x for x in range(t) if x not in excluded)
        return EP.make(t, 1, head, {0})

    @staticmethod
    def from_progression(start: int, step: int) -> "EP":
        return EP.make(start, step, frozenset(), {start % step})

    # -- membership & basic data ---------------------------------------

    def member(self, x: int) -> bool:
        if x < self.threshold:
            return x in self.head
        return x % self.period in self.residues

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_empty(self) -> bool:
        return self.is_finite and not self.head

    @property
    def is_full(self) -> bool:
        return self.threshold == 0 and len(self.residues) == self.period

    def complement(self) -> "EP":
        return ep_combine(ep_full(), self, lambda a, b: a and not b)

    @property
    def is_cofinite(self) -> bool:
        return self.complement().is_finite

    def elements(self) -> frozenset:
        if not self.is_finite:
            raise UnsupportedDescriptor("infinite set has no element list")
        return self.head

    def elements_upto(self, n: int) -> list:
        return [x for x in range(n + 1) if self.member(x)]

    def cardinality(self):
        return len(self.head) if self.is_finite else math.inf

    def min(self) -> Optional[int]:
        if self.head:
            small = min(self.head)
        else:
            small = None
        if self.residues:
            first = min(
                _first_at_least(self.threshold, r, self.period)
                for r in self.residues
            )
            if small is None or first < small:
                # all head elements are < threshold <= first
                small = small if small is not None else first
                small = min(small, first)
        return small

    def max(self) -> Optional[int]:
        if not self.is_finite:
            raise UnsupportedDescriptor("max of infinite set")
        return max(self.head) if self.head else None

    def density(self) -> Fraction:
        return Fraction(len(self.residues), self.period)

    def gcd_value(self):
        """gcd of all elements; infinity for sets within {0} (or empty)."""
        g = 0
        for x in self.head:
            g = math.gcd(g, x)
        for r in self.residues:
            a = _first_at_least(self.threshold, r, self.period)
            g = math.gcd(g, math.gcd(a, self.period))
        return math.inf if g == 0 else g

    def lcm_value(self):
        """lcm of the positive elements; 1 if none; infinity if unbounded."""
        if not self.is_finite:
            return math.inf
        l = 1
        for x in self.head:
            if x > 0:
                l = l * x // math.gcd(l, x)
        return l

    def median_key(self):
        """('empty',) | ('inf',) | ('med', Fraction midpoint)."""
        if self.is_empty:
            return ("empty",)
        if not self.is_finite:
            return ("inf",)
        xs = sorted(self.head)
        n = len(xs)
        mid = Fraction(xs[(n - 1) // 2] + xs[n // 2], 2)
        return ("med", mid)

    def e0_key(self):
        """Canonical invariant of the almost-equality class."""
        if self.is_finite:
            return ("fin",)
        p, res = self.period, self.residues
        for q in sorted(_divisors(p)):
            classes = frozenset(r % q for r in res)
            if frozenset(r for r in range(p) if r % q in classes) == res:
                return ("inf", q, classes)
        raise AssertionError("unreachable")

    def triadic_sum(self) -> Fraction:
        """Exact sum of 3^-(n+1) over the set."""
        total = Fraction(0)
        for x in self.head:
            total += Fraction(1, 3 ** (x + 1))
        for r in self.residues:
            a = _first_at_least(self.threshold, r, self.period)
            p = self.period
            total += Fraction(3 ** p, (3 ** p - 1)) * Fraction(1, 3 ** (a + 1))
        return total


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def _first_at_least(t: int, r: int, p: int) -> int:
    """Least x >= t with x % p == r."""
    delta = (r - t) % p
    return t + delta


def ep_full() -> EP:
    return EP.make(0, 1, frozenset(), {0})


def ep_combine(a: EP, b: EP, op) -> EP:
    t = max(a.threshold, b.threshold)
    p = a.period * b.period // math.gcd(a.period, b.period)
    head = frozenset(x for x in range(t) if op(a.member(x), b.member(x)))
    residues = frozenset(
        (t + i) % p
        for i in range(p)
        if op(a.member(t + i), b.member(t + i))
    )
    # residues above are sampled just past the threshold, which is sound
    # because both arguments are purely periodic from t on.
    return EP.make(t, p, head, residues)


def ep_union(a, b):
    return ep_combine(a, b, lambda x, y: x or y)


def ep_difference(a, b):
    return ep_combine(a, b, lambda x, y: x and not y)


def ep_intersection(a, b):
    return ep_combine(a, b, lambda x, y: x and y)


def ep_symdiff(a, b):
    return ep_combine(a, b, lambda x, y: x != y)


# ---------------------------------------------------------------------------
# block images


_GREEDY_CAP = 10
_greedy_bounds = [0]


def _greedy_boundary(n: int) -> int:
    """Left endpoint of the n-th greedy harmonic block (n <= cap)."""
    while len(_greedy_bounds) <= n:
        total = 0.0
        hi = _greedy_bounds[-1]
        while total < 1.0:
            total += 1.0 / (hi + 1)
            hi += 1
        _greedy_bounds.append(hi)
    return _greedy_bounds[n]


def weight_block(n: int) -> Tuple[int, int]:
    """The n-th block of a fixed partition of the naturals into
    consecutive intervals, each of harmonic weight >= 1.

    The first blocks are greedy: each ends as soon as the sum of
    1/(i+1) over it reaches 1 ([0,1), [1,4), [4,13), ...).  Beyond a
    fixed prefix the partition continues by tripling, so block bounds
    for arbitrarily large indices stay cheap to compute; the sum of
    1/(i+1) over such a block is at least ln 3 > 1, so every block
    still carries at least unit weight.
    """
    if n < _GREEDY_CAP:
        return _greedy_boundary(n), _greedy_boundary(n + 1)
    base = _greedy_boundary(_GREEDY_CAP) + 1
    lo = base * 3 ** (n - _GREEDY_CAP) - 1
    hi = base * 3 ** (n + 1 - _GREEDY_CAP) - 1
    return lo, hi


def dyadic_block(n: int) -> Tuple[int, int]:
    return (1 << n, 1 << (n + 1))


def block_bounds(kind: str, n: int) -> Tuple[int, int]:
    return dyadic_block(n) if kind == "dyadic" else weight_block(n)


def block_of(kind: str, x: int) -> Optional[int]:
    """Index n with x in the n-th block, or None (dyadic blocks miss 0)."""
    if kind == "dyadic":
        return None if x == 0 else x.bit_length() - 1
    n = 0
    while weight_block(n)[1] <= x:
        n += 1
    return n


@dataclass(frozen=True)
class BlockImage:
    kind: str  # 'dyadic' | 'weight'
    index: EP

    def member(self, x: int) -> bool:
        n = block_of(self.kind, x)
        return n is not None and self.index.member(n)


Analysis = TUnion[EP, BlockImage]


# ---------------------------------------------------------------------------
# analysis of 1-D descriptors


def analyze(d: Descriptor) -> Analysis:
    out = _ANALYSIS_CACHE.get(d)
    if out is None:
        out = _analyze(d)
        _ANALYSIS_CACHE[d] = out
    return out


_ANALYSIS_CACHE: dict = {}


def _materialize_blocks(kind: str, index: EP) -> Optional[EP]:
    if index.is_finite:
        elems = index.elements()
        if not elems:
            return EP.from_finite(())
        hi = block_bounds(kind, max(elems))[1]
        if hi <= MATERIALIZE_CAP:
            out = set()
            for n in elems:
                lo, h = block_bounds(kind, n)
                out.update(range(lo, h))
            return EP.from_finite(out)
        return None
    comp = index.complement()
    if comp.is_finite:
        missing = comp.elements()
        hi = max(
            (block_bounds(kind, n)[1] for n in missing), default=1
        )
        if hi <= MATERIALIZE_CAP:
            excluded = set()
            if kind == "dyadic":
                excluded.add(0)  # dyadic blocks never cover 0
            for n in missing:
                lo, h = block_bounds(kind, n)
                excluded.update(range(lo, h))
            return EP.from_cofinite(excluded)
    return None


def _blocks_analysis(kind: str, d: Descriptor) -> Analysis:
    index = analyze(d)
    if not isinstance(index, EP):
        raise UnsupportedDescriptor("block index must be EP-analyzable")
    mat = _materialize_blocks(kind, index)
    return mat if mat is not None else BlockImage(kind, index)


def _analyze(d: Descriptor) -> Analysis:
    if isinstance(d, Finite):
        return EP.from_finite(d.elems)
    if isinstance(d, Cofinite):
        return EP.from_cofinite(d.excluded)
    if isinstance(d, Progression):
        if d.step < 1:
            raise UnsupportedDescriptor("progression step must be >= 1")
        return EP.from_progression(d.start, d.step)
    if isinstance(d, Union):
        parts = [analyze(p) for p in d.parts]
        if not parts:
            return EP.from_finite(())
        return reduce(_binary_union, parts)
    if isinstance(d, Difference):
        return _binary_difference(analyze(d.left), analyze(d.right))
    if isinstance(d, DyadicBlocks):
        return _blocks_analysis("dyadic", d.index)
    if isinstance(d, WeightBlocks):
        return _blocks_analysis("weight", d.index)
    raise UnsupportedDescriptor(f"not a 1-D descriptor: {type(d).__name__}")


def _binary_union(a: Analysis, b: Analysis) -> Analysis:
    if isinstance(a, EP) and isinstance(b, EP):
        return ep_union(a, b)
    if (isinstance(a, BlockImage) and isinstance(b, BlockImage)
            and a.kind == b.kind):
        # blocks are disjoint per index, so the union acts indexwise
        return BlockImage(a.kind, ep_union(a.index, b.index))
    raise UnsupportedDescriptor("union outside the closed class")


def _binary_difference(a: Analysis, b: Analysis) -> Analysis:
    if isinstance(a, EP) and isinstance(b, EP):
        return ep_difference(a, b)
    if (isinstance(a, BlockImage) and isinstance(b, BlockImage)
            and a.kind == b.kind):
        return BlockImage(a.kind, ep_difference(a.index, b.index))
    raise UnsupportedDescriptor("difference outside the closed class")


# ---------------------------------------------------------------------------
# membership


def member(d: Descriptor, x: int) -> bool:
    if isinstance(d, Finite):
        return x in d.elems
    if isinstance(d, Cofinite):
        return x not in d.excluded
    if isinstance(d, Progression):
        return x >= d.start and (x - d.start) % d.step == 0
    if isinstance(d, Union):
        return any(member(p, x) for p in d.parts)
    if isinstance(d, Difference):
        return member(d.left, x) and not member(d.right, x)
    if isinstance(d, (DyadicBlocks, WeightBlocks)):
        kind = "dyadic" if isinstance(d, DyadicBlocks) else "weight"
        n = block_of(kind, x)
        return n is not None and member(d.index, n)
    if isinstance(d, Columns):
        c, k = unpair(x)
        for cc, cd in d.cols:
            if cc == c:
                return member(cd, k)
        return member(d.default, k)
    if isinstance(d, ColumnsBySet):
        c, k = unpair(x)
        return member(d.incol if member(d.index, c) else d.outcol, k)
    if isinstance(d, TailColumns):
        c, k = unpair(x)
        return k >= c and member(d.base, k)
    if isinstance(d, OverrideColumns):
        c, k = unpair(x)
        for cc, cd in d.cols:
            if cc == c:
                return member(cd, k)
        return member(d.base, x)
    raise UnsupportedDescriptor(f"not a descriptor: {d!r}")


def column_descriptor(d: Descriptor, c: int) -> Descriptor:
    """The c-th column of a column-shaped (or finite) descriptor."""
    if isinstance(d, Columns):
        for cc, cd in d.cols:
            if cc == c:
                return cd
        return d.default
    if isinstance(d, ColumnsBySet):
        return d.incol if member(d.index, c) else d.outcol
    if isinstance(d, TailColumns):
        return Difference(d.base, Finite(frozenset(range(c))))
    if isinstance(d, Finite):
        return Finite(frozenset(k for x in d.elems
                                for cc, k in [unpair(x)] if cc == c))
    if isinstance(d, OverrideColumns):
        for cc, cd in d.cols:
            if cc == c:
                return cd
        return column_descriptor(d.base, c)
    raise UnsupportedDescriptor("no column structure")


# ---------------------------------------------------------------------------
# column views (for E_1 / E_3 / E_set reasoning)


@dataclass
class ColumnsView:
    """A partition of the column indices into EP regions with one
    column descriptor per region."""

    regions: list  # list of (EP, Descriptor); the EPs partition N


def columns_view(d: Descriptor) -> ColumnsView:
    if isinstance(d, Columns):
        regions = []
        taken = set()
        for c, cd in d.cols:
            regions.append((EP.from_finite({c}), cd))
            taken.add(c)
        regions.append((EP.from_cofinite(taken), d.default))
        return ColumnsView(regions)
    if isinstance(d, ColumnsBySet):
        ix = analyze(d.index)
        if not isinstance(ix, EP):
            raise UnsupportedDescriptor("column index set must be EP")
        return ColumnsView([(ix, d.incol), (ix.complement(), d.outcol)])
    if isinstance(d, Finite):
        from .programs import columns_of
        cols = columns_of(d.elems)
        regions = [(EP.from_finite({c}), Finite(v))
                   for c, v in sorted(cols.items())]
        regions.append((EP.from_cofinite(cols.keys()), EMPTY))
        return ColumnsView(regions)
    if isinstance(d, OverrideColumns):
        base = columns_view(d.base)
        taken = EP.from_finite(frozenset(c for c, _ in d.cols))
        regions = [(EP.from_finite({c}), cd) for c, cd in d.cols]
        for region, col in base.regions:
            rest = ep_difference(region, taken)
            if not rest.is_empty:
                regions.append((rest, col))
        return ColumnsView(regions)
    raise UnsupportedDescriptor(
        f"no column view for {type(d).__name__}"
    )


def region_pairs(va: ColumnsView, vb: ColumnsView):
    """All (region, colA, colB) with nonempty region intersection."""
    for ra, ca in va.regions:
        for rb, cb in vb.regions:
            meet = ep_intersection(ra, rb)
            if not meet.is_empty:
                yield meet, ca, cb


# ---------------------------------------------------------------------------
# descriptor <-> natural codec (used for compiled-program parameters)

_TAGS = {
    Finite: 0, Cofinite: 1, Progression: 2, Union: 3, Difference: 4,
    DyadicBlocks: 5, WeightBlocks: 6, Columns: 7, ColumnsBySet: 8,
    TailColumns: 9, OverrideColumns: 10,
}
_NTAGS = 11


def encode_descriptor(d: Descriptor) -> int:
    if isinstance(d, (Finite, Cofinite)):
        elems = d.elems if isinstance(d, Finite) else d.excluded
        payload = seq_encode(tuple(sorted(elems)))
    elif isinstance(d, Progression):
        payload = pair(d.start, d.step - 1)
    elif isinstance(d, Union):
        payload = seq_encode(tuple(encode_descriptor(p) for p in d.parts))
    elif isinstance(d, Difference):
        payload = pair(encode_descriptor(d.left), encode_descriptor(d.right))
    elif isinstance(d, (DyadicBlocks, WeightBlocks)):
        payload = encode_descriptor(d.index)
    elif isinstance(d, Columns):
        flat = []
        for c, cd in d.cols:
            flat.extend((c, encode_descriptor(cd)))
        payload = pair(seq_encode(tuple(flat)), encode_descriptor(d.default))
    elif isinstance(d, ColumnsBySet):
        payload = pair(encode_descriptor(d.index),
                       pair(encode_descriptor(d.incol),
                            encode_descriptor(d.outcol)))
    elif isinstance(d, TailColumns):
        payload = encode_descriptor(d.base)
    elif isinstance(d, OverrideColumns):
        flat = []
        for c, cd in d.cols:
            flat.extend((c, encode_descriptor(cd)))
        payload = pair(seq_encode(tuple(flat)), encode_descriptor(d.base))
    else:
        raise UnsupportedDescriptor(f"cannot encode {d!r}")
    return payload * _NTAGS + _TAGS[type(d)]


def decode_descriptor(code: int) -> Descriptor:
    payload, tag = divmod(code, _NTAGS)
    if tag == 0:
        return Finite(frozenset(seq_decode(payload)))
    if tag == 1:
        return Cofinite(frozenset(seq_decode(payload)))
    if tag == 2:
        a, d = unpair(payload)
        return Progression(a, d + 1)
    if tag == 3:
        return Union(tuple(decode_descriptor(c) for c in seq_decode(payload)))
    if tag == 4:
        l, r = unpair(payload)
        return Difference(decode_descriptor(l), decode_descriptor(r))
    if tag == 5:
        return DyadicBlocks(decode_descriptor(payload))
    if tag == 6:
        return WeightBlocks(decode_descriptor(payload))
    if tag == 7:
        flat_code, default_code = unpair(payload)
        flat = seq_decode(flat_code)
        cols = tuple(
            (flat[i], decode_descriptor(flat[i + 1]))
            for i in range(0, len(flat) - 1, 2)
        )
        return Columns(cols, decode_descriptor(default_code))
    if tag == 8:
        ix, rest = unpair(payload)
        inc, outc = unpair(rest)
        return ColumnsBySet(decode_descriptor(ix), decode_descriptor(inc),
                            decode_descriptor(outc))
    if tag == 9:
        return TailColumns(decode_descriptor(payload))
    flat_code, base_code = unpair(payload)
    flat = seq_decode(flat_code)
    cols = tuple(
        (flat[i], decode_descriptor(flat[i + 1]))
        for i in range(0, len(flat) - 1, 2)
    )
    return OverrideColumns(cols, decode_descriptor(base_code))


# ---------------------------------------------------------------------------
# JSON form (corpus files)


def to_json(d: Descriptor):
    if isinstance(d, Finite):
        return {"shape": "finite", "elems": sorted(d.elems)}
    if isinstance(d, Cofinite):
        return {"shape": "cofinite", "excluded": sorted(d.excluded)}
    if isinstance(d, Progression):
        return {"shape": "progression", "start": d.start, "step": d.step}
    if isinstance(d, Union):
        return {"shape": "union", "parts": [to_json(p) for p in d.parts]}
    if isinstance(d, Difference):
        return {"shape": "difference", "left": to_json(d.left),
                "right": to_json(d.right)}
    if isinstance(d, DyadicBlocks):
        return {"shape": "dyadic-blocks", "index": to_json(d.index)}
    if isinstance(d, WeightBlocks):
        return {"shape": "weight-blocks", "index": to_json(d.index)}
    if isinstance(d, Columns):
        return {"shape": "columns",
                "cols": [[c, to_json(cd)] for c, cd in d.cols],
                "default": to_json(d.default)}
    if isinstance(d, ColumnsBySet):
        return {"shape": "columns-by-set", "index": to_json(d.index),
                "incol": to_json(d.incol), "outcol": to_json(d.outcol)}
    if isinstance(d, TailColumns):
        return {"shape": "tail-columns", "base": to_json(d.base)}
    if isinstance(d, OverrideColumns):
        return {"shape": "override-columns",
                "cols": [[c, to_json(cd)] for c, cd in d.cols],
                "base": to_json(d.base)}
    raise UnsupportedDescriptor(f"cannot serialize {d!r}")


def from_json(obj) -> Descriptor:
    shape = obj["shape"]
    if shape == "finite":
        return Finite(frozenset(obj["elems"]))
    if shape == "cofinite":
        return Cofinite(frozenset(obj["excluded"]))
    if shape == "progression":
        return Progression(obj["start"], obj["step"])
    if shape == "union":
        return Union(tuple(from_json(p) for p in obj["parts"]))
    if shape == "difference":
        return Difference(from_json(obj["left"]), from_json(obj["right"]))
    if shape == "dyadic-blocks":
        return DyadicBlocks(from_json(obj["index"]))
    if shape == "weight-blocks":
        return WeightBlocks(from_json(obj["index"]))
    if shape == "columns":
        return Columns(tuple((c, from_json(cd)) for c, cd in obj["cols"]),
                       from_json(obj["default"]))
    if shape == "columns-by-set":
        return ColumnsBySet(from_json(obj["index"]), from_json(obj["incol"]),
                            from_json(obj["outcol"]))
    if shape == "tail-columns":
        return TailColumns(from_json(obj["base"]))
    if shape == "override-columns":
        return OverrideColumns(
            tuple((c, from_json(cd)) for c, cd in obj["cols"]),
            from_json(obj["base"]),
        )
    raise UnsupportedDescriptor(f"unknown shape {shape!r}")


# ---------------------------------------------------------------------------
# compilation to programs


@dataclass
class Compiled:
    """A program realizing a descriptor, with settlement data.

    ``settle(M)`` is a stage past which approx agrees with the
    descriptor on [0, M].  ``total_settle`` is a stage past which the
    whole (finite) set is enumerated, or None for infinite sets.
    """

    term: object
    settle: object  # Callable[[int], int]
    total_settle: Optional[int] = None


def _step_from_descriptor(ev, args, params, s, state):
    from .programs import param
    d = state.get("descriptor")
    if d is None:
        d = decode_descriptor(param(params, 0))
        state["descriptor"] = d
    delay = param(params, 1)
    x = s - delay
    if x < 0:
        return ()
    ev.tick()
    return (x,) if member(d, x) else ()


def compile_descriptor(d: Descriptor, delay: int = 0,
                       as_script: bool = False,
                       rng=None) -> Compiled:
    """Compile a descriptor into a program with known settlement.

    With ``as_script`` (finite 1-D descriptors only) the result is a
    plain Script; an optional rng shuffles the enumeration schedule so
    that corpora exercise schedule independence.
    """
    from .programs import Combinator, script

    if as_script:
        ana = analyze(d)
        if not isinstance(ana, EP) or not ana.is_finite:
            raise UnsupportedDescriptor("scripts encode finite sets only")
        elems = sorted(ana.elements())
        if rng is not None:
            rng.shuffle(elems)
        entries = [(delay + i, {x}) for i, x in enumerate(elems)]
        last = delay + len(elems)
        return Compiled(script(entries), lambda M: last, total_settle=last)

    term = Combinator("from_descriptor",
                      params=(encode_descriptor(d), delay))
    total = None
    try:
        ana = analyze(d)
        if isinstance(ana, EP) and ana.is_finite:
            total = (max(ana.elements()) if ana.elements() else 0) + delay + 1
    except UnsupportedDescriptor:
        pass
    return Compiled(term, lambda M: M + delay + 1, total_settle=total)


def register_core_combinators() -> None:
    from .programs import register_combinator
    register_combinator("from_descriptor", _step_from_descriptor, arity=0)
