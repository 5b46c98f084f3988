"""Image constructions and stage machines for the almost-equality family.

The first half holds direct image reductions: a source set (or column
family) is mapped to a structured set whose target-relation class tracks
the source class exactly.  These constructions are schedule independent:
the limit of the built program depends only on the limit of its
argument, so exact window validation applies.

The second half holds two stage machines verified structurally rather
than through the reduction registry (their outputs are built from a
whole family of inputs at once, not from a single set).

``run_pairwise_module`` takes two enumerations A and B and builds two
sets D_ab and D_ba so that, column by column, D_ab and D_ba agree
exactly where A and B agree, and carry a finite nonempty difference
where A and B differ.

``TrackedFamilyMachine`` runs the full family version: from K input
enumerations it builds K output enumerations, one slice of the output
space per (column, input) pair, each slice managed by a movable marker.
Two outputs differ on finitely many values exactly when the two inputs
differ on finitely many columns.  The machine exposes its invariants
(per-slice differences bounded by the current marker, retired markers
present everywhere, churning slices staying synchronized) so the test
suite can check them at every stage.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..pairing import pair, unpair
from ..programs import Combinator, register_combinator, arg, param
from ..descriptors import (
    ColumnsBySet, Columns, Finite, EMPTY, FULL, Descriptor,
    analyze, block_bounds, block_of, column_descriptor, member,
    DyadicBlocks, WeightBlocks, TailColumns,
)
from ..relations import ClassKey, columnwise_key, decide
from . import (
    Built, Reduction, register_reduction, register_mutant,
    gen_pair_1d, gen_pair_columns, compile_arg,
)


def _pair_width(m: int) -> int:
    """Largest component value a pair code <= m can involve."""
    import math
    return (math.isqrt(8 * m + 1) - 1) // 2 + 1


# ---------------------------------------------------------------------------
# combinator steps


def _step_expand_columns(ev, args, params, s, state):
    """Element c of the argument grows the full column c, one row per
    stage from the stage c appeared."""
    a = arg(args, 0)
    out = []
    for c in ev.approx(a, s):
        ev.tick()
        t = ev.entry_stage(a, c, s)
        out.append(pair(c, s - t))
    return out


def _step_expand_columns_swapped(ev, args, params, s, state):
    a = arg(args, 0)
    out = []
    for c in ev.approx(a, s):
        ev.tick()
        t = ev.entry_stage(a, c, s)
        out.append(pair(s - t, c))
    return out


def _step_tail_columns(ev, args, params, s, state):
    """New element x contributes <c, x> for every column c <= x."""
    a = arg(args, 0)
    out = []
    for x in ev.approx(a, s):
        if ev.entry_stage(a, x, s) == s:
            for c in range(x + 1):
                ev.tick()
                out.append(pair(c, x))
    return out


def _step_tail_columns_short(ev, args, params, s, state):
    a = arg(args, 0)
    out = []
    for x in ev.approx(a, s):
        if ev.entry_stage(a, x, s) == s:
            for c in range(x):  # drops the diagonal
                ev.tick()
                out.append(pair(c, x))
    return out


def _step_replicate_columns(ev, args, params, s, state):
    """Every column of the output converges to the argument set."""
    a = arg(args, 0)
    out = []
    for k in ev.approx(a, s):
        ev.tick()
        t = ev.entry_stage(a, k, s)
        out.append(pair(s - t, k))
    return out


def _step_replicate_columns_shifted(ev, args, params, s, state):
    a = arg(args, 0)
    out = []
    for k in ev.approx(a, s):
        ev.tick()
        t = ev.entry_stage(a, k, s)
        out.append(pair(s - t, k + 1))
    return out


def _block_kind(params) -> str:
    return "weight" if param(params, 0) == 1 else "dyadic"


def _step_block_union(ev, args, params, s, state):
    """Element n of the argument grows the n-th block, one value per
    stage, in increasing order."""
    a = arg(args, 0)
    kind = _block_kind(params)
    shift = param(params, 1)  # mutants use a shifted block index
    gens = state.setdefault("gens", {})
    for n in ev.approx(a, s):
        if n not in gens:
            gens[n] = block_bounds(kind, n + shift)[0]
    out = []
    for n in list(gens):
        ev.tick()
        v = gens[n]
        if v < block_bounds(kind, n + shift)[1]:
            out.append(v)
            gens[n] = v + 1
    return out


def _step_scaled_blocks(ev, args, params, s, state):
    """Interleave the dyadic-block images of the argument's columns
    into geometrically thinning residue classes.

    Column c of the argument is sent into the class of x with
    v2(x+1) = c; the row k in column c grows the image of the k-th
    dyadic block there, one value per stage.
    """
    a = arg(args, 0)
    off = param(params, 0)  # mutants perturb the class offset
    seen = state.setdefault("seen", set())
    gens = state.setdefault("gens", {})
    for z in ev.approx(a, s):
        if z not in seen:
            seen.add(z)
            c, k = unpair(z)
            gens[(c, k)] = 1 << k
    out = []
    for (c, k), r in list(gens.items()):
        ev.tick()
        if r < 1 << (k + 1):
            out.append((1 << c) - 1 + off + r * (1 << (c + 1)))
            gens[(c, k)] = r + 1
    return out


def _string_of(m: int) -> tuple:
    """The m-th binary string in length-then-value order."""
    bits = bin(m + 1)[3:]
    return tuple(1 if b == "1" else 0 for b in bits)


def _step_prefixed_columns(ev, args, params, s, state):
    """Output column <n, m> holds n ones, a zero, the m-th binary
    string, then column n of the argument beyond the string's length.

    Generator <n, m> activates at stage <n, m>; its static part is
    emitted at once, its tail follows the argument's column n.
    """
    a = arg(args, 0)
    pad = param(params, 0)  # mutants change the tail offset
    active = state.setdefault("active", {})   # (n, m) -> |s_m|
    rows = state.setdefault("rows", {})       # n -> set of known rows
    out = []
    # route new argument elements to active generators
    for z in ev.approx(a, s):
        if ev.entry_stage(a, z, s) == s:
            n, k = unpair(z)
            rows.setdefault(n, set()).add(k)
            for (gn, gm), slen in active.items():
                if gn == n and k >= slen:
                    ev.tick()
                    out.append(pair(pair(gn, gm), gn + 1 + pad + k))
    # activate the next generator
    n, m = unpair(s)
    word = _string_of(m)
    active[(n, m)] = len(word)
    for j in range(n):
        ev.tick()
        out.append(pair(pair(n, m), j))
    for i, bit in enumerate(word):
        if bit:
            ev.tick()
            out.append(pair(pair(n, m), n + 1 + i))
    for k in rows.get(n, ()):
        if k >= len(word):
            ev.tick()
            out.append(pair(pair(n, m), n + 1 + pad + k))
    return out


def _step_prefix_family(ev, args, params, s, state):
    """Output column m holds the m-th binary string, then the argument
    set beyond the string's length."""
    a = arg(args, 0)
    pad = param(params, 0)
    active = state.setdefault("active", {})  # m -> |s_m|
    known = state.setdefault("known", set())
    out = []
    for x in ev.approx(a, s):
        if ev.entry_stage(a, x, s) == s:
            known.add(x)
            for m, slen in active.items():
                if x >= slen:
                    ev.tick()
                    out.append(pair(m, x + pad))
    m = s
    word = _string_of(m)
    active[m] = len(word)
    for i, bit in enumerate(word):
        if bit:
            ev.tick()
            out.append(pair(m, i))
    for x in known:
        if x >= len(word):
            ev.tick()
            out.append(pair(m, x + pad))
    return out


def register_benchmark_combinators() -> None:
    from ..programs import COMBINATORS
    steps = {
        "expand_columns": _step_expand_columns,
        "expand_columns_swapped": _step_expand_columns_swapped,
        "tail_columns": _step_tail_columns,
        "tail_columns_short": _step_tail_columns_short,
        "replicate_columns": _step_replicate_columns,
        "replicate_columns_shifted": _step_replicate_columns_shifted,
        "block_union": _step_block_union,
        "scaled_blocks": _step_scaled_blocks,
        "prefixed_columns": _step_prefixed_columns,
        "prefix_family": _step_prefix_family,
    }
    for cid, step in steps.items():
        if cid not in COMBINATORS:
            register_combinator(cid, step)


# ---------------------------------------------------------------------------
# builds


def _simple_build(cid, params=(), settle_fn=None, member_of=None):
    """A build function for a one-argument combinator."""

    def build(payload, rng=None):
        term_a, settle_a, _ = compile_arg(payload, rng)
        term = Combinator(cid, (term_a,), params)
        mem = member_of(payload) if member_of else None
        return Built(term, lambda M: settle_fn(settle_a, M), mem)

    return build


def _member_of_descriptor(transform):
    def member_of(payload):
        image = transform(payload)
        return lambda x: member(image, x)
    return member_of


# eqce_to_e0: c in A becomes the full column c --------------------------------

def _expand_transform(a: Descriptor) -> Descriptor:
    return ColumnsBySet(a, FULL, EMPTY)


eqce_to_e0 = register_reduction(Reduction(
    name="eqce_to_e0", source="eq_ce", target="e0",
    build=_simple_build(
        "expand_columns",
        settle_fn=lambda sa, M: sa(M) + M + 1,
        member_of=_member_of_descriptor(_expand_transform),
    ),
    predict=_expand_transform,
    gen_case=gen_pair_1d,
    window=128,
    combinator="expand_columns",
    doc="equality drops to finite-difference via full-column images",
))
register_mutant("eqce_to_e0", "transposed-pairs", _simple_build(
    "expand_columns_swapped",
    settle_fn=lambda sa, M: sa(M) + M + 1,
    member_of=_member_of_descriptor(_expand_transform),
))


# e0_to_e1: column x is the argument minus [0, x) -----------------------------

e0_to_e1 = register_reduction(Reduction(
    name="e0_to_e1", source="e0", target="e1",
    build=_simple_build(
        "tail_columns",
        settle_fn=lambda sa, M: sa(M) + 1,
        member_of=_member_of_descriptor(TailColumns),
    ),
    predict=TailColumns,
    gen_case=gen_pair_1d,
    window=128,
    combinator="tail_columns",
    doc="finite difference becomes almost-every-column equality",
))
register_mutant("e0_to_e1", "missing-diagonal", _simple_build(
    "tail_columns_short",
    settle_fn=lambda sa, M: sa(M) + 1,
    member_of=_member_of_descriptor(TailColumns),
))


# e0_to_e2 / e0_to_z0: block unions ------------------------------------------

def _block_settle(kind):
    def settle_fn(sa, M):
        n = block_of(kind, M)
        if n is None:
            n = 0
        return sa(n) + M + 2
    return settle_fn


e0_to_e2 = register_reduction(Reduction(
    name="e0_to_e2", source="e0", target="e2",
    build=_simple_build(
        "block_union", params=(1,),
        settle_fn=_block_settle("weight"),
        member_of=_member_of_descriptor(WeightBlocks),
    ),
    predict=WeightBlocks,
    gen_case=gen_pair_1d,
    window=128,
    combinator="block_union",
    doc="finite difference becomes finite-weight difference",
))
register_mutant("e0_to_e2", "shifted-block", _simple_build(
    "block_union", params=(1, 1),
    settle_fn=_block_settle("weight"),
    member_of=_member_of_descriptor(WeightBlocks),
))

e0_to_z0 = register_reduction(Reduction(
    name="e0_to_z0", source="e0", target="z0",
    build=_simple_build(
        "block_union", params=(0,),
        settle_fn=_block_settle("dyadic"),
        member_of=_member_of_descriptor(DyadicBlocks),
    ),
    predict=DyadicBlocks,
    gen_case=gen_pair_1d,
    window=128,
    combinator="block_union",
    doc="finite difference becomes density-zero difference",
))
register_mutant("e0_to_z0", "shifted-block", _simple_build(
    "block_union", params=(0, 1),
    settle_fn=_block_settle("dyadic"),
    member_of=_member_of_descriptor(DyadicBlocks),
))


# e0_to_e3: every column is the argument --------------------------------------

def _replicate_transform(a: Descriptor) -> Descriptor:
    return Columns((), a)


e0_to_e3 = register_reduction(Reduction(
    name="e0_to_e3", source="e0", target="e3",
    build=_simple_build(
        "replicate_columns",
        settle_fn=lambda sa, M: sa(M) + M + 1,
        member_of=_member_of_descriptor(_replicate_transform),
    ),
    predict=_replicate_transform,
    gen_case=gen_pair_1d,
    window=96,
    combinator="replicate_columns",
    doc="finite difference becomes columnwise almost equality",
))
register_mutant("e0_to_e3", "shifted-rows", _simple_build(
    "replicate_columns_shifted",
    settle_fn=lambda sa, M: sa(M) + M + 1,
    member_of=_member_of_descriptor(_replicate_transform),
))


# e3_to_z0: interleave column block images into thinning classes --------------

def _scaled_member(payload):
    def mem(x):
        y = x + 1
        c = (y & -y).bit_length() - 1  # 2-adic valuation of x+1
        r = (y - (1 << c)) >> (c + 1)
        if r < 1:
            return False
        b = r.bit_length() - 1
        return member(column_descriptor(payload, c), b)
    return mem


def _scaled_settle(sa, M):
    lg = max(M, 1).bit_length()
    return sa(pair(lg + 1, lg + 1)) + M + 2


e3_to_z0 = register_reduction(Reduction(
    name="e3_to_z0", source="e3", target="z0",
    build=_simple_build(
        "scaled_blocks", params=(0,),
        settle_fn=_scaled_settle,
        member_of=lambda payload: _scaled_member(payload),
    ),
    predict=lambda payload: ClassKey(
        "z0", columnwise_key(payload, lambda col: col.e0_key()
                             if hasattr(col, "e0_key") else col)),
    gen_case=gen_pair_columns,
    window=128,
    combinator="scaled_blocks",
    doc="columnwise almost equality becomes density-zero difference",
))
register_mutant("e3_to_z0", "offset-classes", _simple_build(
    "scaled_blocks", params=(1,),
    settle_fn=_scaled_settle,
    member_of=lambda payload: _scaled_member(payload),
))


# e3_to_eset: prefix-closed column variants ------------------------------------

def _prefixed_member(payload):
    def mem(x):
        col, y = unpair(x)
        n, m = unpair(col)
        word = _string_of(m)
        if y < n:
            return True
        if y == n:
            return False
        i = y - n - 1
        if i < len(word):
            return word[i] == 1
        return member(column_descriptor(payload, n), i)
    return mem


def _prefixed_settle(sa, M):
    w = _pair_width(M)
    return max(M, sa(pair(w + 1, w + 1))) + 2


def _e0_colkey(col):
    return col.e0_key() if hasattr(col, "e0_key") else col


e3_to_eset = register_reduction(Reduction(
    name="e3_to_eset", source="e3", target="eset",
    build=_simple_build(
        "prefixed_columns",
        settle_fn=_prefixed_settle,
        member_of=lambda payload: _prefixed_member(payload),
    ),
    predict=lambda payload: ClassKey(
        "eset", ("marked-variants", columnwise_key(payload, _e0_colkey))),
    gen_case=gen_pair_columns,
    window=96,
    combinator="prefixed_columns",
    doc="columnwise almost equality becomes column-family equality",
))
register_mutant("e3_to_eset", "padded-tail", _simple_build(
    "prefixed_columns", params=(1,),
    settle_fn=_prefixed_settle,
    member_of=lambda payload: _prefixed_member(payload),
))


# e0_to_eset: all finite variants of one set -----------------------------------

def _prefix_family_member(payload):
    def mem(x):
        m, y = unpair(x)
        word = _string_of(m)
        if y < len(word):
            return word[y] == 1
        return member(payload, y)
    return mem


def _prefix_family_settle(sa, M):
    w = _pair_width(M)
    return max(w, sa(w)) + M + 2


e0_to_eset = register_reduction(Reduction(
    name="e0_to_eset", source="e0", target="eset",
    build=_simple_build(
        "prefix_family",
        settle_fn=_prefix_family_settle,
        member_of=lambda payload: _prefix_family_member(payload),
    ),
    predict=lambda payload: ClassKey(
        "eset", ("prefix-family", analyze(payload).e0_key())),
    gen_case=gen_pair_1d,
    window=128,
    combinator="prefix_family",
    doc="finite difference becomes equality of finite-variant families",
))
register_mutant("e0_to_eset", "padded-tail", _simple_build(
    "prefix_family", params=(1,),
    settle_fn=_prefix_family_settle,
    member_of=lambda payload: _prefix_family_member(payload),
))


# ---------------------------------------------------------------------------
# input families: column-structured descriptors with small footprints


def gen_pair_inputs(rng: random.Random, cols: int = 5, height: int = 4):
    """Two column-structured descriptors for the pairwise module."""
    def cell():
        return Finite(frozenset(
            rng.randrange(height) for _ in range(rng.randrange(3))))

    base = {c: cell() for c in range(rng.randrange(1, cols + 1))}
    other = dict(base)
    for c in list(other):
        if rng.random() < 0.4:
            other[c] = cell()
    defaults = [EMPTY, Finite(frozenset({0}))]
    da = rng.choice(defaults)
    db = da if rng.random() < 0.6 else rng.choice(defaults)
    a = Columns(tuple(sorted(base.items())), da)
    b = Columns(tuple(sorted(other.items())), db)
    return a, b


def gen_family(rng: random.Random, k: int = 4, cols: int = 4,
               height: int = 4):
    """K column-structured inputs sharing or splitting their tails.

    Explicit columns sit at c < cols with entries below height, so every
    relevant input element is a small pair code and the machine settles
    early.  Tail columns are EMPTY or {0} per input, which decides the
    infinite part of the column-agreement pattern.
    """
    def cell():
        return Finite(frozenset(
            rng.randrange(height) for _ in range(rng.randrange(3))))

    defaults = [EMPTY, Finite(frozenset({0}))]
    family = []
    base = {c: cell() for c in range(cols)}
    for i in range(k):
        mine = dict(base)
        for c in range(cols):
            if rng.random() < 0.35:
                mine[c] = cell()
        d = rng.choice(defaults)
        family.append(Columns(tuple(sorted(mine.items())), d))
    return family


def _explicit_bound(family) -> int:
    """First column index past every explicitly listed column."""
    top = 0
    for d in family:
        for c, _ in d.cols:
            top = max(top, c + 1)
    return top


def _stage_set(d: Descriptor, s: int) -> set:
    """Canonical enumeration: everything below s that belongs."""
    return {x for x in range(s) if member(d, x)}


def _column(ws: set, c: int, height: int = 16) -> frozenset:
    return frozenset(k for k in range(height)
                     if pair(c, k) in ws)


# ---------------------------------------------------------------------------
# the pairwise module


@dataclass
class PairwiseResult:
    d_ab: set
    d_ba: set
    stages: int


def run_pairwise_module(a: Descriptor, b: Descriptor,
                        stages: int) -> PairwiseResult:
    """Build D_ab and D_ba from enumerations of a and b.

    A pair code <c, k> enters D_ab at stage s+1 when it lies in
    A_s \\ B_s and the two stage approximations agree on every <c, n>
    with n < k; and it also enters (the echo rule) once it lies in
    D_ba together with both A_s and B_s.
    """
    d_ab: set = set()
    d_ba: set = set()
    for s in range(stages):
        ws_a = _stage_set(a, s)
        ws_b = _stage_set(b, s)
        new_ab = set()
        new_ba = set()
        for x in ws_a | ws_b:
            c, k = unpair(x)
            agree_below = all(
                (pair(c, n) in ws_a) == (pair(c, n) in ws_b)
                for n in range(k))
            if x in ws_a and x not in ws_b and agree_below:
                new_ab.add(x)
            if x in ws_b and x not in ws_a and agree_below:
                new_ba.add(x)
            if x in d_ba and x in ws_a and x in ws_b:
                new_ab.add(x)
            if x in d_ab and x in ws_a and x in ws_b:
                new_ba.add(x)
        d_ab |= new_ab
        d_ba |= new_ba
    return PairwiseResult(d_ab, d_ba, stages)


def check_pairwise(a: Descriptor, b: Descriptor, columns: int = 10,
                   height: int = 8, stages: int = 90,
                   probe: int = 30) -> list:
    """Structural checks for the pairwise module on settled inputs.

    Returns a list of human-readable issues (empty when all hold):
    output columns agree exactly where the input columns agree, carry at
    least one difference where they do not, and every difference is
    finite (stable under extra stages).
    """
    issues = []
    res = run_pairwise_module(a, b, stages)
    longer = run_pairwise_module(a, b, stages + probe)
    for c in range(columns):
        in_a = frozenset(k for k in range(height) if member(a, pair(c, k)))
        in_b = frozenset(k for k in range(height) if member(b, pair(c, k)))
        out_ab = _column(res.d_ab, c, height=stages)
        out_ba = _column(res.d_ba, c, height=stages)
        if in_a == in_b:
            if out_ab != out_ba:
                issues.append(f"column {c}: inputs agree but outputs differ")
        else:
            if out_ab == out_ba:
                issues.append(f"column {c}: inputs differ but outputs agree")
            later_ab = _column(longer.d_ab, c, height=stages + probe)
            later_ba = _column(longer.d_ba, c, height=stages + probe)
            if later_ab ^ later_ba != out_ab ^ out_ba:
                issues.append(f"column {c}: difference is still growing")
    return issues


# ---------------------------------------------------------------------------
# the tracked-family machine


@dataclass
class _Slice:
    """Per-(column, input) bookkeeping.

    ``marker`` counts how many marker positions have been used; the
    current marker element is the pair code of ((c, j), marker).
    ``minima`` maps each smaller input index i to the last seen least
    column difference, or None.  ``facts`` remembers, per larger input
    index k, whether the minima-agreement fact held at the previous
    stage.
    """

    c: int
    j: int
    marker: int = 0
    minima: dict = field(default_factory=dict)
    retired: list = field(default_factory=list)
    churned: bool = False
    last_churn: int = -1
    last_move: int = 0


def _marker_element(sl: _Slice) -> int:
    return pair(pair(sl.c, sl.j), sl.marker)


class TrackedFamilyMachine:
    """Family version of the pairwise module.

    Builds outputs G[0..K-1] from K column-structured inputs.  Slice
    (c, j) watches whether input j differs on column c from every
    earlier input, and if so plants one permanent marker separating
    G[j] from the earlier outputs there; whenever the evidence shifts,
    the old marker is retired into every output and a fresh one is
    planted.  Inputs k with j < k <= c are steered to match G[j] or the
    earlier outputs on the slice according to how W_k treats the least
    column differences.
    """

    def __init__(self, family, slices_c: int, height: int = 16):
        self.family = list(family)
        self.k = len(family)
        self.slices_c = slices_c
        self.height = height
        self.outputs = [set() for _ in range(self.k)]
        self.cells = {}  # (c, j) -> per-output restriction to the slice
        self.slices = {}
        self.stage = 0
        for c in range(slices_c):
            for j in range(self.k):
                sl = _Slice(c, j)
                self.slices[(c, j)] = sl
                self.cells[(c, j)] = [set() for _ in range(self.k)]
                self._add(j, sl, _marker_element(sl))

    def _add(self, g: int, sl: _Slice, x: int):
        self.outputs[g].add(x)
        self.cells[(sl.c, sl.j)][g].add(x)

    def _minimum(self, ws_i, ws_j, c):
        diff = [k for k in range(self.height)
                if (pair(c, k) in ws_i) != (pair(c, k) in ws_j)]
        return diff[0] if diff else None

    def _fact(self, sl: _Slice, k: int, stage_sets) -> bool:
        """Input k treats every recorded least difference of slice
        (c, j) the same way input j does."""
        c, j = sl.c, sl.j
        for i in range(j):
            m = sl.minima.get(i)
            if m is None:
                return False
            e = pair(c, m)
            if (e in stage_sets[k]) != (e in stage_sets[j]):
                return False
        return True

    def _retire(self, sl: _Slice):
        x = _marker_element(sl)
        for g in range(self.k):
            self._add(g, sl, x)
        sl.retired.append(x)
        sl.marker += 1
        sl.last_move = self.stage
        self._add(sl.j, sl, _marker_element(sl))

    def step(self):
        s = self.stage
        prev_sets = [_stage_set(d, s) for d in self.family]
        next_sets = [_stage_set(d, s + 1) for d in self.family]
        for sl in self.slices.values():
            c, j = sl.c, sl.j
            prev_facts = {
                k: self._fact(sl, k, prev_sets)
                for k in range(j + 1, min(c, self.k - 1) + 1)
            }
            churn = False
            for i in range(j):
                m = self._minimum(prev_sets[i], prev_sets[j], c)
                if m is None or m != sl.minima.get(i, m):
                    churn = True
                sl.minima[i] = m
            if j > 0 and any(sl.minima[i] is None for i in range(j)):
                churn = True
            if not churn:
                # a steered input that holds its marker but no longer
                # matches input j on the minima forces a fresh marker
                x = _marker_element(sl)
                for k in prev_facts:
                    now = self._fact(sl, k, next_sets)
                    if not now and x in self.outputs[k]:
                        churn = True
            if churn:
                self._retire(sl)
            sl.churned = churn
            if churn:
                sl.last_churn = s + 1
            x = _marker_element(sl)
            for k in range(j + 1, min(c, self.k - 1) + 1):
                if self._fact(sl, k, next_sets):
                    self._add(k, sl, x)
        self.stage += 1

    def run(self, stages: int):
        while self.stage < stages:
            self.step()

    # ------ invariants and verdicts ------

    def slice_of(self, g: int, key) -> set:
        return self.cells[key][g]

    def invariant_issues(self) -> list:
        """Checks that must hold at every stage."""
        issues = []
        for key, sl in self.slices.items():
            x = _marker_element(sl)
            for r in sl.retired:
                if any(r not in g for g in self.outputs):
                    issues.append(f"slice {key}: retired marker {r} missing"
                                  " from some output")
                    break
            cells = [self.slice_of(g, key) for g in range(self.k)]
            for a in range(self.k):
                for b in range(a + 1, self.k):
                    d = cells[a] ^ cells[b]
                    if d - {x}:
                        issues.append(f"slice {key}: outputs {a},{b} differ"
                                      " beyond the current marker")
        return issues

    def column_agree(self, m: int, n: int, c: int) -> bool:
        dm, dn = self.family[m], self.family[n]
        return all(member(dm, pair(c, k)) == member(dn, pair(c, k))
                   for k in range(self.height))

    def agreement_issues(self) -> list:
        """Slices where some earlier input matches input j's column must
        churn forever and keep every output synchronized there."""
        issues = []
        for key, sl in self.slices.items():
            c, j = key
            if not any(self.column_agree(i, j, c) for i in range(j)):
                continue
            if self.stage - sl.last_churn > 2 * self.height + 4:
                issues.append(f"slice {key}: agreement slice stopped"
                              " churning")
            x = _marker_element(sl)
            cells = [self.slice_of(g, key) - {x} for g in range(self.k)]
            if any(cell != cells[0] for cell in cells):
                issues.append(f"slice {key}: agreement slice outputs differ"
                              " beyond the current marker")
        return issues

    def settlement_issues(self, checkpoint: int) -> list:
        """Non-churning slices must have stopped moving their markers by
        the checkpoint stage."""
        issues = []
        for key, sl in self.slices.items():
            c, j = key
            if any(self.column_agree(i, j, c) for i in range(j)):
                continue
            if sl.last_move > checkpoint:
                issues.append(f"slice {key}: marker moved at stage"
                              f" {sl.last_move}, after the checkpoint")
        return issues

    def output_verdict(self, m: int, n: int, tail_from: int) -> bool:
        """Finitely-many-differences verdict for outputs m and n.

        Differences within the explicitly listed columns are finite by
        construction; the verdict is decided by the uniform tail slices,
        where every input column equals its per-input default.
        """
        for key, sl in self.slices.items():
            c, j = key
            if c < tail_from:
                continue
            x = _marker_element(sl)
            a = self.slice_of(m, key) - {x}
            b = self.slice_of(n, key) - {x}
            if a != b:
                return False
            if any(self.column_agree(i, j, c) for i in range(j)):
                continue  # churning slice: the marker is transient
            if (x in self.outputs[m]) != (x in self.outputs[n]):
                return False
        return True


@dataclass
class FamilyReport:
    issues: list
    verdicts: dict       # (m, n) -> (input verdict, output verdict)


def run_tracked_family(family, checkpoint: int = 30, horizon: int = 60,
                       slices_c: int = 8, height: int = 8) -> FamilyReport:
    """Run the machine and collect every structural check.

    The input-side verdict (finitely many differing columns) comes from
    the descriptor oracle; the output-side verdict is read off the
    machine's tail slices.  They must agree on every pair.
    """
    machine = TrackedFamilyMachine(family, slices_c, height=height)
    issues = []
    while machine.stage < horizon:
        machine.step()
        issues.extend(machine.invariant_issues())
        if issues:
            break
    if not issues:
        issues.extend(machine.agreement_issues())
        issues.extend(machine.settlement_issues(checkpoint))
    tail_from = max(_explicit_bound(family), len(family) - 1)
    verdicts = {}
    for m in range(len(family)):
        for n in range(m + 1, len(family)):
            want = decide("e1", family[m], family[n])
            got = machine.output_verdict(m, n, tail_from)
            verdicts[(m, n)] = (want, got)
            if want != got:
                issues.append(f"pair ({m},{n}): input verdict {want} but"
                              f" output verdict {got}")
    return FamilyReport(issues, verdicts)
