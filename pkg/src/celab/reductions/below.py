"""Reductions among the order-invariant relations below set equality.

These relations (same minimum, same maximum, same median, same gcd/lcm,
same cut or hull in a fixed coded order) all compare a single numeric
invariant of the enumerated set.  The reductions either *saturate* the
set into a canonical representative of its class, or emit a stream of
stage invariants whose limit class is the right one.

Saturations are schedule independent and window-validated.  The
invariant streams (stage gcds, running factorials, median multiples)
legitimately depend on the enumeration schedule, so they carry custom
semantic validators instead of exact window predictions.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..pairing import pair
from ..programs import Combinator, register_combinator, arg, param
from ..descriptors import (
    EP, Descriptor, Finite, Progression, EMPTY, FULL, analyze, member,
)
from ..orders import rational_from_code
from ..relations import ClassKey, QCut
from . import (
    Built, Reduction, register_reduction, register_mutant,
    gen_pair_1d, compile_arg,
)


def _fact(n: int) -> int:
    return math.factorial(n)


def _witness_ge(ana: EP, m: int):
    """The least element >= m of an EP set, or None."""
    stop = max(m, ana.threshold) + ana.period + 1
    for x in range(m, stop + 1):
        if ana.member(x):
            return x
    return None


# ---------------------------------------------------------------------------
# combinator steps


def _step_saturate_up(ev, args, params, s, state):
    """Enumerate [current minimum + offset, infinity), one new value per
    stage, extending downward whenever the minimum drops."""
    a = arg(args, 0)
    off = param(params, 0)
    cur = ev.approx(a, s)
    if not cur:
        return ()
    ev.tick()
    m = min(cur) + off
    out = []
    low = state.get("low")
    high = state.get("high")
    if low is None:
        low, high = m, m - 1
    if m < low:
        out.extend(range(m, low))
        low = m
    high += 1
    out.append(high)
    state["low"], state["high"] = low, high
    return out


def _step_saturate_down(ev, args, params, s, state):
    """Enumerate [0, current maximum - trim], extending upward as the
    maximum grows."""
    a = arg(args, 0)
    trim = param(params, 0)
    cur = ev.approx(a, s)
    if not cur:
        return ()
    ev.tick()
    mx = max(cur) - trim
    filled = state.get("filled", -1)
    if mx <= filled:
        return ()
    out = list(range(filled + 1, mx + 1))
    state["filled"] = mx
    return out


def _step_cut_below(ev, args, params, s, state):
    """Enumerate {x : x < current maximum - trim}."""
    a = arg(args, 0)
    trim = param(params, 0)
    cur = ev.approx(a, s)
    if not cur:
        return ()
    ev.tick()
    top = max(cur) - trim  # emit values strictly below this
    filled = state.get("filled", 0)
    if top <= filled:
        return ()
    out = list(range(filled, top))
    state["filled"] = top
    return out


def _step_interval_hull(ev, args, params, s, state):
    """Enumerate [current minimum + off, current maximum]."""
    a = arg(args, 0)
    off = param(params, 0)
    cur = ev.approx(a, s)
    if not cur:
        return ()
    ev.tick()
    lo, hi = min(cur) + off, max(cur)
    done = state.get("done", set())
    out = [x for x in range(lo, hi + 1) if x not in done]
    done.update(out)
    state["done"] = done
    return out


def _step_min_factorials(ev, args, params, s, state):
    """Emit (m + shift)! whenever the current minimum m changes."""
    a = arg(args, 0)
    shift = param(params, 0, 2)
    scale = param(params, 1, 1)
    cur = ev.approx(a, s)
    if not cur:
        return ()
    ev.tick()
    m = min(cur)
    if state.get("last") == m:
        return ()
    state["last"] = m
    return (_fact(m + shift) * scale,)


def _step_max_factorials(ev, args, params, s, state):
    """Emit (m + shift)! whenever the current maximum m changes."""
    a = arg(args, 0)
    shift = param(params, 0, 2)
    scale = param(params, 1, 1)
    cur = ev.approx(a, s)
    if not cur:
        return ()
    ev.tick()
    m = max(cur)
    if state.get("last") == m:
        return ()
    state["last"] = m
    return (_fact(m + shift) * scale,)


def _step_stage_gcds(ev, args, params, s, state):
    """Emit the gcd of the stage approximation whenever it is finite."""
    a = arg(args, 0)
    scale = param(params, 0, 1)
    cur = ev.approx(a, s)
    ev.tick()
    g = 0
    for x in cur:
        g = math.gcd(g, x)
    if g == 0:
        return ()  # empty, or a subset of {0}: gcd is infinite
    return (g * scale,)


def _step_stage_lcms(ev, args, params, s, state):
    """Emit the lcm of the positive stage elements (1 when there are
    none), every stage."""
    a = arg(args, 0)
    scale = param(params, 0, 1)
    cur = ev.approx(a, s)
    ev.tick()
    l = 1
    for x in cur:
        if x > 0:
            l = l * x // math.gcd(l, x)
    return (l * scale,)


def _two_middle(sorted_elems):
    n = len(sorted_elems)
    return sorted_elems[(n - 1) // 2], sorted_elems[n // 2]


def _step_median_multiples(ev, args, params, s, state):
    """Emit positive multiples of a step size derived from the current
    median; on every median change, fill everything up to the largest
    value emitted so far.

    The step size is a + b + delta where a, b are the two middle
    elements, so distinct medians give distinct (>= 2) step sizes.
    """
    a = arg(args, 0)
    delta = param(params, 0, 2)
    cur = ev.approx(a, s)
    if not cur:
        return ()
    ev.tick()
    mid = _two_middle(sorted(cur))
    out = []
    if state.get("mid") != mid:
        state["mid"] = mid
        state["fills"] = state.get("fills", 0) + 1
        top = state.get("top", -1)
        done = state.setdefault("done", set())
        out.extend(x for x in range(top + 1) if x not in done)
        done.update(out)
        state["mult"] = 0
    d = mid[0] + mid[1] + delta
    state["mult"] = state.get("mult", 0) + 1
    v = d * state["mult"]
    done = state.setdefault("done", set())
    if v not in done:
        out.append(v)
        done.add(v)
    state["top"] = max(state.get("top", -1), max(out, default=-1))
    return out


def _step_rational_cut(ev, args, params, s, state):
    """Enumerate rational codes q with q < (current maximum) - trim."""
    a = arg(args, 0)
    trim = param(params, 0, 1)
    cur = ev.approx(a, s)
    pend = state.setdefault("pend", [])
    pend.append(s)  # code s becomes eligible for scanning at stage s
    if not cur:
        return ()
    ev.tick()
    bound = max(cur) - trim
    out = []
    keep = []
    for c in pend:
        ev.tick()
        if rational_from_code(c) < bound:
            out.append(c)
        else:
            keep.append(c)
    state["pend"] = keep
    return out


def _step_triadic_cut(ev, args, params, s, state):
    """Enumerate rational codes q with q < sum of 3^-(n+1) over the
    stage approximation."""
    a = arg(args, 0)
    wshift = param(params, 0, 1)
    cur = ev.approx(a, s)
    pend = state.setdefault("pend", [])
    pend.append(s)
    ev.tick()
    total = Fraction(0)
    for n in cur:
        total += Fraction(1, 3 ** (n + wshift))
    out = []
    keep = []
    for c in pend:
        ev.tick()
        if rational_from_code(c) < total:
            out.append(c)
        else:
            keep.append(c)
    state["pend"] = keep
    return out


def register_below_combinators() -> None:
    from ..programs import COMBINATORS
    steps = {
        "saturate_up": _step_saturate_up,
        "saturate_down": _step_saturate_down,
        "cut_below": _step_cut_below,
        "interval_hull": _step_interval_hull,
        "min_factorials": _step_min_factorials,
        "max_factorials": _step_max_factorials,
        "stage_gcds": _step_stage_gcds,
        "stage_lcms": _step_stage_lcms,
        "median_multiples": _step_median_multiples,
        "rational_cut": _step_rational_cut,
        "triadic_cut": _step_triadic_cut,
    }
    for cid, step in steps.items():
        if cid not in COMBINATORS:
            register_combinator(cid, step)


# ---------------------------------------------------------------------------
# payload invariants


def _min_of(payload):
    return analyze(payload).min()


def _max_info(payload):
    """(is_empty, is_finite, max-or-None)."""
    ana = analyze(payload)
    if ana.is_empty:
        return True, True, None
    if not ana.is_finite:
        return False, False, None
    return False, True, ana.max()


# ---------------------------------------------------------------------------
# saturations (schedule independent)


def _build_saturate_up(offset=0):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("saturate_up", (term_a,),
                          (offset,) if offset else ())
        m = _min_of(payload)
        image = EMPTY if m is None else Progression(m + offset, 1)

        def settle(M):
            base = sa(m) if m is not None else sa(M)
            return base + M + 2

        return Built(term, settle, lambda x: member(image, x))
    return build


def _upward_image(payload) -> Descriptor:
    m = _min_of(payload)
    return EMPTY if m is None else Progression(m, 1)


saturate_up = register_reduction(Reduction(
    name="saturate_up", source="e_min", target="eq_ce",
    build=_build_saturate_up(),
    predict=_upward_image,
    gen_case=gen_pair_1d,
    window=256,
    combinator="saturate_up",
    doc="sets with equal minima saturate to the same upward cone",
))
register_mutant("saturate_up", "excludes-minimum", _build_saturate_up(1))


def _downward_image(payload) -> Descriptor:
    empty, finite, mx = _max_info(payload)
    if empty:
        return EMPTY
    if not finite:
        return FULL
    return Finite(frozenset(range(mx + 1)))


def _build_saturate_down(trim=0, predict=_downward_image):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("saturate_down", (term_a,),
                          (trim,) if trim else ())
        image = predict(payload)
        empty, finite, mx = _max_info(payload)

        def settle(M):
            if empty:
                return M + 2
            w = mx if finite else _witness_ge(analyze(payload), M)
            if w is None:
                w = M
            return sa(w) + 2

        return Built(term, settle, lambda x: member(image, x))
    return build


saturate_down = register_reduction(Reduction(
    name="saturate_down", source="e_max", target="eq_ce",
    build=_build_saturate_down(),
    predict=_downward_image,
    gen_case=gen_pair_1d,
    window=256,
    combinator="saturate_down",
    doc="sets with equal maxima saturate to the same initial segment",
))
register_mutant("saturate_down", "drops-maximum", _build_saturate_down(1))

emax_to_emed = register_reduction(Reduction(
    name="emax_to_emed", source="e_max", target="e_med",
    build=_build_saturate_down(),
    predict=_downward_image,
    gen_case=gen_pair_1d,
    window=256,
    combinator="saturate_down",
    doc="the initial segment [0, max] has median max/2, an injective"
        " function of the maximum",
))
register_mutant("emax_to_emed", "drops-maximum", _build_saturate_down(1))


# ---------------------------------------------------------------------------
# cuts and hulls in the order omega


def _cut_image(payload) -> Descriptor:
    empty, finite, mx = _max_info(payload)
    if empty or (finite and mx == 0):
        return EMPTY
    if not finite:
        return FULL
    return Finite(frozenset(range(mx)))


def _build_cut_below(trim=0):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("cut_below", (term_a,), (trim,) if trim else ())
        image = _cut_image(payload)
        empty, finite, mx = _max_info(payload)

        def settle(M):
            if empty:
                return M + 2
            w = mx if finite else _witness_ge(analyze(payload), M + 1)
            if w is None:
                w = M + 1
            return sa(w) + 2

        return Built(term, settle, lambda x: member(image, x))
    return build


cut_omega = register_reduction(Reduction(
    name="cut_omega", source="el_omega", target="eq_ce",
    build=_build_cut_below(),
    predict=_cut_image,
    gen_case=gen_pair_1d,
    window=256,
    combinator="cut_below",
    doc="replace a set by the cut it determines in the order omega",
))
register_mutant("cut_omega", "keeps-maximum", _build_cut_below(-1))

elomega_to_homega = register_reduction(Reduction(
    name="elomega_to_homega", source="el_omega", target="h_omega",
    build=_build_cut_below(),
    predict=_cut_image,
    gen_case=gen_pair_1d,
    window=256,
    combinator="cut_below",
    doc="a cut is its own convex hull, so the cut map also reduces"
        " same-cut to same-hull",
))
register_mutant("elomega_to_homega", "keeps-maximum", _build_cut_below(-1))


def _hull_image(payload) -> Descriptor:
    ana = analyze(payload)
    if ana.is_empty:
        return EMPTY
    m = ana.min()
    if not ana.is_finite:
        return Progression(m, 1)
    return Finite(frozenset(range(m, ana.max() + 1)))


def _build_interval_hull(off=0):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("interval_hull", (term_a,), (off,) if off else ())
        image = _hull_image(payload)
        ana = analyze(payload)

        def settle(M):
            if ana.is_empty:
                return M + 2
            w = ana.max() if ana.is_finite else _witness_ge(ana, M)
            if w is None:
                w = M
            return sa(max(w, ana.min())) + 2

        return Built(term, settle, lambda x: member(image, x))
    return build


hull_omega = register_reduction(Reduction(
    name="hull_omega", source="h_omega", target="eq_ce",
    build=_build_interval_hull(),
    predict=_hull_image,
    gen_case=gen_pair_1d,
    window=256,
    combinator="interval_hull",
    doc="replace a set by its convex hull in the order omega",
))
register_mutant("hull_omega", "trims-minimum", _build_interval_hull(1))


def _upper_cone_image(payload) -> Descriptor:
    m = _min_of(payload)
    return EMPTY if m is None else Progression(m + 1, 1)


emin_to_homega = register_reduction(Reduction(
    name="emin_to_homega", source="e_min", target="h_omega",
    build=_build_saturate_up(offset=1),
    predict=_upper_cone_image,
    gen_case=gen_pair_1d,
    window=256,
    combinator="saturate_up",
    doc="the strict upper cone is the hull of the reverse-order cut,"
        " an injective function of the minimum",
))
register_mutant("emin_to_homega", "wider-cone", _build_saturate_up(offset=2))


# ---------------------------------------------------------------------------
# rational cuts


def _qcut_of_max(payload) -> QCut:
    empty, finite, mx = _max_info(payload)
    if empty or (finite and mx == 0):
        return QCut(-math.inf)
    if not finite:
        return QCut(math.inf)
    return QCut(Fraction(mx - 1))


def _build_rational_cut(trim=1):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("rational_cut", (term_a,), (trim,))
        cut = _qcut_of_max(payload)
        empty, finite, mx = _max_info(payload)

        def mem(c):
            if cut.bound == -math.inf:
                return False
            if cut.bound == math.inf:
                return True
            return rational_from_code(c) < cut.bound

        def settle(M):
            if empty:
                return M + 2
            if finite:
                w = mx
            else:
                # a witness above every rational with code <= M
                top = max(
                    (rational_from_code(c) for c in range(M + 1)),
                    default=Fraction(0),
                )
                w = _witness_ge(analyze(payload),
                                math.ceil(top) + trim + 1)
            if w is None:
                w = M
            return sa(w) + M + 2

        return Built(term, settle, mem)
    return build


def _gen_pair_small(rng):
    """Pairs over small values: rationals near a small maximum have
    small codes, so the bounded window can actually see the cut edge."""
    return gen_pair_1d(rng, hi=6)


omega_into_rationals = register_reduction(Reduction(
    name="omega_into_rationals", source="el_omega", target="eq_ce",
    build=_build_rational_cut(),
    predict=_qcut_of_max,
    gen_case=_gen_pair_small,
    window=96,
    combinator="rational_cut",
    doc="embed cuts of the order omega into cuts of the rationals",
))
register_mutant("omega_into_rationals", "off-by-one-bound",
                _build_rational_cut(trim=0))


def _triadic_sum(payload) -> Fraction:
    return analyze(payload).triadic_sum()


def _build_triadic_cut(wshift=1):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("triadic_cut", (term_a,), (wshift,))
        total = _triadic_sum(payload)

        def mem(c):
            return rational_from_code(c) < total

        def settle(M):
            gaps = [total - rational_from_code(c) for c in range(M + 1)
                    if rational_from_code(c) < total]
            if not gaps:
                return M + 2
            need = min(gaps)
            n = 0
            while Fraction(3, 2) * Fraction(1, 3 ** (n + 2)) >= need:
                n += 1
            return sa(n) + M + 2

        return Built(term, settle, mem)
    return build


eqce_to_eQ = register_reduction(Reduction(
    name="eqce_to_eQ", source="eq_ce", target="eq_ce",
    build=_build_triadic_cut(),
    predict=lambda payload: QCut(_triadic_sum(payload)),
    gen_case=gen_pair_1d,
    window=96,
    combinator="triadic_cut",
    doc="set equality embeds into equality of rational cuts via exact"
        " base-3 sums",
))
register_mutant("eqce_to_eQ", "wrong-weights", _build_triadic_cut(wshift=0))


# ---------------------------------------------------------------------------
# invariant streams (schedule dependent; semantic validators)


def _gcd_key(payload):
    g = analyze(payload).gcd_value()
    return ClassKey("e_gcd", g)


def _min_key(payload):
    m = _min_of(payload)
    return ClassKey("e_min", ("empty",) if m is None else ("min", m))


def _lcm_key(payload):
    return ClassKey("e_lcm", analyze(payload).lcm_value())


def _max_key(payload):
    empty, finite, mx = _max_info(payload)
    if empty:
        return ClassKey("e_max", ("empty",))
    if not finite:
        return ClassKey("e_max", ("inf",))
    return ClassKey("e_max", ("max", mx))


def _gcd_witness(ana: EP) -> int:
    """A value by which the running gcd has reached its limit."""
    w = 0
    for x in ana.head:
        w = max(w, x)
    for r in ana.residues:
        # the first two members of the residue class at or after the
        # threshold already have gcd equal to gcd(first, period)
        x0 = ana.threshold + ((r - ana.threshold) % ana.period)
        w = max(w, x0 + ana.period)
    return w


def _build_min_factorials(shift=2, scale=1):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("min_factorials", (term_a,), (shift, scale))
        m = _min_of(payload)
        settle = (lambda M: M + 2) if m is None else (lambda M: sa(m) + 2)
        return Built(term, settle)
    return build


def _validate_min_factorials(ev, built, payload, window):
    issues = []
    m = _min_of(payload)
    got = ev.approx(built.term, built.settle(window))
    if m is None:
        if got:
            issues.append("image of the empty set is nonempty")
        return issues
    if _fact(m + 2) not in got:
        issues.append("factorial of the settled minimum is missing")
    allowed = {_fact(k + 2) for k in range(m, m + 64)}
    if not got <= allowed:
        issues.append("image contains a value that is not a factorial of"
                      " a value at or above the minimum")
    return issues


min_to_gcd = register_reduction(Reduction(
    name="min_to_gcd", source="e_min", target="e_gcd",
    build=_build_min_factorials(),
    predict=lambda payload: ClassKey(
        "e_gcd",
        math.inf if _min_of(payload) is None
        else _fact(_min_of(payload) + 2)),
    gen_case=lambda rng: gen_pair_1d(rng, hi=18),
    window=64,
    validator=_validate_min_factorials,
    combinator="min_factorials",
    doc="emit factorials of running minima; their gcd is the factorial"
        " of the true minimum",
))
register_mutant("min_to_gcd", "doubled-values",
                _build_min_factorials(scale=2))


def _build_stage_gcds(scale=1):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("stage_gcds", (term_a,),
                          (scale,) if scale != 1 else ())
        ana = analyze(payload)
        g = ana.gcd_value()
        if g is math.inf:
            settle = lambda M: M + 2
        else:
            w = _gcd_witness(ana)
            settle = lambda M: sa(w) + 2
        return Built(term, settle)
    return build


def _validate_stage_gcds(ev, built, payload, window):
    issues = []
    g = analyze(payload).gcd_value()
    got = ev.approx(built.term, built.settle(window))
    if g is math.inf:
        if got:
            issues.append("image of an infinite-gcd set is nonempty")
        return issues
    if g not in got:
        issues.append("settled gcd missing from the image")
    if any(x % g != 0 or x == 0 for x in got):
        issues.append("image contains a value that is not a positive"
                      " multiple of the settled gcd")
    return issues


gcd_to_min = register_reduction(Reduction(
    name="gcd_to_min", source="e_gcd", target="e_min",
    build=_build_stage_gcds(),
    predict=lambda payload: ClassKey(
        "e_min",
        ("empty",) if analyze(payload).gcd_value() is math.inf
        else ("min", analyze(payload).gcd_value())),
    gen_case=lambda rng: gen_pair_1d(rng, hi=18),
    window=64,
    validator=_validate_stage_gcds,
    combinator="stage_gcds",
    doc="emit the running gcds; their minimum is the true gcd",
))
register_mutant("gcd_to_min", "doubled-values", _build_stage_gcds(scale=2))


def _build_max_factorials(shift=2, scale=1):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("max_factorials", (term_a,), (shift, scale))
        empty, finite, mx = _max_info(payload)

        def settle(M):
            if empty:
                return M + 2
            w = mx if finite else _witness_ge(analyze(payload), M)
            if w is None:
                w = M
            return sa(w) + 2

        return Built(term, settle)
    return build


def _validate_max_factorials(ev, built, payload, window):
    issues = []
    empty, finite, mx = _max_info(payload)
    got = ev.approx(built.term, built.settle(window))
    if empty:
        if got:
            issues.append("image of the empty set is nonempty")
        return issues
    if finite:
        if _fact(mx + 2) not in got:
            issues.append("factorial of the settled maximum is missing")
        if not got <= {_fact(k + 2) for k in range(mx + 1)}:
            issues.append("image contains a value that is not a factorial"
                          " of a value at or below the maximum")
        return issues
    w = _witness_ge(analyze(payload), window)
    if w is not None and max(got, default=0) < _fact(w + 2):
        issues.append("image of an unbounded set grows too slowly")
    return issues


max_to_lcm = register_reduction(Reduction(
    name="max_to_lcm", source="e_max", target="e_lcm",
    build=_build_max_factorials(),
    predict=lambda payload: ClassKey("e_lcm", (
        1 if _max_info(payload)[0]
        else (math.inf if not _max_info(payload)[1]
              else _fact(_max_info(payload)[2] + 2)))),
    gen_case=lambda rng: gen_pair_1d(rng, hi=18),
    window=64,
    validator=_validate_max_factorials,
    combinator="max_factorials",
    doc="emit factorials of running maxima; their lcm is the factorial"
        " of the true maximum",
))
register_mutant("max_to_lcm", "doubled-values",
                _build_max_factorials(scale=2))


def _build_stage_lcms(scale=1):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("stage_lcms", (term_a,),
                          (scale,) if scale != 1 else ())
        ana = analyze(payload)
        l = ana.lcm_value()

        def settle(M):
            if l is math.inf:
                w = _witness_ge(ana, M + 1)
                return sa(w if w is not None else M) + 2
            w = 0 if ana.is_empty else ana.max()
            return sa(w) + 2

        return Built(term, settle)
    return build


def _validate_stage_lcms(ev, built, payload, window):
    issues = []
    l = analyze(payload).lcm_value()
    got = ev.approx(built.term, built.settle(window))
    if l is math.inf:
        if max(got, default=0) <= window:
            issues.append("image of an unbounded-lcm set grows too slowly")
        return issues
    if l not in got:
        issues.append("settled lcm missing from the image")
    if any(l % x != 0 for x in got if x > 0):
        issues.append("image contains a value that does not divide the"
                      " settled lcm")
    return issues


lcm_to_max = register_reduction(Reduction(
    name="lcm_to_max", source="e_lcm", target="e_max",
    build=_build_stage_lcms(),
    predict=lambda payload: ClassKey("e_max", (
        ("inf",) if analyze(payload).lcm_value() is math.inf
        else ("max", analyze(payload).lcm_value()))),
    gen_case=lambda rng: gen_pair_1d(rng, hi=18),
    window=64,
    validator=_validate_stage_lcms,
    combinator="stage_lcms",
    doc="emit the running lcms; their maximum is the true lcm",
))
register_mutant("lcm_to_max", "doubled-values", _build_stage_lcms(scale=2))


# ---------------------------------------------------------------------------
# medians into almost equality


def _med_step_size(payload):
    """The step size of the limit progression, or None/'full'."""
    ana = analyze(payload)
    if ana.is_empty:
        return None
    if not ana.is_finite:
        return "full"
    xs = sorted(ana.elements())
    a, b = _two_middle(xs)
    return a + b + 2


def _emed_predict(payload):
    d = _med_step_size(payload)
    if d is None:
        return ClassKey("e0", ("fin",))
    if d == "full":
        return ClassKey("e0", ("inf", 1, frozenset({0})))
    return ClassKey("e0", ("inf", d, frozenset({0})))


def _build_median_multiples(delta=2):
    def build(payload, rng=None):
        term_a, sa, _ = compile_arg(payload, rng)
        term = Combinator("median_multiples", (term_a,), (delta,))
        ana = analyze(payload)

        def settle(M):
            if ana.is_empty:
                return M + 2
            if ana.is_finite:
                return sa(ana.max()) + 2
            return sa(M) + 2

        return Built(term, settle)
    return build


def _validate_median_multiples(ev, built, payload, window):
    issues = []
    d = _med_step_size(payload)
    s1 = built.settle(window)
    span = 50
    first = ev.approx(built.term, s1)
    state = ev._cells[built.term].state
    mult1 = state.get("mult", 0)
    fills1 = state.get("fills", 0)
    top1 = state.get("top", -1)
    done1 = set(state.get("done", ()))
    second = ev.approx(built.term, s1 + span)
    fresh = second - first
    if d is None:
        if second:
            issues.append("image of the empty set is nonempty")
        return issues
    if d == "full":
        if state.get("fills", 0) <= max(fills1, 1):
            issues.append("median of an infinite set stopped moving")
        if any(x not in second for x in range(top1 + 1)):
            issues.append("fills of an infinite-median image left gaps"
                          " below the running top")
        return issues
    xs = sorted(analyze(payload).elements())
    if state.get("mid") != _two_middle(xs):
        issues.append("running median differs from the settled median")
    if state.get("fills", 0) != fills1:
        issues.append("median changed after the settlement stage")
    expected = {d * k for k in range(mult1 + 1, mult1 + span + 1)} - done1
    if fresh != expected:
        issues.append("settled image does not continue with consecutive"
                      " multiples of the median step")
    return issues


emed_to_e0 = register_reduction(Reduction(
    name="emed_to_e0", source="e_med", target="e0",
    build=_build_median_multiples(),
    predict=_emed_predict,
    gen_case=gen_pair_1d,
    window=64,
    validator=_validate_median_multiples,
    combinator="median_multiples",
    doc="emit multiples of the running median step, refilling on every"
        " median change",
))
register_mutant("emed_to_e0", "wrong-step", _build_median_multiples(delta=3))


# ---------------------------------------------------------------------------
# cut reductions lifted from order embeddings


def el_from_embedding(point_cut):
    """Lift a point embedding between coded orders to a map on sets.

    ``point_cut(n)`` decides which target-order codes lie strictly below
    the embedded image of n; the lifted map sends a (finite) set to the
    target cut below its embedded points.  Returns a payload transform
    producing the cut's membership predicate.
    """

    def image(payload):
        ana = analyze(payload)
        if not ana.is_finite:
            raise ValueError("embedding images are computed on finite sets")
        below = [point_cut(n) for n in sorted(ana.elements())]
        return lambda l: any(b(l) for b in below)

    return image


def check_el_from_embedding(point_cut, source_rid: str, pairs,
                            window: int = 128) -> list:
    """Issues with the lifted map as a reduction on the given pairs.

    The source verdict must match extensional equality of the image
    cuts on [0, window]; a mismatch means the embedding fails to be cut
    order preserving or cut-injective on this corpus and is reported as
    such.
    """
    from ..relations import decide
    image = el_from_embedding(point_cut)
    issues = []
    for a, b in pairs:
        want = decide(source_rid, a, b)
        fa, fb = image(a), image(b)
        got = all(fa(l) == fb(l) for l in range(window + 1))
        if want != got:
            issues.append(
                f"embedding violation on {a!r} / {b!r}: source verdict"
                f" {want}, image-cut equality {got}")
    return issues


def cut_downward_issues(elems, less, window: int) -> list:
    """A settled cut truncation must be downward closed on its window."""
    inside = [l for l in elems if l <= window]
    issues = []
    for l in inside:
        for lp in range(window + 1):
            if less(lp, l) and lp not in elems:
                issues.append(f"{lp} precedes enumerated {l} but is missing")
                if len(issues) >= 3:
                    return issues
    return issues
