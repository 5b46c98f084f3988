"""Stage-monotone set programs and their evaluator.

A program is a closed term built from four constructors:

* ``Script``   -- a finite, hard-coded enumeration schedule;
* ``FullColumnOf(c)`` -- the infinite column {<c,k> : k}, paced one
  element per stage;
* ``Combinator(cid, args, params)`` -- a named construction applied to
  argument programs (the constructions register themselves in
  ``COMBINATORS``);
* ``Indexed(code)`` -- indirection through the program numbering.

Evaluation is stage-by-stage and incremental.  For every term the
evaluator remembers the stage at which each element first appeared, so
``approx(P, s)`` is monotone in ``s`` by construction and re-evaluation
is cheap.  A budget on primitive steps turns runaway simulations into a
``BudgetExceeded`` error instead of a hang.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .pairing import pair, unpair

DEFAULT_BUDGET = 10 ** 6


class BudgetExceeded(Exception):
    """Raised when an approx() call exceeds the configured step ceiling."""


@dataclass(frozen=True)
class Script:
    """A finite enumeration schedule.

    ``entries`` is canonical: stages strictly increase, every stage set
    is a nonempty frozenset, and no element appears at two stages.  Use
    the ``script()`` helper to build one from arbitrary (stage, set)
    pairs.
    """

    entries: tuple  # tuple of (stage, frozenset)


@dataclass(frozen=True)
class FullColumnOf:
    c: int


@dataclass(frozen=True)
class Combinator:
    cid: str
    args: tuple = ()
    params: tuple = ()
    # Semantically inert tag.  It exists so that the program numbering
    # can be a genuine bijection (every combinator occupies infinitely
    # many codes, one per variant).
    variant: int = 0


@dataclass(frozen=True)
class Indexed:
    code: int


Term = Union[Script, FullColumnOf, Combinator, Indexed]


def script(pairs: Iterable) -> Script:
    """Canonicalize (stage, elements) pairs into a Script term."""
    first = {}
    for stage, elems in pairs:
        if stage < 0:
            raise ValueError("negative stage")
        for x in elems:
            if x < 0:
                raise ValueError("negative element")
            if x not in first or stage < first[x]:
                first[x] = stage
    by_stage = {}
    for x, stage in first.items():
        by_stage.setdefault(stage, set()).add(x)
    entries = tuple(
        (stage, frozenset(by_stage[stage])) for stage in sorted(by_stage)
    )
    return Script(entries)


EMPTY = Script(())


@dataclass
class CombinatorDef:
    """A registered construction.

    ``step(ev, args, params, s, state)`` is called once per stage, in
    order, and returns the elements entering the output at stage ``s``.
    It may query argument programs only at stages <= s.
    """

    cid: str
    step: Callable
    make_state: Callable = dict
    arity: int = 1


COMBINATORS: dict = {}


def register_combinator(cid: str, step: Callable, make_state: Callable = dict,
                        arity: int = 1) -> None:
    if cid in COMBINATORS:
        if COMBINATORS[cid].step is step:
            return  # idempotent re-registration
        raise ValueError(f"combinator {cid!r} already registered")
    COMBINATORS[cid] = CombinatorDef(cid, step, make_state, arity)


def combinator_ids() -> list:
    """Registry ids in the fixed order used by the program numbering."""
    return sorted(COMBINATORS)


def arg(args: tuple, i: int) -> Term:
    """The i-th argument of a combinator, defaulting to the empty program.

    Decoded combinator terms can carry any number of arguments, so the
    constructions index their arguments through this total accessor.
    """
    return args[i] if 0 <= i < len(args) else EMPTY


def param(params: tuple, i: int, default: int = 0) -> int:
    return params[i] if 0 <= i < len(params) else default


@dataclass
class _Cell:
    state: dict
    last_stage: int = -1
    entries: dict = field(default_factory=dict)  # element -> first stage


class Evaluator:
    """Caching, budgeted evaluator for program terms.

    All evaluation is deterministic given (term, stage); the cache only
    memoizes it.  One evaluator instance must not be shared between
    threads.
    """

    def __init__(self, budget: Optional[int] = None):
        if budget is None:
            budget = int(os.environ.get("CELAB_STEP_BUDGET", DEFAULT_BUDGET))
        self.budget = budget
        self._cells: dict = {}
        self._steps = 0
        self._depth = 0

    def tick(self, n: int = 1) -> None:
        """Charge n primitive steps against the current approx() call."""
        self._steps += n
        if self._steps > self.budget:
            raise BudgetExceeded(
                f"exceeded {self.budget} primitive steps"
            )

    def _cell(self, term: Term) -> _Cell:
        cell = self._cells.get(term)
        if cell is None:
            if isinstance(term, Combinator):
                cdef = COMBINATORS.get(term.cid)
                state = cdef.make_state() if cdef else {}
            else:
                state = {}
            cell = _Cell(state=state)
            self._cells[term] = cell
        return cell

    def _stage_elements(self, term: Term, s: int, cell: _Cell) -> Iterable:
        if isinstance(term, Script):
            for stage, elems in term.entries:
                if stage == s:
                    return elems
            return ()
        if isinstance(term, FullColumnOf):
            return (pair(term.c, s),)
        if isinstance(term, Combinator):
            cdef = COMBINATORS.get(term.cid)
            if cdef is None:
                return ()
            return cdef.step(self, term.args, term.params, s, cell.state)
        if isinstance(term, Indexed):
            from . import numbering
            inner = cell.state.get("inner")
            if inner is None:
                inner = numbering.decode(term.code)
                cell.state["inner"] = inner
            prev = self.approx(inner, s - 1) if s > 0 else frozenset()
            return self.approx(inner, s) - prev
        raise TypeError(f"not a program term: {term!r}")

    def _advance(self, term: Term, s: int) -> _Cell:
        cell = self._cell(term)
        while cell.last_stage < s:
            t = cell.last_stage + 1
            self.tick()
            for x in self._stage_elements(term, t, cell):
                self.tick()
                if x not in cell.entries:
                    cell.entries[x] = t
            cell.last_stage = t
        return cell

    def approx(self, term: Term, s: int) -> frozenset:
        """The stage-s approximation of the set enumerated by term."""
        if s < 0:
            return frozenset()
        top = self._depth == 0
        if top:
            self._steps = 0
        self._depth += 1
        try:
            cell = self._advance(term, s)
        finally:
            self._depth -= 1
        return frozenset(
            x for x, t in cell.entries.items() if t <= s
        )

    def entry_stage(self, term: Term, x: int, s: int) -> Optional[int]:
        """First stage <= s at which x appeared, or None."""
        cell = self._advance(term, s)
        t = cell.entries.get(x)
        return t if t is not None and t <= s else None

    def column(self, term: Term, c: int, s: int) -> frozenset:
        """{k : <c,k> in approx(term, s)}."""
        out = []
        for x in self.approx(term, s):
            cc, k = unpair(x)
            if cc == c:
                out.append(k)
        return frozenset(out)


def columns_of(elems: Iterable) -> dict:
    """Split a set of pair codes into {column: frozenset(rows)}."""
    cols = {}
    for x in elems:
        c, k = unpair(x)
        cols.setdefault(c, set()).add(k)
    return {c: frozenset(v) for c, v in cols.items()}
