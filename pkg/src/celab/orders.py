"""Coded linear orders: omega, its reverse, and the rationals.

Each order interprets the naturals as its domain and supplies an exact
``less`` comparator.  The rational order uses a bijection between the
naturals and the rationals built on the Calkin-Wilf tree, so comparisons
and cuts are exact (Fraction arithmetic, no floats).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _calkin_wilf(k: int) -> Fraction:
    """The k-th positive rational in Calkin-Wilf (tree path) order."""
    num, den = 1, 1
    for bit in bin(k + 1)[3:]:
        if bit == "1":
            num += den
        else:
            den += num
    return Fraction(num, den)


def _calkin_wilf_index(q: Fraction) -> int:
    """Inverse of _calkin_wilf on positive rationals."""
    num, den = q.numerator, q.denominator
    bits = []
    while (num, den) != (1, 1):
        if num > den:
            bits.append("1")
            num -= den
        else:
            bits.append("0")
            den -= num
    return int("1" + "".join(reversed(bits)), 2) - 1


def rational_from_code(code: int) -> Fraction:
    """0 <-> 0, odd 2k+1 <-> k-th positive, even 2k+2 <-> k-th negative."""
    if code == 0:
        return Fraction(0)
    k, rem = divmod(code - 1, 2)
    q = _calkin_wilf(k)
    return q if rem == 0 else -q


def rational_to_code(q: Fraction) -> int:
    if q == 0:
        return 0
    k = _calkin_wilf_index(abs(q))
    return 2 * k + 1 if q > 0 else 2 * k + 2


@dataclass(frozen=True)
class CodedOrder:
    name: str
    less: object  # Callable[[int, int], bool], strict order on codes


OMEGA = CodedOrder("omega", lambda a, b: a < b)
OMEGA_STAR = CodedOrder("omega_star", lambda a, b: a > b)
RATIONALS = CodedOrder(
    "rationals",
    lambda a, b: rational_from_code(a) < rational_from_code(b),
)

ORDERS = {o.name: o for o in (OMEGA, OMEGA_STAR, RATIONALS)}


def order_sum(l1: CodedOrder, l2: CodedOrder) -> CodedOrder:
    """L1 followed by L2, with L1 on the even codes and L2 on the odd
    codes (code 2a is the L1-element a, code 2b+1 the L2-element b)."""

    def less(x: int, y: int) -> bool:
        if x % 2 == 0 and y % 2 == 0:
            return l1.less(x // 2, y // 2)
        if x % 2 == 1 and y % 2 == 1:
            return l2.less(x // 2, y // 2)
        return x % 2 == 0  # every L1 element precedes every L2 element

    return CodedOrder(f"sum({l1.name},{l2.name})", less)


def order_reverse(l: CodedOrder) -> CodedOrder:
    return CodedOrder(f"reverse({l.name})", lambda a, b: l.less(b, a))


def order_from_spec(spec: str) -> CodedOrder:
    """Parse a nested constructor expression like
    ``sum(omega,reverse(omega))`` into a coded order."""
    spec = spec.strip()
    if spec in ORDERS:
        return ORDERS[spec]
    if spec.startswith("reverse(") and spec.endswith(")"):
        return order_reverse(order_from_spec(spec[len("reverse("):-1]))
    if spec.startswith("sum(") and spec.endswith(")"):
        body = spec[len("sum("):-1]
        depth = 0
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return order_sum(order_from_spec(body[:i]),
                                 order_from_spec(body[i + 1:]))
        raise ValueError(f"missing summand in {spec!r}")
    raise ValueError(f"not an order spec: {spec!r}")
