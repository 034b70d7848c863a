"""Truncated Laurent series in u = 1/t.

A series is ``sum_{i>=1} poly[i] t**i + sum_{k=0}^{order} tail[k] t**(-k)``.
Coefficients are rationals or :class:`~effint.ring.GradedElement`s.  The
tail is exact through ``t**(-order)``; products with a polynomial part lose
precision accordingly, and the result records the reduced order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import RingMismatchError
from .ring import GradedElement

DEFAULT_ORDER = 24


def default_order() -> int:
    return int(os.environ.get("EFFINT_TRUNCATION", DEFAULT_ORDER))


def _ring_of(x):
    return x.ring if isinstance(x, GradedElement) else None


def _zero_like(x):
    return x.ring.zero if isinstance(x, GradedElement) else Fraction(0)


def _one_like(x):
    return x.ring.one if isinstance(x, GradedElement) else Fraction(1)


def _is_zero(x) -> bool:
    return not x


@dataclass(frozen=True)
class LaurentSeries:
    poly: tuple  # poly[i] is the coefficient of t**(i+1)
    tail: tuple  # tail[k] is the coefficient of t**(-k)
    zero: object

    def __post_init__(self):
        ring = _ring_of(self.zero)
        for c in self.poly + self.tail:
            if _ring_of(c) is not ring:
                raise RingMismatchError("series coefficient outside the declared ring")

    @property
    def order(self) -> int:
        return len(self.tail) - 1

    @classmethod
    def constant(cls, value, order: int) -> "LaurentSeries":
        zero = _zero_like(value)
        return cls((), (value,) + (zero,) * order, zero)

    def coefficient(self, power: int):
        """Coefficient of ``t**power``."""
        if power >= 1:
            return self.poly[power - 1] if power <= len(self.poly) else self.zero
        if -power > self.order:
            raise ValueError(f"t^{power} lies beyond the truncation order {self.order}")
        return self.tail[-power]

    def _check(self, other: "LaurentSeries"):
        if _ring_of(self.zero) is not _ring_of(other.zero):
            raise RingMismatchError("series over different coefficient rings")

    def truncate(self, order: int) -> "LaurentSeries":
        return LaurentSeries(self.poly, self.tail[: order + 1], self.zero)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        n = max(len(self.poly), len(other.poly))
        poly = tuple(
            (self.poly[i] if i < len(self.poly) else self.zero)
            + (other.poly[i] if i < len(other.poly) else self.zero)
            for i in range(n)
        )
        order = min(self.order, other.order)
        tail = tuple(self.tail[k] + other.tail[k] for k in range(order + 1))
        return LaurentSeries(_strip(poly), tail, self.zero)

    def __neg__(self):
        return LaurentSeries(tuple(-c for c in self.poly), tuple(-c for c in self.tail), self.zero)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        return LaurentSeries(_strip(tuple(x * c for x in self.poly)), tuple(x * c for x in self.tail), self.zero)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by ``t**n``."""
        full = {i + 1: c for i, c in enumerate(self.poly)}
        full.update({-k: c for k, c in enumerate(self.tail)})
        low = -self.order + n
        moved = {p + n: c for p, c in full.items()}
        top = max([p for p in moved if p >= 1], default=0)
        poly = tuple(moved.get(p, self.zero) for p in range(1, top + 1))
        order = -low
        if order < 0:
            raise ValueError("shift leaves no exact tail coefficients")
        tail = tuple(moved.get(-k, self.zero) for k in range(order + 1))
        return LaurentSeries(_strip(poly), tail, self.zero)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._check(other)
        order = min(self.order - len(other.poly), other.order - len(self.poly))
        if order < 0:
            raise ValueError("product has no exact tail coefficients at this truncation")
        a = {i + 1: c for i, c in enumerate(self.poly)}
        a.update({-k: c for k, c in enumerate(self.tail)})
        b = {i + 1: c for i, c in enumerate(other.poly)}
        b.update({-k: c for k, c in enumerate(other.tail)})
        out: dict[int, object] = {}
        for p, x in a.items():
            if _is_zero(x):
                continue
            for q, y in b.items():
                if p + q < -order or _is_zero(y):
                    continue
                out[p + q] = out.get(p + q, self.zero) + x * y
        top = max([p for p in out if p >= 1], default=0)
        poly = tuple(out.get(p, self.zero) for p in range(1, top + 1))
        tail = tuple(out.get(-k, self.zero) for k in range(order + 1))
        return LaurentSeries(_strip(poly), tail, self.zero)

    def equals(self, other: "LaurentSeries", order: int | None = None) -> bool:
        """Coefficientwise equality through ``t**(-order)``."""
        self._check(other)
        if order is None:
            order = min(self.order, other.order)
        if order > min(self.order, other.order):
            raise ValueError("comparison order exceeds the known coefficients")
        n = max(len(self.poly), len(other.poly))
        return all(self.coefficient(p) == other.coefficient(p) for p in range(-order, n + 1))

    def map(self, fn: Callable) -> "LaurentSeries":
        """Apply a linear map to every coefficient (e.g. a push-forward)."""
        return LaurentSeries(_strip(tuple(fn(c) for c in self.poly)), tuple(fn(c) for c in self.tail), fn(self.zero))


def _strip(poly: tuple) -> tuple:
    poly = list(poly)
    while poly and _is_zero(poly[-1]):
        poly.pop()
    return tuple(poly)


def expand_pole(sign: str, a, order: int | None = None) -> LaurentSeries:
    """Expand ``1/(t - a)`` (sign ``'+'``) or ``1/(-t - a)`` (sign ``'-'``) in 1/t."""
    if order is None:
        order = default_order()
    if isinstance(a, int):
        a = Fraction(a)
    zero, one = _zero_like(a), _one_like(a)
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '+' or '-'")
    ratio = a if sign == "+" else -a
    lead = one if sign == "+" else -one
    tail = [zero]
    power = one
    for _ in range(order):
        tail.append(lead * power)
        power = power * ratio
    return LaurentSeries((), tuple(tail[: order + 1]), zero)


def mul(x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    return x * y


def double_pole_closed_form(a, b, order: int) -> LaurentSeries:
    """``(1/t) * sum_{k>=1} t**-k sum_{k'=0}^{k-1} a**k' b**(k-1-k')``."""
    if isinstance(a, int):
        a, b = Fraction(a), Fraction(b)
    zero = _zero_like(a)
    tail = [zero, zero]
    for k in range(1, order):
        s = zero
        for kp in range(k):
            s = s + a**kp * b ** (k - 1 - kp)
        tail.append(s)
    return LaurentSeries((), tuple(tail[: order + 1]), zero)


def verify_double_pole(a, b, order: int | None = None) -> bool:
    """Check the product of two simple poles against the double-sum formula."""
    if order is None:
        order = default_order()
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    product = expand_pole("+", a, order) * expand_pole("+", b, order)
    return product.equals(double_pole_closed_form(a, b, order), order)


def product(series: Sequence[LaurentSeries]) -> LaurentSeries:
    if not series:
        raise ValueError("empty product")
    out = series[0]
    for s in series[1:]:
        out = out * s
    return out
