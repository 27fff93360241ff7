"""Finite truncated power series in the perturbation strength.

Coefficients are :class:`~qmetric.algebra.OperatorExpr`; the grading index
is the power of the (real) expansion parameter.  All binary operations
truncate to the smaller of the two orders, which is exactly the behaviour
needed when composing perturbative conjugations.
"""

from __future__ import annotations

from typing import Mapping

from .algebra import OperatorExpr


class SeriesExpr:
    __slots__ = ("_order", "_c")

    def __init__(self, order: int, coeffs: Mapping[int, OperatorExpr] | None = None):
        if order < 0:
            raise ValueError("series order must be non-negative")
        self._order = order
        c: dict[int, OperatorExpr] = {}
        for j, expr in (coeffs or {}).items():
            if not (0 <= j <= order):
                raise ValueError(f"coefficient index {j} outside series order {order}")
            if not expr.is_zero():
                c[j] = expr
        self._c = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "SeriesExpr":
        return cls(order, {})

    @classmethod
    def of(cls, expr: OperatorExpr, j: int = 0, *, order: int) -> "SeriesExpr":
        return cls(order, {j: expr})

    # -- basic access --------------------------------------------------
    @property
    def order(self) -> int:
        return self._order

    def coeff(self, j: int) -> OperatorExpr:
        if not (0 <= j <= self._order):
            raise ValueError(f"coefficient index {j} outside series order {self._order}")
        return self._c.get(j, OperatorExpr.zero())

    def indices(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def truncate(self, order: int) -> "SeriesExpr":
        return SeriesExpr(order, {j: e for j, e in self._c.items() if j <= order})

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "SeriesExpr") -> "SeriesExpr":
        n = min(self._order, other._order)
        out = {j: self.coeff(j) + other.coeff(j)
               for j in range(n + 1)
               if j in self._c or j in other._c}
        return SeriesExpr(n, out)

    def __neg__(self) -> "SeriesExpr":
        return SeriesExpr(self._order, {j: -e for j, e in self._c.items()})

    def __sub__(self, other: "SeriesExpr") -> "SeriesExpr":
        return self + (-other)

    def scale(self, s) -> "SeriesExpr":
        return SeriesExpr(self._order, {j: e.scale(s) for j, e in self._c.items()})

    def __mul__(self, other: "SeriesExpr") -> "SeriesExpr":
        n = min(self._order, other._order)
        out: dict[int, OperatorExpr] = {}
        for j1, e1 in self._c.items():
            if j1 > n:
                continue
            for j2, e2 in other._c.items():
                j = j1 + j2
                if j > n:
                    continue
                prod = e1 * e2
                out[j] = out[j] + prod if j in out else prod
        return SeriesExpr(n, out)

    def adjoint(self) -> "SeriesExpr":
        return SeriesExpr(self._order, {j: e.adjoint() for j, e in self._c.items()})

    def substitute(self, values: Mapping[str, object]) -> "SeriesExpr":
        return SeriesExpr(self._order, {j: e.substitute(values) for j, e in self._c.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesExpr):
            return NotImplemented
        if self._order != other._order:
            return False
        return all(self.coeff(j) == other.coeff(j)
                   for j in set(self._c) | set(other._c))

    def __hash__(self) -> int:
        return hash((self._order, frozenset((j, e) for j, e in self._c.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{j}: {e!r}" for j, e in sorted(self._c.items()))
        return f"SeriesExpr(order={self._order}, {{{body}}})"


def series_commutator(a: SeriesExpr, b: SeriesExpr) -> SeriesExpr:
    return a * b - b * a


def nested_series_commutator(a: SeriesExpr, b: SeriesExpr, k: int) -> SeriesExpr:
    """k-fold commutator [...[[a, b], b], ..., b]."""
    out = a
    for _ in range(k):
        out = series_commutator(out, b)
    return out
