"""Physical observables, the equivalent Hermitian Hamiltonian, and the
classical limit.

Conjugation by the metric square root is carried out order by order on
formal power series of operators: e^{sQ/2} A e^{-sQ/2} =
sum_k (s/2)^k/k! ad_Q^k(A), which terminates at each series order
because Q starts at order one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import OperatorExpr, h0, h1, symmetric_form
from .errors import EngineError
from .params import ParamPoly
from .perturbation import QSeries, extend_one_order
from .rational import GaussianRational
from .series import SeriesExpr, series_commutator


def conjugate_by_sqrt_metric(a: SeriesExpr, q: SeriesExpr, sign: int = 1) -> SeriesExpr:
    """e^{sign*Q/2} A e^{-sign*Q/2} truncated to the order of `a`.

    sign=+1 dresses a bare operator into its physical counterpart;
    sign=-1 undresses (used for the Hamiltonian).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    order = a.order
    out = a
    term = a
    for k in range(1, order + 1):
        term = series_commutator(q, term)
        coeff = GaussianRational(Fraction(sign ** k, 2 ** k * math.factorial(k)))
        out = out + term.scale(coeff)
    return out


def _q_series(qs: QSeries, order: int) -> SeriesExpr:
    data = {j: qs.q(j) for j in range(1, min(qs.params.order, order) + 1)}
    return SeriesExpr(order, data)


def observable_x(qs: QSeries) -> SeriesExpr:
    """Physical position through the derived order."""
    n = qs.params.order
    x = SeriesExpr.of(OperatorExpr.x_power(1), order=n)
    return conjugate_by_sqrt_metric(x, _q_series(qs, n), sign=1)


def observable_p(qs: QSeries) -> SeriesExpr:
    """Physical momentum through the derived order."""
    n = qs.params.order
    p = SeriesExpr.of(OperatorExpr.p_power(1), order=n)
    return conjugate_by_sqrt_metric(p, _q_series(qs, n), sign=1)


def equivalent_hermitian(qs: QSeries) -> SeriesExpr:
    """Hermitian counterpart of H, one order beyond the derived metric.

    The order-(N+1) coefficient only involves the canonical part of the
    next metric order, which is fully determined by the first N; the
    extension is computed internally with zero free parameters.
    """
    n = qs.params.order
    ext = extend_one_order(qs)
    coeffs = {j: qs.q(j) for j in range(1, n + 1)}
    coeffs[n + 1] = ext
    q = SeriesExpr(n + 1, coeffs)
    ham = SeriesExpr(n + 1, {0: h0(), 1: h1()})
    h = conjugate_by_sqrt_metric(ham, q, sign=-1)
    if not h.coeff(1).is_zero():
        raise EngineError("first-order term of the dressed Hamiltonian must vanish")
    for j in range(h.order + 1):
        if not h.coeff(j).is_hermitian():
            raise EngineError(f"dressed Hamiltonian not Hermitian at order {j}")
    return h


@dataclass(frozen=True)
class ClassicalHamiltonian:
    """Polynomial classical Hamiltonian sum of c * eps^j * m^mpow * x^a p^b."""

    mass: Fraction
    terms: tuple  # of (order j, x power a, p power b, Fraction coeff, mass power)

    def evaluate(self, x: float, p: float, epsilon: float) -> float:
        total = 0.0
        for j, a, b, c, mpow in self.terms:
            total += float(c) * epsilon ** j * float(self.mass) ** mpow * x ** a * p ** b
        return total

    def d_dx(self, x: float, p: float, epsilon: float) -> float:
        total = 0.0
        for j, a, b, c, mpow in self.terms:
            if a:
                total += float(c) * a * epsilon ** j * float(self.mass) ** mpow \
                    * x ** (a - 1) * p ** b
        return total

    def d_dp(self, x: float, p: float, epsilon: float) -> float:
        total = 0.0
        for j, a, b, c, mpow in self.terms:
            if b:
                total += float(c) * b * epsilon ** j * float(self.mass) ** mpow \
                    * x ** a * p ** (b - 1)
        return total

    def term_map(self) -> dict:
        return {(j, a, b): (c, mpow) for j, a, b, c, mpow in self.terms}


def classical_limit(h: SeriesExpr, mass: Fraction = Fraction(1)) -> ClassicalHamiltonian:
    """hbar -> 0 limit of the dressed Hamiltonian with units restored.

    Restoring dimensions sends the coefficient of x^a p^b eps^j to
    m^(j-1) hbar^w with w = 2 - b - 2j; scale homogeneity (a - b = 5j - 2)
    cancels the arbitrary length.  Only w = 0 terms survive; w < 0 would
    diverge and is rejected as an internal error, as is any surviving
    free parameter or parity term.
    """
    collected = []
    for j in range(h.order + 1):
        expr = h.coeff(j)
        if expr.is_zero():
            continue
        for g, b, parity, poly in symmetric_form(expr):
            w = 2 - b - 2 * j
            if w > 0:
                continue
            if w < 0:
                raise EngineError(f"negative hbar weight at order {j}")
            if parity:
                raise EngineError(f"parity term survives the classical limit at order {j}")
            if not poly.is_constant():
                raise EngineError(f"free parameter survives the classical limit at order {j}")
            c = poly.constant_value()
            if not c.is_real():
                raise EngineError(f"imaginary classical coefficient at order {j}")
            val = c.re * (2 if g >= 1 else 1)  # anticommutator halves collapse
            collected.append((j, g, b, val, j - 1))
    return ClassicalHamiltonian(mass=Fraction(mass), terms=tuple(collected))
