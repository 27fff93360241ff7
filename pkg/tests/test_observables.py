"""Dressed observables, the equivalent Hermitian Hamiltonian, and the
classical limit."""

from fractions import Fraction as F

import pytest

from qmetric import reference as ref
from qmetric.algebra import (OperatorExpr, commutator, from_symmetric_form,
                             h0, h1)
from qmetric.errors import EngineError
from qmetric.observables import (classical_limit, conjugate_by_sqrt_metric,
                                 equivalent_hermitian, observable_p,
                                 observable_x)
from qmetric.params import ParamPoly
from qmetric.perturbation import MetricParams, derive_metric_series
from qmetric.rational import GaussianRational
from qmetric.series import SeriesExpr, series_commutator

L1, K1 = ParamPoly.symbol("l1"), ParamPoly.symbol("k1")
L2, K2 = ParamPoly.symbol("l2"), ParamPoly.symbol("k2")
I = GaussianRational(0, 1)


# -- building-block commutators -------------------------------------------------

def test_first_order_commutators(formal3):
    q1 = formal3.q(1)
    x1, x3 = OperatorExpr.x_power(1), OperatorExpr.x_power(3)
    p1 = OperatorExpr.p_power(1)
    assert commutator(x1, q1) == from_symmetric_form(ref.comm_x_q1_items(L1, K1))
    assert commutator(p1, q1) == from_symmetric_form(ref.comm_p_q1_items(L1, K1))
    assert commutator(x3, q1) == from_symmetric_form(ref.comm_x3_q1_items(L1, K1))
    assert commutator(x3, formal3.q(2)) == from_symmetric_form(
        ref.comm_x3_q2_items(L2, K2))


# -- dressed position and momentum ----------------------------------------------

def test_position_dressing(formal3):
    x = observable_x(formal3)
    assert x.coeff(0) == OperatorExpr.x_power(1)
    assert x.coeff(1) == from_symmetric_form(ref.x_order1_items(L1, K1))


def test_momentum_dressing(formal3):
    p = observable_p(formal3)
    assert p.coeff(0) == OperatorExpr.p_power(1)
    assert p.coeff(1) == from_symmetric_form(ref.p_order1_items(L1, K1))


def test_canonical_pair(formal3):
    got = series_commutator(observable_x(formal3), observable_p(formal3))
    assert got == SeriesExpr.of(OperatorExpr.one().scale(I), order=3)


def test_canonical_pair_numeric_fourth_order():
    params = MetricParams.numeric(4, lam=[2, F(-1, 3), 0, 1],
                                  kap=[F(1, 2), 0, 5, F(-2, 7)])
    qs = derive_metric_series(params)
    got = series_commutator(observable_x(qs), observable_p(qs))
    assert got == SeriesExpr.of(OperatorExpr.one().scale(I), order=4)


def test_dressing_round_trip(formal3):
    q = SeriesExpr(3, {j: formal3.q(j) for j in (1, 2, 3)})
    for seed in (OperatorExpr.x_power(1), OperatorExpr.p_power(1),
                 h0() + h1()):
        a = SeriesExpr.of(seed, order=3)
        dressed = conjugate_by_sqrt_metric(a, q, sign=1)
        assert conjugate_by_sqrt_metric(dressed, q, sign=-1) == a


def test_sign_validation(formal3):
    q = SeriesExpr(3, {j: formal3.q(j) for j in (1, 2, 3)})
    with pytest.raises(ValueError):
        conjugate_by_sqrt_metric(SeriesExpr.of(h0(), order=3), q, sign=2)


# -- equivalent Hermitian Hamiltonian --------------------------------------------

def test_hermitian_hamiltonian(formal3):
    h = equivalent_hermitian(formal3)
    assert h.order == 4
    assert h.coeff(0) == h0()
    assert h.coeff(1).is_zero()
    assert h.coeff(2) == from_symmetric_form(ref.h_order2_items(L1, K1))
    assert h.coeff(3) == from_symmetric_form(ref.h_order3_items(L2, K2))
    for j in range(5):
        assert h.coeff(j).is_hermitian()


def test_hermitian_hamiltonian_undresses_back(formal3):
    # e^{Q/2} h e^{-Q/2} reproduces H through the derived order
    h = equivalent_hermitian(formal3)
    q = SeriesExpr(3, {j: formal3.q(j) for j in (1, 2, 3)})
    truncated = SeriesExpr(3, {j: h.coeff(j) for j in range(4)})
    assert conjugate_by_sqrt_metric(truncated, q, sign=1) == SeriesExpr(
        3, {0: h0(), 1: h1()})


# -- classical limit --------------------------------------------------------------

def test_classical_hamiltonian_second_order():
    qs = derive_metric_series(MetricParams.formal(2))
    hc = classical_limit(equivalent_hermitian(qs), mass=F(1))
    assert sorted(hc.terms) == sorted(tuple(t) for t in ref.CLASSICAL_TERMS)
    assert all(isinstance(c, F) for _, _, _, c, _ in hc.terms)
    assert hc.term_map() == {(0, 0, 2): (F(1, 2), -1), (2, 6, -2): (F(3, 8), 1)}


def test_classical_hamiltonian_next_correction(formal3):
    hc = classical_limit(equivalent_hermitian(formal3), mass=F(1))
    extra = set(hc.terms) - {tuple(t) for t in ref.CLASSICAL_TERMS}
    assert extra == {(4, 12, -6, F(31, 256), 3)}


def test_classical_evaluation():
    qs = derive_metric_series(MetricParams.formal(2))
    hc = classical_limit(equivalent_hermitian(qs), mass=F(2))
    x, p, eps = 1.5, 0.7, 0.1
    want = p * p / 4 + 0.375 * 2 * eps ** 2 * x ** 6 / p ** 2
    assert hc.evaluate(x, p, eps) == pytest.approx(want, rel=1e-14)
    assert hc.d_dx(x, p, eps) == pytest.approx(
        6 * 0.375 * 2 * eps ** 2 * x ** 5 / p ** 2, rel=1e-14)
    assert hc.d_dp(x, p, eps) == pytest.approx(
        p / 2 - 2 * 0.375 * 2 * eps ** 2 * x ** 6 / p ** 3, rel=1e-14)


def test_classical_rejects_non_limits():
    parity = SeriesExpr(1, {1: OperatorExpr.monomial(1, 3, 0, True)})
    with pytest.raises(EngineError):
        classical_limit(parity)
    free = SeriesExpr(0, {0: OperatorExpr.monomial(ParamPoly.symbol("l1"),
                                                   0, 2, False)})
    with pytest.raises(EngineError):
        classical_limit(free)
    heavy = SeriesExpr(0, {0: OperatorExpr.p_power(4)})
    with pytest.raises(EngineError):
        classical_limit(heavy)
