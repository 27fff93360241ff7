"""The compiled arithmetic core must agree with the pure-Python twin."""

import pytest
from hypothesis import given, strategies as st

from qmetric import _core_py

compiled = pytest.importorskip("qmetric._core",
                               reason="compiled core not built")


def test_names():
    assert _core_py.BACKEND_NAME == "python"
    assert compiled.BACKEND_NAME == "compiled"


ints = st.integers(-999, 999)
dens = st.integers(1, 99)


@st.composite
def scalars(draw):
    return _core_py.q_make(draw(ints), draw(dens), draw(ints), draw(dens))


@given(scalars(), scalars())
def test_scalar_ops_agree(a, b):
    assert compiled.q_make(*a[:2], *a[2:]) == a
    assert compiled.q_add(a, b) == _core_py.q_add(a, b)
    assert compiled.q_mul(a, b) == _core_py.q_mul(a, b)
    assert compiled.q_neg(a) == _core_py.q_neg(a)
    assert compiled.q_conj(a) == _core_py.q_conj(a)
    assert compiled.q_is_zero(a) == _core_py.q_is_zero(a)


@st.composite
def polys(draw):
    out = {}
    for _ in range(draw(st.integers(0, 3))):
        ev = tuple(sorted((draw(st.integers(0, 5)), draw(st.integers(1, 3)))
                          for _ in range(draw(st.integers(0, 2)))))
        c = draw(scalars())
        if not _core_py.q_is_zero(c):
            out[ev] = c
    return out


@given(polys(), polys())
def test_poly_ops_agree(a, b):
    assert compiled.poly_add(a, b) == _core_py.poly_add(a, b)
    assert compiled.poly_mul(a, b) == _core_py.poly_mul(a, b)
    assert compiled.poly_neg(a) == _core_py.poly_neg(a)
    assert compiled.poly_conj(a) == _core_py.poly_conj(a)


@st.composite
def op_tables(draw):
    out = {}
    for _ in range(draw(st.integers(0, 3))):
        key = (draw(st.integers(0, 3)), draw(st.integers(-3, 3)),
               draw(st.integers(0, 1)))
        p = draw(polys())
        if p:
            out[key] = p
    return out


@given(op_tables(), op_tables(), scalars())
def test_expr_ops_agree(a, b, c):
    assert compiled.expr_add(a, b) == _core_py.expr_add(a, b)
    assert compiled.expr_mul(a, b) == _core_py.expr_mul(a, b)
    assert compiled.expr_scale(a, c) == _core_py.expr_scale(a, c)


def test_backend_env_selection(monkeypatch):
    # the selected backend is fixed at import; check the module-level name
    from qmetric import backend
    assert backend.backend_name() in ("python", "compiled")
