"""Package-level surface: everything advertised must resolve."""

import qmetric


def test_all_names_resolve():
    missing = [n for n in qmetric.__all__ if not hasattr(qmetric, n)]
    assert missing == []


def test_version():
    assert qmetric.__version__.count(".") == 2


def test_backend_is_one_of_the_two():
    assert qmetric.backend_name() in ("python", "compiled")
