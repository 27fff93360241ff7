import pytest

from qmetric.perturbation import MetricParams, derive_metric_series


@pytest.fixture(scope="session")
def formal3():
    """The fully formal third-order derivation, shared across modules."""
    return derive_metric_series(MetricParams.formal(3))


@pytest.fixture(scope="session")
def formal4():
    return derive_metric_series(MetricParams.formal(4))
