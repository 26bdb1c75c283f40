import pytest

from cubicpancake import experiments


@pytest.fixture(scope="session")
def oracle():
    """One shared order-oracle cache for every oracle-backed test."""
    return experiments.GenerationOracle()


@pytest.fixture(scope="session")
def scan_4_10(oracle):
    """Full cross-checked scan over 4 <= n <= 10, shared across modules."""
    config = experiments.ScanConfig(n_min=4, n_max=10, oracle="auto")
    return experiments.scan(config, oracle)
