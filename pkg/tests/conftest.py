import pytest

from cryptomix import (
    AttackMethod,
    AttackerParams,
    EncryptionAlgorithm,
    load_bundled_scenario,
)


@pytest.fixture(scope="session")
def bundled():
    return load_bundled_scenario()


@pytest.fixture(scope="session")
def instance(bundled):
    return bundled[0]


@pytest.fixture(scope="session")
def scenarios(bundled):
    return bundled[1]


WORKED_METHODS = (
    AttackMethod("a1", 0.20, 100.0),
    AttackMethod("a2", 0.35, 200.0),
    AttackMethod("a3", 0.42, 280.0),
    AttackMethod("a4", 0.25, 120.0),
)


@pytest.fixture
def worked_algorithm():
    return EncryptionAlgorithm(
        id="worked",
        op_cost=0.0,
        cpu_cost=0.0,
        mem_cost=0.0,
        latency=0.0,
        resilience=0.0,
        protected_value=1.0,
        family=0,
        attacks=WORKED_METHODS,
    )


@pytest.fixture
def worked_params():
    return AttackerParams(value=1200.0, budget=500.0)
