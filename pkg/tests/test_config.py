# in tests/test_config.py

import pytest

from autopolar.config import CliConfig
from autopolar.scalars import ScalarMode

ENV_NAMES = ["AUTOPOLAR_SCALAR", "AUTOPOLAR_TOL", "AUTOPOLAR_SEED", "AUTOPOLAR_BUDGET", "AUTOPOLAR_SELFDUAL_THRESHOLD"]


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    config = CliConfig.from_env()

    assert config.scalar is ScalarMode.RATIONAL
    assert config.tol == 1e-9
    assert config.seed == 0
    assert config.budget == 10_000
    assert config.selfdual_threshold == 1e-6
    assert config.policy.exact


def test_environment_overrides_defaults(clean_env):
    # Arrange
    clean_env.setenv("AUTOPOLAR_SCALAR", "float")
    clean_env.setenv("AUTOPOLAR_TOL", "1e-6")
    clean_env.setenv("AUTOPOLAR_BUDGET", " 500 ")

    # Act
    config = CliConfig.from_env()

    # Assert
    assert config.scalar is ScalarMode.FLOAT
    assert config.tol == 1e-6
    assert config.budget == 500
    assert config.policy.exact is False


def test_explicit_values_win_over_the_environment(clean_env):
    clean_env.setenv("AUTOPOLAR_SEED", "7")

    assert CliConfig.from_env(seed=11).seed == 11
    assert CliConfig.from_env(seed=None).seed == 7


def test_empty_variables_are_ignored(clean_env):
    clean_env.setenv("AUTOPOLAR_TOL", "")

    assert CliConfig.from_env().tol == 1e-9


def test_invalid_environment_values_raise(clean_env):
    clean_env.setenv("AUTOPOLAR_SEED", "many")

    with pytest.raises(ValueError, match="AUTOPOLAR_SEED"):
        CliConfig.from_env()


def test_out_of_range_values_are_rejected(clean_env):
    clean_env.setenv("AUTOPOLAR_BUDGET", "0")

    with pytest.raises(ValueError):
        CliConfig.from_env()
