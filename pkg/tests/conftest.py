"""
Shared Fixtures
"""
from pathlib import Path

import pytest

from robust_ris.utils.helpers import trial_rng
from tests.factories import make_config, make_instance

CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "config.yaml"


@pytest.fixture
def rng():
    return trial_rng(1234)


@pytest.fixture
def small_cfg():
    return make_config()


@pytest.fixture
def instance():
    return make_instance(7)


@pytest.fixture
def config_path():
    return CONFIG_PATH
