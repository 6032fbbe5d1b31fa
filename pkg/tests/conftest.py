from os.path import abspath, dirname

import numpy as np
import pytest

from core.allocation import build_plan
from core.channel import stats_for
from core.models import SystemConfig

root_dir = dirname(dirname(abspath(__file__)))


@pytest.fixture
def cfg():
    return SystemConfig()


@pytest.fixture
def stats(cfg):
    return stats_for(cfg)


@pytest.fixture
def plan(cfg):
    return build_plan(cfg)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
