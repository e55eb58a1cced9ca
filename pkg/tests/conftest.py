"""
Shared fixtures for the unit tests
"""

import math

import numpy as np
import pytest

from app.models.config_models import SolverConfig
from app.spectral.grid import make_grid


@pytest.fixture
def grid():
    """Desk grid: 64 points on [-8pi, 8pi)"""
    return make_grid(64, 8.0 * math.pi)


@pytest.fixture
def fine_grid():
    return make_grid(256, 8.0 * math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def small_config():
    """Short, cheap run on 64 points"""
    return SolverConfig.model_validate({
        "grid": {"n_points": 64, "half_length": 8.0 * math.pi},
        "equation": {"initial_data": {"profile": "sech2", "amplitude": 0.1, "width": 4.0}},
        "stepper": {"dt": 0.02, "t_end": 0.2},
        "output": {"snapshot_stride": 2, "write_snapshots": False},
    })
