"""
Initial data profiles and seeded random fields.
"""

import logging
from pathlib import Path

import numpy as np

from ..exceptions import TransformSizeError
from ..models.config_models import InitialData, ProfileKind
from .field import SpectralField
from .grid import Grid
from .transforms import forward, inverse

logger = logging.getLogger(__name__)


def gaussian(x: np.ndarray, amplitude: float, width: float, center: float = 0.0) -> np.ndarray:
    return amplitude * np.exp(-(((x - center) / width) ** 2))


def sech2(x: np.ndarray, amplitude: float, width: float, center: float = 0.0) -> np.ndarray:
    return amplitude / np.cosh((x - center) / width) ** 2


def initial_profile(grid: Grid, descriptor: InitialData) -> SpectralField:
    """
    Sample a named profile on the grid

    Args:
        grid: Target grid
        descriptor: Profile name and parameters

    Returns:
        SpectralField with sample authority

    Raises:
        TransformSizeError: If a file profile has the wrong length
        FileNotFoundError: If a file profile does not exist
    """
    x = grid.x
    if descriptor.profile == ProfileKind.GAUSSIAN:
        values = gaussian(x, descriptor.amplitude, descriptor.width, descriptor.center)
    elif descriptor.profile == ProfileKind.SECH2:
        values = sech2(x, descriptor.amplitude, descriptor.width, descriptor.center)
    elif descriptor.profile == ProfileKind.SINE:
        xi = np.pi * descriptor.mode / grid.half_length
        values = descriptor.amplitude * np.sin(xi * x)
    else:
        path = Path(descriptor.path)
        if not path.exists():
            raise FileNotFoundError(f"Initial data file not found: {path}")
        values = np.load(path)
        if values.shape != (grid.n_points,):
            raise TransformSizeError(
                f"Initial data of shape {values.shape} does not match {grid.describe()}"
            )
        values = descriptor.amplitude * values if descriptor.amplitude != 1.0 else values
    return SpectralField.from_samples(grid, values)


def random_smooth_field(
    grid: Grid,
    rng: np.random.Generator,
    amplitude: float = 1.0,
    bandwidth: float = 2.0,
    zero_mean: bool = False,
) -> SpectralField:
    """
    Band-limited random real field

    White noise filtered by exp(-(xi/bandwidth)^2) and projected on the 2/3 band,
    then scaled so that max |u| equals amplitude.
    """
    noise = rng.standard_normal(grid.n_points)
    envelope = np.exp(-((grid.frequencies / bandwidth) ** 2)) * grid.dealias_mask()
    coeffs = forward(noise) * envelope
    if zero_mean:
        coeffs[0] = 0.0
    samples = inverse(coeffs)
    peak = float(np.max(np.abs(samples)))
    if peak > 0.0:
        samples = samples * (amplitude / peak)
    return SpectralField.from_samples(grid, samples)


def single_mode(grid: Grid, mode: int, amplitude: float = 1.0, phase: float = 0.0) -> SpectralField:
    """amplitude * cos(xi_mode x + phase)"""
    xi = np.pi * mode / grid.half_length
    return SpectralField.from_samples(grid, amplitude * np.cos(xi * grid.x + phase))
