"""
Snapshot and checkpoint files.

Both are uncompressed .npz archives. A snapshot carries the header fields
(n_points, half_length, t, variant, epsilon) and the raw samples; a
checkpoint carries the Fourier coefficients, the step index and the full
configuration so a resumed run repeats the uninterrupted one exactly.
"""

import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from ..exceptions import GridMismatchError
from ..models.config_models import EquationVariant, SolverConfig
from ..spectral.field import SpectralField
from ..spectral.grid import make_grid

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class Snapshot:
    """Header plus samples of one recorded field"""

    __slots__ = ("field", "t", "variant", "epsilon")

    def __init__(self, field: SpectralField, t: float, variant: EquationVariant, epsilon: float):
        self.field = field
        self.t = float(t)
        self.variant = EquationVariant(variant)
        self.epsilon = float(epsilon)


class Checkpoint:
    """Stepper state at one step index"""

    __slots__ = ("coeffs", "step", "t", "config")

    def __init__(self, coeffs: np.ndarray, step: int, t: float, config: SolverConfig):
        self.coeffs = np.asarray(coeffs, dtype=np.complex128)
        self.step = int(step)
        self.t = float(t)
        self.config = config


def write_snapshot(path: PathLike, field: SpectralField, t: float, variant: EquationVariant,
                   epsilon: float) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        np.savez(
            fh,
            n_points=np.int64(field.grid.n_points),
            half_length=np.float64(field.grid.half_length),
            t=np.float64(t),
            variant=np.str_(EquationVariant(variant).value),
            epsilon=np.float64(epsilon),
            samples=np.asarray(field.samples, dtype=np.float64),
        )
    return path


def read_snapshot(path: PathLike) -> Snapshot:
    with np.load(Path(path), allow_pickle=False) as data:
        grid = make_grid(int(data["n_points"]), float(data["half_length"]))
        field = SpectralField.from_samples(grid, data["samples"])
        return Snapshot(field, float(data["t"]), str(data["variant"]), float(data["epsilon"]))


def write_checkpoint(path: PathLike, coeffs: np.ndarray, step: int, t: float, config: SolverConfig) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        np.savez(
            fh,
            coeffs=np.asarray(coeffs, dtype=np.complex128),
            step=np.int64(step),
            t=np.float64(t),
            config=np.str_(config.model_dump_json()),
        )
    logger.debug(f"checkpoint written at step {step} (t={t:g}): {path}")
    return path


def restore_checkpoint(path: PathLike) -> Checkpoint:
    """
    Load a checkpoint written by write_checkpoint

    Raises:
        GridMismatchError: If the stored coefficients do not match the stored grid
    """
    with np.load(Path(path), allow_pickle=False) as data:
        config = SolverConfig.model_validate(json.loads(str(data["config"])))
        coeffs = np.array(data["coeffs"], dtype=np.complex128)
        if coeffs.shape != (config.grid.n_points,):
            raise GridMismatchError(
                f"checkpoint holds {coeffs.shape[0]} coefficients for n_points={config.grid.n_points}"
            )
        return Checkpoint(coeffs, int(data["step"]), float(data["t"]), config)


def checkpoint_name(step: int) -> str:
    return f"checkpoint_{step:08d}.npz"


def snapshot_name(step: int) -> str:
    return f"snapshot_{step:08d}.npz"
