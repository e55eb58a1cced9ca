"""
Spectral core: periodic grid, unitary DFT pair and SpectralField.
"""

from .grid import Grid, make_grid
from .transforms import forward, inverse, direct_dft, hermitian_defect
from .field import SpectralField, Authority, boundary_mass_fraction
from .profiles import initial_profile, random_smooth_field, single_mode, gaussian, sech2

__all__ = [
    "Grid",
    "make_grid",
    "forward",
    "inverse",
    "direct_dft",
    "hermitian_defect",
    "SpectralField",
    "Authority",
    "boundary_mass_fraction",
    "initial_profile",
    "random_smooth_field",
    "single_mode",
    "gaussian",
    "sech2",
]
