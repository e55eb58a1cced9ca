"""
Convolution Semigroups

e^{-t a(xi)} for a nonnegative generator symbol a. The hyperviscous kernel
G uses a = xi^2 (1 + xi^2) at time eps*t and factors as the heat kernel g
(a = xi^2) convolved with the quartic kernel h (a = xi^4); H_t uses the
dissipation symbol |xi| m(xi).
"""

import numpy as np
import scipy.fft

from ..exceptions import GridMismatchError, NegativeTimeError
from ..spectral.field import SpectralField
from .symbols import MultiplierSymbol


class SemigroupKernel:
    """Multiplier table e^{-t a(xi)} of one generator at one time"""

    __slots__ = ("generator", "t", "multiplier")

    def __init__(self, generator: MultiplierSymbol, t: float):
        if t < 0:
            raise NegativeTimeError(f"Semigroup time must be >= 0, got {t}")
        self.generator = generator
        self.t = float(t)
        multiplier = np.exp(-self.t * generator.values)
        multiplier.setflags(write=False)
        self.multiplier = multiplier

    @property
    def grid(self):
        return self.generator.grid

    def compose(self, other: "SemigroupKernel") -> "SemigroupKernel":
        """kernel(t) * kernel(s) == kernel(t + s)"""
        if other.generator.label != self.generator.label or not other.grid.same_as(self.grid):
            raise GridMismatchError("Semigroups with different generators do not compose")
        return SemigroupKernel(self.generator, self.t + other.t)

    def apply(self, f: SpectralField) -> SpectralField:
        if not self.grid.same_as(f.grid):
            raise GridMismatchError(f"Kernel on {self.grid.describe()} cannot act on {f.grid.describe()}")
        return f.with_multiplier(self.multiplier)

    def physical_kernel(self) -> np.ndarray:
        """Kernel samples K(x_j) on grid.x, centered at x = 0"""
        raw = scipy.fft.ifft(self.multiplier).real / self.grid.dx
        return scipy.fft.fftshift(raw)

    def l1_norm(self) -> float:
        """dx * sum |K(x_j)|"""
        return float(np.sum(np.abs(scipy.fft.ifft(self.multiplier))))

    def l2_norm(self) -> float:
        """||K||_{L2} from the Fourier side: sum |m|^2 / (2 L)"""
        return float(np.sqrt(np.sum(self.multiplier ** 2) / (2.0 * self.grid.half_length)))


def apply_semigroup(gen: MultiplierSymbol, t: float, f: SpectralField) -> SpectralField:
    """
    Apply e^{-t a(xi)} to a field

    Args:
        gen: Generator symbol a
        t: Time (already scaled by eps where relevant)
        f: Field on the generator's grid

    Returns:
        Evolved field

    Raises:
        NegativeTimeError: If t < 0
    """
    return SemigroupKernel(gen, t).apply(f)
