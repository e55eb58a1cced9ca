"""
Exponential Integrators

Steppers for u_t = -L u + N(u) with a diagonal linear table L. The linear
part is applied exactly; only N is stepped explicitly. Coefficient tables
depend on dt and are cached per step length.
"""

from abc import ABC, abstractmethod
from typing import Callable, Dict, Tuple

import numpy as np

from ..models.config_models import StepperKind

NonlinearFn = Callable[[np.ndarray], np.ndarray]

# Contour quadrature for phi functions near z = 0
CONTOUR_POINTS = 32
CONTOUR_RADIUS = 1.0


class Stepper(ABC):
    """
    One-step method for u_t = -L u + N(u)

    Args:
        linear: Diagonal linear table L in FFT order
        nonlinear: Map from coefficients to N(u) coefficients
    """

    kind: StepperKind
    order: int

    def __init__(self, linear: np.ndarray, nonlinear: NonlinearFn):
        self.linear = np.asarray(linear, dtype=np.complex128)
        self.nonlinear = nonlinear
        self._real_linear = bool(np.all(self.linear.imag == 0.0))
        self._tables: Dict[float, Tuple[np.ndarray, ...]] = {}

    def tables(self, dt: float) -> Tuple[np.ndarray, ...]:
        """Coefficient tables for one step length"""
        if dt not in self._tables:
            if len(self._tables) > 4:
                self._tables.clear()
            self._tables[dt] = self.build_tables(dt)
        return self._tables[dt]

    @abstractmethod
    def build_tables(self, dt: float) -> Tuple[np.ndarray, ...]:
        pass

    @abstractmethod
    def advance(self, coeffs: np.ndarray, dt: float) -> np.ndarray:
        """
        Advance coefficients by one step

        Args:
            coeffs: State at time t
            dt: Step length

        Returns:
            State at time t + dt
        """
        pass


class IntegratingFactorRK4(Stepper):
    """Classical RK4 on v = exp(L t) u, written in terms of u"""

    kind = StepperKind.INTEGRATING_FACTOR_RK4
    order = 4

    def build_tables(self, dt: float) -> Tuple[np.ndarray, ...]:
        half = np.exp(-0.5 * dt * self.linear)
        return half, half * half

    def advance(self, coeffs: np.ndarray, dt: float) -> np.ndarray:
        half, full = self.tables(dt)
        n = self.nonlinear
        k1 = n(coeffs)
        k2 = n(half * (coeffs + 0.5 * dt * k1))
        k3 = n(half * coeffs + 0.5 * dt * k2)
        k4 = n(full * coeffs + dt * half * k3)
        return full * coeffs + (dt / 6.0) * (full * k1 + 2.0 * half * (k2 + k3) + k4)


class ETDRK2(Stepper):
    """Second-order exponential time differencing (predictor-corrector form)"""

    kind = StepperKind.ETD_RK2
    order = 2

    def build_tables(self, dt: float) -> Tuple[np.ndarray, ...]:
        z = -dt * self.linear
        circle = CONTOUR_RADIUS * np.exp(2j * np.pi * (np.arange(1, CONTOUR_POINTS + 1) - 0.5) / CONTOUR_POINTS)
        zc = z[:, np.newaxis] + circle[np.newaxis, :]
        phi1 = ((np.exp(zc) - 1.0) / zc).mean(axis=-1)
        phi2 = ((np.exp(zc) - 1.0 - zc) / zc ** 2).mean(axis=-1)
        if self._real_linear:
            phi1, phi2 = phi1.real.astype(np.complex128), phi2.real.astype(np.complex128)
        return np.exp(z), dt * phi1, dt * phi2

    def advance(self, coeffs: np.ndarray, dt: float) -> np.ndarray:
        decay, w1, w2 = self.tables(dt)
        n0 = self.nonlinear(coeffs)
        predictor = decay * coeffs + w1 * n0
        return predictor + w2 * (self.nonlinear(predictor) - n0)


_STEPPERS = {
    StepperKind.INTEGRATING_FACTOR_RK4: IntegratingFactorRK4,
    StepperKind.ETD_RK2: ETDRK2,
}


def make_stepper(kind: StepperKind, linear: np.ndarray, nonlinear: NonlinearFn) -> Stepper:
    return _STEPPERS[StepperKind(kind)](linear, nonlinear)
