"""
Base quadrature interface for the limit constants.
Every integrator evaluates c_k = 2 * int_0^{1/2} sqrt(1-2z) B'_k(z) dz for k <= kmax
by a cascade of trapezoid rules over one grid.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

logger = logging.getLogger(__name__)


class IntegrationMethod(str, Enum):
    """Supported quadrature schemes."""
    PLAIN_TRAPEZOID = "plain_trapezoid"
    SUBSTITUTED = "substituted"

    @classmethod
    def from_string(cls, value: str) -> "IntegrationMethod":
        """Convert string to IntegrationMethod, case-insensitive."""
        value_lower = value.lower().replace("-", "_")
        for method in cls:
            if method.value == value_lower:
                return method
        raise ValueError(f"Unknown integration method: {value}. Supported: {[m.value for m in cls]}")


@dataclass
class Grid:
    """Integration variable x with z(x), sqrt(1-2z(x)) and the Jacobian dz/dx."""
    x: np.ndarray
    z: np.ndarray
    root: np.ndarray
    jacobian: np.ndarray


def _geometric_ratio(values: np.ndarray) -> np.ndarray:
    """B'_{>=k} = B_{>=k-1} / (1 - B_{>=k-1})."""
    return values / (1.0 - values)


class LimitIntegrator(ABC):
    """
    Abstract base class for limit-constant integrators.
    Subclasses only choose the grid; the ODE cascade is shared.
    """

    def __init__(self, step: float):
        if not step > 0:
            raise ValueError(f"Integration step must be positive, got {step}")
        self.step = step

    @property
    @abstractmethod
    def method(self) -> IntegrationMethod:
        """Return the method this integrator implements."""
        pass

    @abstractmethod
    def grid(self) -> Grid:
        """Build the integration grid."""
        pass

    def integrate(self, kmax: int) -> np.ndarray:
        """
        Return c_0..c_kmax.

        B_{>=1} comes from its closed form 1 - z - sqrt(1-2z); every B_{>=k},
        k >= 2, is a cumulative trapezoid of the previous level, and C_k is the
        trapezoid of 2 sqrt(1-2z) (B'_{>=k} - B'_{>=k+1}) dz/dx.
        """
        g = self.grid()
        x, z, root, jac = g.x, g.z, g.root, g.jacobian
        logger.info(
            "Integrating limit constants",
            extra={"method": self.method.value, "points": x.size, "kmax": kmax},
        )

        # sqrt(1-2z) B'_0 = sqrt(1-2z) because B_0(z) = z
        constants = [trapezoid(2.0 * root * jac, x)]
        if kmax == 0:
            return np.asarray(constants)

        b_geq = 1.0 - z - root
        d_next = _geometric_ratio(b_geq)
        # sqrt(1-2z) B'_{>=1} = T(z) = 1 - sqrt(1-2z); written out to stay finite at z = 1/2
        constants.append(trapezoid(2.0 * ((1.0 - root) - root * d_next) * jac, x))

        for _ in range(2, kmax + 1):
            d_k = d_next
            b_geq = cumulative_trapezoid(d_k * jac, x, initial=0.0)
            d_next = _geometric_ratio(b_geq)
            constants.append(trapezoid(2.0 * root * (d_k - d_next) * jac, x))

        return np.asarray(constants)

    def grid_points(self) -> int:
        return self.grid().x.size

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(step={self.step})"
