"""Trapezoid rule on a uniform z grid over [0, 1/2]."""
from __future__ import annotations

import numpy as np

from .base import Grid, IntegrationMethod, LimitIntegrator


class PlainTrapezoidIntegrator(LimitIntegrator):
    """
    Uniform partition of [0, 1/2] with the trapezoid rule on every interval.
    The integrands have a square-root endpoint at z = 1/2, so the error decays
    like step^{3/2} rather than step^2.
    """

    @property
    def method(self) -> IntegrationMethod:
        return IntegrationMethod.PLAIN_TRAPEZOID

    def grid(self) -> Grid:
        intervals = max(1, int(round(0.5 / self.step)))
        z = np.linspace(0.0, 0.5, intervals + 1)
        root = np.sqrt(np.clip(1.0 - 2.0 * z, 0.0, None))
        return Grid(x=z, z=z, root=root, jacobian=np.ones_like(z))
