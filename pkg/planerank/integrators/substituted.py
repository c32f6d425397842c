"""Trapezoid rule after the substitution z = (1 - u^2)/2."""
from __future__ import annotations

import numpy as np

from .base import Grid, IntegrationMethod, LimitIntegrator


class SubstitutedIntegrator(LimitIntegrator):
    """
    Integrates in u = sqrt(1-2z), running u from 1 (z = 0) down to 0 (z = 1/2).
    dz = -u du absorbs the (1-2z)^{-1/2} endpoint growth of B'_{>=1}, so every
    integrand is smooth in u.
    """

    @property
    def method(self) -> IntegrationMethod:
        return IntegrationMethod.SUBSTITUTED

    def grid(self) -> Grid:
        intervals = max(1, int(round(1.0 / self.step)))
        u = np.linspace(1.0, 0.0, intervals + 1)
        z = 0.5 * (1.0 - u * u)
        return Grid(x=u, z=z, root=u, jacobian=-u)
