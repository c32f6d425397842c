"""
Integrator Factory.
Creates limit-constant integrators by method name.
"""
from __future__ import annotations

import logging
from typing import Optional, Union

from planerank.config import settings

from .base import IntegrationMethod, LimitIntegrator
from .plain_trapezoid import PlainTrapezoidIntegrator
from .substituted import SubstitutedIntegrator

logger = logging.getLogger(__name__)

_INTEGRATORS: dict[IntegrationMethod, type[LimitIntegrator]] = {
    IntegrationMethod.PLAIN_TRAPEZOID: PlainTrapezoidIntegrator,
    IntegrationMethod.SUBSTITUTED: SubstitutedIntegrator,
}


def get_integrator(
    method: Optional[Union[str, IntegrationMethod]] = None,
    step: Optional[float] = None,
) -> LimitIntegrator:
    """
    Factory function to get a limit-constant integrator.

    Args:
        method: Quadrature scheme. If None, uses the substituted scheme
        step: Grid step. If None, uses settings.step

    Raises:
        ValueError: If the method is unknown or the step is not positive
    """
    if method is None:
        method = IntegrationMethod.SUBSTITUTED
    if isinstance(method, str):
        method = IntegrationMethod.from_string(method)
    if step is None:
        step = settings.step

    integrator_cls = _INTEGRATORS.get(method)
    if integrator_cls is None:
        raise ValueError(f"Unknown integration method: {method}")
    return integrator_cls(step=step)


def list_methods() -> list[str]:
    """Return the names of all available integration methods."""
    return [m.value for m in IntegrationMethod]
