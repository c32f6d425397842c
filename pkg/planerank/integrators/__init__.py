"""
Quadrature back-ends for the limit constants.
"""
from .base import IntegrationMethod, LimitIntegrator
from .factory import get_integrator, list_methods
from .plain_trapezoid import PlainTrapezoidIntegrator
from .substituted import SubstitutedIntegrator

__all__ = [
    "IntegrationMethod",
    "LimitIntegrator",
    "get_integrator",
    "list_methods",
    "PlainTrapezoidIntegrator",
    "SubstitutedIntegrator",
]
