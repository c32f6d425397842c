"""
Limit constants c_k = 2 int_0^{1/2} sqrt(1-2z) B'_k(z) dz.

The quadrature itself lives in planerank.integrators; this module packages the
results, checks the tail bound 3^{k+1}/(2k+1)! and compares methods and steps.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Union

import numpy as np

from planerank.integrators import IntegrationMethod, get_integrator
from planerank.models.limit_schemas import LimitConstants, MethodComparison, TailReport, TailRow

logger = logging.getLogger(__name__)

MAX_STEP = 1e-3

# compare_methods: allowed gap as a multiple of the plain scheme's step-halving change
DISAGREEMENT_FACTOR = 10.0
TOLERANCE_FLOOR = 1e-12

# Reported values for c_0..c_3 and for 1 - (c_0 + c_1 + c_2 + c_3)
PUBLISHED_C = (2.0 / 3.0, 0.2938858406, 0.03589474655, 0.0032684102)
PUBLISHED_TAIL_AFTER_3 = 0.0002843360


def published_constants() -> dict[str, float]:
    values = {f"c{k}": c for k, c in enumerate(PUBLISHED_C)}
    values["tail_after_3"] = PUBLISHED_TAIL_AFTER_3
    return values


def c1_closed_form() -> float:
    """c_1 = 5 + 4 log 2 - 6 sqrt(2) artanh(2^{-1/2})."""
    return 5.0 + 4.0 * math.log(2.0) - 6.0 * math.sqrt(2.0) * math.atanh(2.0 ** -0.5)


def tail_bound(k: int) -> float:
    """3^{k+1}/(2k+1)!."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return 3.0 ** (k + 1) / math.factorial(2 * k + 1)


def _validate_step(step: float) -> None:
    if not step > 0:
        raise ValueError(f"Integration step must be positive, got {step}")
    if step > MAX_STEP:
        raise ValueError(f"Integration step must be at most {MAX_STEP}, got {step}")


def compute_limits(
    kmax: int,
    step: float,
    method: Optional[Union[str, IntegrationMethod]] = None,
) -> LimitConstants:
    """
    c_0..c_kmax by trapezoid quadrature of the B_{>=k} cascade.

    Args:
        kmax: Largest rank to compute
        step: Grid step in the integration variable, 0 < step <= 1e-3
        method: substituted (default) or plain_trapezoid

    Raises:
        ValueError: On negative kmax, a bad step or an unknown method
    """
    if kmax < 0:
        raise ValueError(f"kmax must be non-negative, got {kmax}")
    _validate_step(step)

    integrator = get_integrator(method, step)
    c = integrator.integrate(kmax)
    points = integrator.grid_points()
    logger.info(
        "Limit constants computed",
        extra={"method": integrator.method.value, "step": step, "kmax": kmax},
    )
    return LimitConstants(
        kmax=kmax,
        c=[float(x) for x in c],
        gamma=[float(x) / 2.0 for x in c],
        method=integrator.method,
        step=step,
        grid_points=points,
    )


def verify_tail(lc: LimitConstants) -> TailReport:
    """1 - sum_{j<=k} c_j <= 3^{k+1}/(2k+1)! for every computed k."""
    rows = []
    for k in range(lc.kmax + 1):
        tail = lc.tail(k)
        bound = tail_bound(k)
        rows.append(
            TailRow(k=k, c=lc.c[k], cumulative=lc.cumulative(k), tail=tail, bound=bound, holds=tail < bound)
        )

    tail_after_3 = lc.tail(3) if lc.kmax >= 3 else None
    error = abs(tail_after_3 - PUBLISHED_TAIL_AFTER_3) if tail_after_3 is not None else None
    report = TailReport(
        rows=rows,
        all_hold=all(r.holds for r in rows),
        tail_after_3=tail_after_3,
        published_tail_after_3=PUBLISHED_TAIL_AFTER_3,
        tail_after_3_error=error,
    )
    if not report.all_hold:
        logger.warning("Tail bound violated", extra={"rows": [r.k for r in rows if not r.holds]})
    return report


def step_halving_delta(
    kmax: int,
    step: float,
    method: Optional[Union[str, IntegrationMethod]] = None,
) -> list[float]:
    """|c_k(step) - c_k(step/2)| for every k; the error estimate for unpublished constants."""
    coarse = compute_limits(kmax, step, method)
    fine = compute_limits(kmax, step / 2.0, method)
    return [abs(a - b) for a, b in zip(coarse.c, fine.c)]


def compare_methods(
    kmax: int,
    step: float,
    tolerance: Optional[float] = None,
) -> MethodComparison:
    """
    Run both quadrature schemes at one step.

    Without an explicit tolerance the bound is DISAGREEMENT_FACTOR times the
    plain scheme's step-halving change, the larger of the two discretization
    errors. A disagreement above tolerance is logged, not raised.
    """
    substituted = compute_limits(kmax, step, IntegrationMethod.SUBSTITUTED)
    plain = compute_limits(kmax, step, IntegrationMethod.PLAIN_TRAPEZOID)
    differences = (np.abs(np.asarray(substituted.c) - np.asarray(plain.c))).tolist()

    plain_step_delta: Optional[float] = None
    if tolerance is None:
        plain_half = compute_limits(kmax, step / 2.0, IntegrationMethod.PLAIN_TRAPEZOID)
        plain_step_delta = float(np.max(np.abs(np.asarray(plain.c) - np.asarray(plain_half.c))))
        tolerance = max(DISAGREEMENT_FACTOR * plain_step_delta, TOLERANCE_FLOOR)

    agree = bool(max(differences) <= tolerance)
    if not agree:
        logger.warning(
            "Quadrature methods disagree",
            extra={"step": step, "max_difference": max(differences), "tolerance": tolerance},
        )
    return MethodComparison(
        kmax=kmax,
        step=step,
        substituted=substituted.c,
        plain=plain.c,
        differences=differences,
        tolerance=tolerance,
        agree=agree,
        plain_step_delta=plain_step_delta,
    )
