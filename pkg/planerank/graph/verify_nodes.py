"""LangGraph node functions for the acceptance-suite workflow."""
from __future__ import annotations

import logging
import math
from fractions import Fraction

from langchain_core.runnables import RunnableConfig

from planerank.config import settings
from planerank.graph.verify_state import VerifyGraphState
from planerank.models.simulation_schemas import ExperimentConfig
from planerank.models.verify_schemas import CriterionResult, VerifyLevel
from planerank.services.exact_rank_enum import (
    double_factorial,
    expected_rank_count,
    root_rank_tail,
    tail_inequality_holds,
)
from planerank.services.limit_constants import (
    PUBLISHED_C,
    PUBLISHED_TAIL_AFTER_3,
    c1_closed_form,
    compute_limits,
    verify_tail,
)
from planerank.services.mc_simulator import run_experiment, uniformity_test
from planerank.services.table_store import table_store

logger = logging.getLogger(__name__)

# ============ Constants ============
VERIFY_SEED = 20240917
LIMITS_KMAX = 6
LEAF_NMAX = 30
ORACLE_NMAX = 8
BOUND_NMAX = 200
DOMINATION_KMAX = 12
CONVERGENCE_NS = (50, 100, 200, 400)
CONVERGENCE_KMAX = 3
CONVERGENCE_ENVELOPE = 10.0

FULL_RUNS = {
    "uniformity_samples": 10**6,
    "fractions_n": 10**5,
    "fractions_reps": 100,
    "pairs_per_tree": 1000,
    "largest_n": 10**6,
    "largest_reps": 50,
    "se_multiplier": 3.0,
    "window_required": 0.95,
}
SMOKE_RUNS = {
    "uniformity_samples": 10**4,
    "fractions_n": 10**3,
    "fractions_reps": 1,
    "pairs_per_tree": 1000,
    "largest_n": 10**3,
    "largest_reps": 1,
    "se_multiplier": 6.0,
    "window_required": 0.0,
}


def _seed(config: RunnableConfig) -> int:
    return (config or {}).get("configurable", {}).get("seed", VERIFY_SEED)


def _runs(state: VerifyGraphState) -> dict:
    return SMOKE_RUNS if state.get("smoke") else FULL_RUNS


def _result(criterion: str, title: str, passed: bool, measured, tolerance, detail: str) -> dict:
    result = CriterionResult(
        criterion=criterion,
        title=title,
        passed=passed,
        measured=None if measured is None else float(measured),
        tolerance=None if tolerance is None else float(tolerance),
        detail=detail,
    )
    log = logger.info if passed else logger.warning
    log("Criterion evaluated", extra={"criterion": criterion, "passed": passed})
    return {"results": [result]}


def _leaf_counts(nmax: int) -> dict[int, Fraction]:
    """a_0(n) for 2 <= n <= nmax from the rank series."""
    table = table_store.rank(0, nmax)
    return {n: table.count(0, n) for n in range(2, nmax + 1)}


# ============ Node Functions ============

def check_exact_leaves(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A1: a_0(n) = (2n-1)!!/3 exactly."""
    counts = _leaf_counts(LEAF_NMAX)
    wrong = [n for n, count in counts.items() if count != double_factorial(2 * n - 1) // 3]
    detail = "all leaf counts exact" if not wrong else f"mismatch at n in {wrong}"
    return _result("A1", "exact leaf counts", not wrong, len(wrong), 0, detail)


def oracle_mismatches(n: int) -> list[str]:
    """Quantities on which the oracle census for n and the exact tables differ."""
    kmax = ORACLE_NMAX - 1
    census = table_store.census(n)
    root = table_store.root_rank(kmax, ORACLE_NMAX)
    rank = table_store.rank(kmax, ORACLE_NMAX)
    path = table_store.path_alg(kmax, ORACLE_NMAX)
    ptype = table_store.ptype(kmax, ORACLE_NMAX)

    bad = []
    for k in range(n):
        if census.a[k] != rank.count(k, n):
            bad.append(f"a[{k}]")
        if census.b[k] != root.count(k, n):
            bad.append(f"b[{k}]")
        if census.ptype[k] != ptype.count(k, n):
            bad.append(f"ptype[{k}]")
        if census.ptype_pair[k] != ptype.pair_count(k, n):
            bad.append(f"ptype_pair[{k}]")
    for k in range(n + 1):
        if census.b_geq[k] != root.count_geq(k, n):
            bad.append(f"b_geq[{k}]")
    for k in range(-1, n):
        if census.pi_exact[k] != path.pi[(k, n)]:
            bad.append(f"pi[{k}]")
    return bad


def check_oracle_agreement(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A2: brute-force census equals the exact series for every n <= 8."""
    failures = {}
    for n in range(1, ORACLE_NMAX + 1):
        bad = oracle_mismatches(n)
        if bad:
            failures[n] = bad
    detail = "oracle matches series for n <= 8" if not failures else f"mismatches {failures}"
    return _result("A2", "oracle equals series", not failures, len(failures), 0, detail)


def check_limit_constants(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A3: c_0..c_3 and the rank >= 4 tail against the published digits."""
    limits = compute_limits(LIMITS_KMAX, settings.step)
    closed = c1_closed_form()
    checks = [
        ("c0", abs(limits.c[0] - 2.0 / 3.0), 1e-10),
        ("c1_closed", abs(limits.c[1] - closed), 1e-9),
        ("c1_digits", abs(closed - PUBLISHED_C[1]), 1e-9),
        ("c2", abs(limits.c[2] - PUBLISHED_C[2]), 1e-8),
        ("c3", abs(limits.c[3] - PUBLISHED_C[3]), 1e-8),
        ("tail3", abs(limits.tail(3) - PUBLISHED_TAIL_AFTER_3), 1e-8),
    ]
    failed = [name for name, err, tol in checks if not err < tol]
    worst = max(err / tol for _, err, tol in checks)
    detail = "all constants within tolerance" if not failed else f"out of tolerance: {failed}"
    update = _result("A3", "limit constants", not failed, worst, 1.0, detail)
    update["limits"] = limits
    return update


def check_tail_bound(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A4: 1 - sum_{j<=k} c_j < 3^{k+1}/(2k+1)! for k <= 6."""
    report = verify_tail(state["limits"])
    ratio = max(row.tail / row.bound for row in report.rows)
    failed = [row.k for row in report.rows if not row.holds]
    detail = "tail bound holds for every k" if not failed else f"violated at k in {failed}"
    return _result("A4", "tail bound", report.all_hold, ratio, 1.0, detail)


def check_finite_inequalities(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A5: the 8 n^{3/2}/(k-2)! bound and pi_{>k}(n) >= p_{>k}(n), exactly."""
    rank = table_store.rank(BOUND_NMAX, BOUND_NMAX)
    bound_failures = [
        (k, n)
        for n in range(3, BOUND_NMAX + 1)
        for k in range(3, n + 1)
        if not tail_inequality_holds(k, n, rank)
    ]

    root = table_store.root_rank(DOMINATION_KMAX, BOUND_NMAX)
    path = table_store.path_alg(DOMINATION_KMAX, BOUND_NMAX)
    domination_failures = [
        (k, n)
        for k in range(DOMINATION_KMAX + 1)
        for n in range(1, BOUND_NMAX + 1)
        if path.pi[(k, n)] < root_rank_tail(k, n, root)
    ]

    failures = len(bound_failures) + len(domination_failures)
    detail = (
        "both inequalities hold"
        if not failures
        else f"bound fails at {bound_failures[:5]}, domination fails at {domination_failures[:5]}"
    )
    return _result("A5", "finite-n inequalities", failures == 0, failures, 0, detail)


def check_convergence(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A6: |E[X_k(n)]/n - c_k| <= 10/n for k <= 3."""
    limits = state["limits"]
    table = table_store.rank(CONVERGENCE_KMAX, max(CONVERGENCE_NS))
    worst = 0.0
    for n in CONVERGENCE_NS:
        for k in range(CONVERGENCE_KMAX + 1):
            gap = abs(float(expected_rank_count(k, n, table)) / n - limits.c[k])
            worst = max(worst, gap * n)
    passed = worst <= CONVERGENCE_ENVELOPE
    detail = f"largest n·|E[X_k(n)]/n - c_k| is {worst:.4f}"
    return _result("A6", "convergence to limit constants", passed, worst, CONVERGENCE_ENVELOPE, detail)


def check_uniformity(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A7: grown trees on 4 vertices are uniform over the 15 trees."""
    runs = _runs(state)
    result = uniformity_test(4, runs["uniformity_samples"], _seed(config))
    passed = result.p_value > 1e-3
    detail = f"chi-square {result.statistic:.3f} over {result.trees} trees"
    return _result("A7", "simulator uniformity", passed, result.p_value, 1e-3, detail)


def check_rank_fractions(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A8: per-rank mean fractions within a few standard errors of c_k and of (2n-1)/(3n)."""
    runs = _runs(state)
    cfg = ExperimentConfig(
        n=runs["fractions_n"],
        replicates=runs["fractions_reps"],
        master_seed=_seed(config),
        pair_samples_per_tree=runs["pairs_per_tree"],
    )
    report = run_experiment(cfg, limits=state["limits"])
    limit = runs["se_multiplier"]
    worst = max(abs(c.z_score) for c in report.comparisons)
    failed = [c.label for c in report.comparisons if abs(c.z_score) > limit]
    detail = "rank fractions agree" if not failed else f"outside {limit} SE: {failed}"
    update = _result("A8", "stochastic rank fractions", not failed, worst, limit, detail)
    update["experiment"] = report
    return update


def check_pair_independence(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A9: sampled pair ranks (k1, k2), k <= 2, have joint frequency c_k1·c_k2."""
    report = state["experiment"]
    limit = _runs(state)["se_multiplier"]
    comparisons = report.pair_comparisons
    worst = max((abs(c.z_score) for c in comparisons), default=0.0)
    failed = [c.label for c in comparisons if abs(c.z_score) > limit]
    passed = bool(comparisons) and not failed
    detail = f"{report.pair_total} sampled pairs" if passed else f"outside {limit} SE: {failed}"
    return _result("A9", "pair independence", passed, worst, limit, detail)


def check_largest_rank(state: VerifyGraphState, config: RunnableConfig) -> dict:
    """A10: p-type count at k(n), the largest-rank window and R_n >= R_n^p."""
    runs = _runs(state)
    cfg = ExperimentConfig(
        n=runs["largest_n"],
        replicates=runs["largest_reps"],
        master_seed=_seed(config) + 1,
        epsilon=0.5,
    )
    report = run_experiment(cfg, limits=state["limits"])

    expected = report.ptype_target_expected
    ptype_gap = abs(report.ptype_target_mean - expected)
    ptype_ok = ptype_gap <= 5.0 * math.sqrt(expected)
    window_ok = report.ratio_window_fraction >= runs["window_required"]
    passed = ptype_ok and window_ok and report.largest_dominates_ptype
    detail = (
        f"p-type rank {report.ptype_target_rank}: mean {report.ptype_target_mean:.2f} vs {expected:.2f}; "
        f"window fraction {report.ratio_window_fraction:.3f}; "
        f"largest rank dominates p-type rank: {'yes' if report.largest_dominates_ptype else 'no'}"
    )
    measured = ptype_gap / math.sqrt(expected) if expected > 0 else 0.0
    return _result("A10", "p-type and largest rank", passed, measured, 5.0, detail)


def route_after_quick(state: VerifyGraphState) -> str:
    """Stop after A6 unless the full suite was requested."""
    if state.get("level") == VerifyLevel.FULL:
        return "check_uniformity"
    return "end"
