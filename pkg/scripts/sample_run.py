from fractions import Fraction

from planerank.models.simulation_schemas import ExperimentConfig
from planerank.services.exact_rank_enum import expected_rank_count
from planerank.services.limit_constants import compute_limits, verify_tail
from planerank.services.mc_simulator import run_experiment
from planerank.services.table_store import table_store


def main() -> None:
    n = 12
    table = table_store.rank(n - 1, n)
    print(f"Expected rank counts on {n} vertices:")
    for k in range(n):
        value = expected_rank_count(k, n, table)
        if value:
            print(f"  k={k}: {value} ({float(value):.6f})")

    limits = compute_limits(4, 1e-5)
    report = verify_tail(limits)
    print(report.model_dump_json(indent=2))

    cfg = ExperimentConfig(n=10**4, replicates=4, master_seed=1, pair_samples_per_tree=100)
    experiment = run_experiment(cfg, limits=limits)
    for comparison in experiment.comparisons + experiment.pair_comparisons:
        print(comparison.model_dump_json())
    print(f"Exact leaf fraction: {Fraction(2 * cfg.n - 1, 3 * cfg.n)}")


if __name__ == "__main__":
    main()
