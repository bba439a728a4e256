"""Genetic-algorithm benchmark for the 0/1 knapsack problem.

Bitstring GA with interchangeable selection (rank, roulette, tournament)
and crossover (one-point, two-point) operators, exact dynamic-programming
and enumeration oracles, and a seeded six-scenario experiment harness.
Runs are reproducible bit for bit across the numba and pure-Python
backends; see ``engine`` for the draw-order contract and ``backend`` for
how an implementation is chosen.
"""

from .backend import BACKEND_ENV_VAR, BACKENDS, numba_available, resolve_backend
from .core import (
    Chromosome,
    InstanceFormatError,
    KnapsackInstance,
    bundled_instance,
    bundled_instance_path,
    dp_optimal,
    enumerate_optimal,
    fitness,
    load_instance,
    save_instance,
    total_weight,
)
from .engine import (
    ConvergenceTrace,
    GaConfig,
    GenerationStats,
    config_for,
    init_population,
    run_ga,
    step_generation,
)
from .experiments import (
    SCENARIO_SEED_STRIDE,
    SCENARIOS,
    Scenario,
    ScenarioReport,
    TraceFormatError,
    TraceRecord,
    TraceRow,
    random_instance,
    read_trace_rows,
    run_all,
    run_scenario,
    scenario_by_id,
    scenario_config,
    scenario_seed_base,
    summarize_trace_rows,
    write_report_csv,
    write_traces_csv,
)
from .operators import (
    CrossoverMethod,
    MutationConfig,
    Population,
    SelectionMethod,
    apply_crossover,
    crossover_one_point,
    crossover_two_point,
    mutate_bit_flip,
    rank_probabilities,
    select_parent,
    select_rank,
    select_roulette,
    select_tournament,
)
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "BACKEND_ENV_VAR",
    "BACKENDS",
    "Chromosome",
    "ConvergenceTrace",
    "CrossoverMethod",
    "GaConfig",
    "GenerationStats",
    "InstanceFormatError",
    "KnapsackInstance",
    "MutationConfig",
    "Population",
    "SCENARIOS",
    "SCENARIO_SEED_STRIDE",
    "Scenario",
    "ScenarioReport",
    "SelectionMethod",
    "SplitMix64",
    "TraceFormatError",
    "TraceRecord",
    "TraceRow",
    "apply_crossover",
    "bundled_instance",
    "bundled_instance_path",
    "config_for",
    "crossover_one_point",
    "crossover_two_point",
    "dp_optimal",
    "enumerate_optimal",
    "fitness",
    "init_population",
    "load_instance",
    "mutate_bit_flip",
    "numba_available",
    "random_instance",
    "rank_probabilities",
    "read_trace_rows",
    "resolve_backend",
    "run_all",
    "run_ga",
    "run_scenario",
    "save_instance",
    "scenario_by_id",
    "scenario_config",
    "scenario_seed_base",
    "select_parent",
    "select_rank",
    "select_roulette",
    "select_tournament",
    "step_generation",
    "summarize_trace_rows",
    "total_weight",
    "write_report_csv",
    "write_traces_csv",
]
