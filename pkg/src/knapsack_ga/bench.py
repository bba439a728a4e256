"""Backend benchmark: times the jitted kernel against the pure-Python
reference on identical workloads and checks they produce identical traces.

Run as ``python -m knapsack_ga.bench``. The first jitted call pays the
compile cost; a warm-up run keeps it out of the timings (the compiled
kernel is also cached on disk, so later processes skip it entirely).
"""

from __future__ import annotations

import argparse
import time

from .backend import numba_available
from .core import bundled_instance, dp_optimal
from .engine import GaConfig, run_ga
from .experiments import SCENARIOS, scenario_config, scenario_seed_base


def _time_backend(instance, base, scenario, replications, seed0, optimum, backend):
    traces = []
    start = time.perf_counter()
    for i in range(replications):
        config = scenario_config(base, scenario, (seed0 + i) % 2**64)
        traces.append(run_ga(instance, config, optimum, backend=backend))
    return time.perf_counter() - start, traces


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m knapsack_ga.bench",
        description="Time the numba and python backends on the same workload.",
    )
    parser.add_argument("--replications", type=int, default=50)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--generations", type=int, default=50)
    parser.add_argument("--pop-size", type=int, default=8)
    args = parser.parse_args(argv)

    if not numba_available():
        print("numba is not importable; nothing to compare")
        return 1

    instance = bundled_instance()
    optimum = dp_optimal(instance)[0]
    base = GaConfig(generations=args.generations, population_size=args.pop_size)

    # warm-up: compile (or load from cache) every kernel path once
    for scenario in SCENARIOS:
        run_ga(instance, scenario_config(base, scenario, 0), optimum, backend="numba")

    print(
        f"{args.replications} replications/scenario, "
        f"{args.generations} generations, population {args.pop_size}"
    )
    header = f"{'scenario':>8}  {'python (s)':>10}  {'numba (s)':>10}  {'speedup':>7}"
    print(header)
    total_py = total_nb = 0.0
    for scenario in SCENARIOS:
        seed0 = scenario_seed_base(args.seed, scenario.id)
        t_py, traces_py = _time_backend(
            instance, base, scenario, args.replications, seed0, optimum, "python"
        )
        t_nb, traces_nb = _time_backend(
            instance, base, scenario, args.replications, seed0, optimum, "numba"
        )
        if traces_py != traces_nb:
            print(f"scenario {scenario.id}: backends disagree")
            return 1
        total_py += t_py
        total_nb += t_nb
        print(
            f"{scenario.id:>8}  {t_py:>10.3f}  {t_nb:>10.3f}  {t_py / t_nb:>6.1f}x"
        )
    print(
        f"{'total':>8}  {total_py:>10.3f}  {total_nb:>10.3f}  "
        f"{total_py / total_nb:>6.1f}x"
    )
    print("traces identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
