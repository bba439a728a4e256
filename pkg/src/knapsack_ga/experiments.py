"""Six-scenario benchmark harness: seeded replications, convergence
metrics, and the CSV artifacts downstream tooling consumes.

Seed layout
-----------

``run_scenario`` gives replication i the seed ``(seed0 + i) mod 2^64``.
``run_all`` spaces scenarios ``SCENARIO_SEED_STRIDE`` apart, so scenario s
occupies the block starting at ``seed0 + s * stride``. Blocks are disjoint
for any replication count up to the stride, which keeps one scenario's
traces stable when another's replication count changes, and makes any
single run reconstructible from (seed0, scenario id, replication index).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import KnapsackInstance, dp_optimal
from .engine import ConvergenceTrace, GaConfig, config_for, run_ga
from .operators import CrossoverMethod, SelectionMethod
from .rng import MASK64, SplitMix64

SCENARIO_SEED_STRIDE = 10**6

TRACE_HEADER = (
    "scenario_id",
    "replication",
    "seed",
    "generation",
    "best_fitness",
    "mean_fitness",
    "feasible_count",
)
REPORT_HEADER = (
    "scenario_id",
    "crossover",
    "selection",
    "replications",
    "success_count",
    "success_rate",
    "first_hit_median",
    "first_hit_q1",
    "first_hit_q3",
    "best_final_fitness_mean",
)


@dataclass(frozen=True)
class Scenario:
    """One (crossover, selection) combination from the benchmark grid."""

    id: int
    crossover: str
    selection: str

    def methods(self) -> tuple[CrossoverMethod, SelectionMethod]:
        if self.selection == "tournament":
            selection = SelectionMethod.tournament()
        elif self.selection == "roulette":
            selection = SelectionMethod.roulette()
        else:
            selection = SelectionMethod.rank()
        if self.crossover == "two_point":
            crossover = CrossoverMethod.two_point()
        else:
            crossover = CrossoverMethod.one_point()
        return crossover, selection


# The numbering walks selection fastest: rank, roulette, tournament under
# one-point crossover, then the same three under two-point.
SCENARIOS: tuple[Scenario, ...] = (
    Scenario(1, "one_point", "rank"),
    Scenario(2, "one_point", "roulette"),
    Scenario(3, "one_point", "tournament"),
    Scenario(4, "two_point", "rank"),
    Scenario(5, "two_point", "roulette"),
    Scenario(6, "two_point", "tournament"),
)


def scenario_by_id(scenario_id: int) -> Scenario:
    for scenario in SCENARIOS:
        if scenario.id == scenario_id:
            return scenario
    raise ValueError(f"scenario id must be in 1..6, got {scenario_id}")


def scenario_config(base: GaConfig, scenario: Scenario, seed: int) -> GaConfig:
    """The base config with the scenario's operators and the given seed.

    Crossover and mutation rates carry over from ``base``; the scenario
    only fixes which operators run.
    """
    crossover, selection = scenario.methods()
    return config_for(
        base,
        crossover=CrossoverMethod(crossover.kind, base.crossover.rate),
        selection=selection,
        seed=seed,
    )


def scenario_seed_base(seed0: int, scenario_id: int) -> int:
    return (seed0 + scenario_id * SCENARIO_SEED_STRIDE) & MASK64


@dataclass(frozen=True)
class TraceRecord:
    """One replication's trace plus the coordinates that produced it."""

    scenario_id: int
    replication: int
    seed: int
    trace: ConvergenceTrace


@dataclass(frozen=True)
class ScenarioReport:
    """Aggregate convergence statistics for one scenario.

    ``success_count`` counts replications whose best fitness reached the
    oracle optimum within the generation budget; first-hit quartiles are
    taken over successful replications only and are None when there were
    no successes.
    """

    scenario_id: int
    crossover: str
    selection: str
    replications: int
    success_count: int
    success_rate: float
    first_hit_median: float | None
    first_hit_q1: float | None
    first_hit_q3: float | None
    best_final_fitness_mean: float


def _aggregate(
    scenario_id: int,
    crossover: str,
    selection: str,
    first_hits: Sequence[int | None],
    final_bests: Sequence[int],
) -> ScenarioReport:
    # Shared by run_scenario and summarize so both produce bit-identical
    # floats from the same underlying integers.
    replications = len(first_hits)
    hits = [h for h in first_hits if h is not None]
    if hits:
        q1, median, q3 = (float(q) for q in np.percentile(hits, [25, 50, 75]))
    else:
        q1 = median = q3 = None
    return ScenarioReport(
        scenario_id=scenario_id,
        crossover=crossover,
        selection=selection,
        replications=replications,
        success_count=len(hits),
        success_rate=len(hits) / replications,
        first_hit_median=median,
        first_hit_q1=q1,
        first_hit_q3=q3,
        best_final_fitness_mean=sum(final_bests) / len(final_bests),
    )


def build_report(scenario: Scenario, records: Sequence[TraceRecord]) -> ScenarioReport:
    if not records:
        raise ValueError("cannot aggregate zero replications")
    return _aggregate(
        scenario.id,
        scenario.crossover,
        scenario.selection,
        [r.trace.first_hit for r in records],
        [r.trace.stats[-1].best_fitness for r in records],
    )


def run_scenario(
    scenario: Scenario,
    instance: KnapsackInstance,
    base: GaConfig,
    replications: int,
    seed0: int,
    backend: str | None = None,
    optimum: int | None = None,
) -> tuple[ScenarioReport, list[TraceRecord]]:
    """Run ``replications`` seeded GA runs of one scenario and aggregate.

    Replication i uses seed (seed0 + i) mod 2^64. ``optimum`` skips the
    oracle recomputation when the caller already holds it.
    """
    if replications < 1:
        raise ValueError(f"replications must be >= 1, got {replications}")
    if optimum is None:
        optimum = dp_optimal(instance)[0]
    records = []
    for i in range(replications):
        seed = (seed0 + i) & MASK64
        trace = run_ga(instance, scenario_config(base, scenario, seed), optimum, backend)
        records.append(
            TraceRecord(scenario_id=scenario.id, replication=i, seed=seed, trace=trace)
        )
    return build_report(scenario, records), records


def run_all(
    instance: KnapsackInstance,
    base: GaConfig,
    replications: int,
    seed0: int,
    backend: str | None = None,
    scenarios: Sequence[Scenario] = SCENARIOS,
) -> tuple[list[ScenarioReport], list[TraceRecord]]:
    """Run the scenario suite with disjoint seed blocks, ordered by id."""
    if replications > SCENARIO_SEED_STRIDE:
        raise ValueError(
            f"replications must be <= {SCENARIO_SEED_STRIDE} to keep "
            f"scenario seed blocks disjoint, got {replications}"
        )
    optimum = dp_optimal(instance)[0]
    reports = []
    records = []
    for scenario in sorted(scenarios, key=lambda s: s.id):
        report, scenario_records = run_scenario(
            scenario,
            instance,
            base,
            replications,
            scenario_seed_base(seed0, scenario.id),
            backend,
            optimum,
        )
        reports.append(report)
        records.extend(scenario_records)
    return reports, records


def _format_real(x: float) -> str:
    return format(x, ".17g")


def _format_optional(x: float | None) -> str:
    return "" if x is None else _format_real(x)


def write_traces_csv(records: Iterable[TraceRecord], path: str | Path) -> None:
    """One row per (replication, generation), sorted as given."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for record in records:
            for stats in record.trace.stats:
                writer.writerow(
                    (
                        record.scenario_id,
                        record.replication,
                        record.seed,
                        stats.generation,
                        stats.best_fitness,
                        _format_real(stats.mean_fitness),
                        stats.feasible_count,
                    )
                )


def write_report_csv(reports: Iterable[ScenarioReport], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_HEADER)
        for report in reports:
            writer.writerow(
                (
                    report.scenario_id,
                    report.crossover,
                    report.selection,
                    report.replications,
                    report.success_count,
                    _format_real(report.success_rate),
                    _format_optional(report.first_hit_median),
                    _format_optional(report.first_hit_q1),
                    _format_optional(report.first_hit_q3),
                    _format_real(report.best_final_fitness_mean),
                )
            )


@dataclass(frozen=True)
class TraceRow:
    """One parsed data row of a trace CSV."""

    scenario_id: int
    replication: int
    seed: int
    generation: int
    best_fitness: int
    mean_fitness: float
    feasible_count: int


class TraceFormatError(ValueError):
    """A trace CSV that does not match the published schema."""


_INT_COLUMNS = {
    "scenario_id",
    "replication",
    "seed",
    "generation",
    "best_fitness",
    "feasible_count",
}


def read_trace_rows(path: str | Path) -> list[TraceRow]:
    """Parse a trace CSV, naming the offending row and column on errors.

    Row numbers in diagnostics are 1-based file lines; the header is
    line 1.
    """
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise TraceFormatError(f"{path}: empty file, expected a trace header")
        if tuple(header) != TRACE_HEADER:
            raise TraceFormatError(
                f"{path}: bad header {header!r}, expected {list(TRACE_HEADER)!r}"
            )
        for line, row in enumerate(reader, start=2):
            if len(row) != len(TRACE_HEADER):
                raise TraceFormatError(
                    f"{path}: row {line} has {len(row)} cells, expected "
                    f"{len(TRACE_HEADER)}"
                )
            values: dict[str, int | float] = {}
            for column, cell in zip(TRACE_HEADER, row):
                try:
                    values[column] = int(cell) if column in _INT_COLUMNS else float(cell)
                except ValueError:
                    raise TraceFormatError(
                        f"{path}: row {line}, column {column!r}: "
                        f"not a number: {cell!r}"
                    ) from None
            rows.append(TraceRow(**values))  # type: ignore[arg-type]
    return rows


def summarize_trace_rows(rows: Sequence[TraceRow], optimum: int) -> list[ScenarioReport]:
    """Recompute scenario reports from raw trace rows.

    A replication counts as a success if any generation's best fitness
    equals ``optimum``. Outputs are ordered by scenario id; operator names
    are filled in for the six known scenario ids and left blank otherwise.
    """
    by_run: dict[tuple[int, int], list[TraceRow]] = {}
    for row in rows:
        by_run.setdefault((row.scenario_id, row.replication), []).append(row)
    by_scenario: dict[int, list[tuple[int | None, int]]] = {}
    for (scenario_id, _), run_rows in sorted(by_run.items()):
        run_rows.sort(key=lambda r: r.generation)
        first_hit = next(
            (r.generation for r in run_rows if r.best_fitness == optimum), None
        )
        final_best = run_rows[-1].best_fitness
        by_scenario.setdefault(scenario_id, []).append((first_hit, final_best))
    known = {s.id: s for s in SCENARIOS}
    reports = []
    for scenario_id, outcomes in sorted(by_scenario.items()):
        scenario = known.get(scenario_id)
        reports.append(
            _aggregate(
                scenario_id,
                scenario.crossover if scenario else "",
                scenario.selection if scenario else "",
                [hit for hit, _ in outcomes],
                [best for _, best in outcomes],
            )
        )
    return reports


def random_instance(
    n: int,
    max_weight: int = 20,
    max_value: int = 20,
    capacity_ratio: float = 0.5,
    seed: int = 0,
) -> KnapsackInstance:
    """Uniform random instance; capacity is a fixed fraction of total weight."""
    if n < 1:
        raise ValueError(f"need at least one item, got {n}")
    if max_weight < 1 or max_value < 1:
        raise ValueError("max_weight and max_value must be >= 1")
    if not 0.0 <= capacity_ratio <= 1.0:
        raise ValueError(f"capacity_ratio must be in [0, 1], got {capacity_ratio}")
    rng = SplitMix64(seed)
    weights = tuple(1 + rng.randbelow(max_weight) for _ in range(n))
    values = tuple(1 + rng.randbelow(max_value) for _ in range(n))
    return KnapsackInstance(weights, values, int(sum(weights) * capacity_ratio))
