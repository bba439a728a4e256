"""The generational loop: initialization, selection, crossover, mutation,
replacement, and per-generation statistics for one seeded run.

Reproducibility contract
------------------------

A run is a pure function of (instance, config), seed included. One
SplitMix64 stream is created from ``config.seed`` and every draw comes
from it in a fixed order:

1. Initialization: for each member (in slot order), for each gene (in
   index order), one ``randbelow(2)`` draw.
2. Each generation, for each parent pairing until the population is full:
   parent 1 selection draws, parent 2 selection draws, one crossover
   decision draw, the cut-point draws (only when the crossover applies),
   child 1 mutation draws, child 2 mutation draws. Elite copies consume no
   draws. When only one slot remains, both children are still generated
   and mutated and the second is discarded.

Per-operator draw counts are documented in ``operators``. The numba kernel
replays exactly this order, which is what makes backends interchangeable.

Generation numbering: generation 0 is the freshly initialized population,
recorded before any variation, and each later entry follows one
replacement step; a trace therefore holds exactly ``config.generations``
entries for generations ``0 .. generations-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from .backend import resolve_backend
from .core import Chromosome, KnapsackInstance, total_weight
from .operators import (
    CrossoverMethod,
    MutationConfig,
    Population,
    SelectionMethod,
    apply_crossover,
    mutate_bit_flip,
    select_parent,
)
from .rng import MASK64, SplitMix64


@dataclass(frozen=True)
class GaConfig:
    """Operator choices and numeric hyperparameters for one run.

    The defaults mirror the benchmark setup this package reproduces:
    50 generations, 8 solutions per population, crossover rate 0.8,
    per-chromosome bit-flip mutation at rate 0.4, no elitism.
    """

    generations: int = 50
    population_size: int = 8
    selection: SelectionMethod = field(default_factory=SelectionMethod.tournament)
    crossover: CrossoverMethod = field(default_factory=CrossoverMethod.one_point)
    mutation: MutationConfig = field(default_factory=MutationConfig)
    elitism: int = 0
    seed: int = 42

    def __post_init__(self) -> None:
        if self.generations < 1:
            raise ValueError(f"generations must be >= 1, got {self.generations}")
        if self.population_size < 2 or self.population_size % 2 != 0:
            raise ValueError(
                f"population size must be an even integer >= 2, got {self.population_size}"
            )
        if not 0 <= self.elitism < self.population_size:
            raise ValueError(
                f"elitism must be in [0, population_size), got {self.elitism}"
            )
        if not 0 <= self.seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.selection.kind == "tournament" and (
            self.selection.tournament_size > self.population_size
        ):
            raise ValueError(
                f"tournament size {self.selection.tournament_size} exceeds "
                f"population size {self.population_size}"
            )

    @property
    def mutation_scope(self) -> str:
        return self.mutation.scope

    def to_dict(self) -> dict[str, Any]:
        """Flat document form, the schema accepted by the CLI ``--config``."""
        return {
            "generations": self.generations,
            "population_size": self.population_size,
            "selection": self.selection.kind,
            "tournament_size": self.selection.tournament_size,
            "crossover": self.crossover.kind,
            "crossover_rate": self.crossover.rate,
            "mutation_rate": self.mutation.rate,
            "mutation_scope": self.mutation.scope,
            "elitism": self.elitism,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "GaConfig":
        """Build a config from the flat document form; missing keys keep defaults."""
        unknown = set(doc) - set(cls().to_dict())
        if unknown:
            raise ValueError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        base = cls()
        merged = base.to_dict() | doc
        return cls(
            generations=merged["generations"],
            population_size=merged["population_size"],
            selection=SelectionMethod(merged["selection"], merged["tournament_size"]),
            crossover=CrossoverMethod(merged["crossover"], merged["crossover_rate"]),
            mutation=MutationConfig(merged["mutation_rate"], merged["mutation_scope"]),
            elitism=merged["elitism"],
            seed=merged["seed"],
        )


@dataclass(frozen=True)
class GenerationStats:
    """Snapshot of one generation.

    ``mean_fitness`` averages over all members, zeros included, so it may
    sit far below ``best_fitness``.
    """

    generation: int
    best_fitness: int
    mean_fitness: float
    feasible_count: int
    best_chromosome: Chromosome


@dataclass(frozen=True)
class ConvergenceTrace:
    """Per-generation statistics for one seeded run.

    ``first_hit`` is the earliest generation whose best fitness equals the
    oracle optimum the run was scored against, or None if the run never
    reached it.
    """

    config: GaConfig
    stats: tuple[GenerationStats, ...]
    first_hit: int | None


def init_population(
    instance: KnapsackInstance, size: int, rng: SplitMix64
) -> Population:
    """Random population: every gene an independent fair bit."""
    if size < 2:
        raise ValueError(f"population size must be >= 2, got {size}")
    members = [
        Chromosome(tuple(rng.randbelow(2) for _ in range(instance.n)))
        for _ in range(size)
    ]
    return Population.evaluate(members, instance)


def _elite_indices(population: Population, count: int) -> list[int]:
    order = sorted(
        range(len(population)), key=lambda i: (-population.fitnesses[i], i)
    )
    return order[:count]


def step_generation(
    population: Population,
    config: GaConfig,
    instance: KnapsackInstance,
    rng: SplitMix64,
) -> Population:
    """One generational replacement step (see module docstring for draw order)."""
    size = len(population)
    next_members: list[Chromosome] = [
        population.members[i] for i in _elite_indices(population, config.elitism)
    ]
    while len(next_members) < size:
        i1 = select_parent(config.selection, population, rng)
        i2 = select_parent(config.selection, population, rng)
        child1, child2 = apply_crossover(
            config.crossover, population.members[i1], population.members[i2], rng
        )
        child1 = mutate_bit_flip(child1, config.mutation, rng)
        child2 = mutate_bit_flip(child2, config.mutation, rng)
        next_members.append(child1)
        if len(next_members) < size:
            next_members.append(child2)
    return Population.evaluate(next_members, instance)


def _stats_of(
    population: Population, instance: KnapsackInstance, generation: int
) -> GenerationStats:
    best = population.best_index()
    feasible = sum(
        1 for m in population.members if total_weight(m, instance) <= instance.capacity
    )
    return GenerationStats(
        generation=generation,
        best_fitness=population.fitnesses[best],
        mean_fitness=sum(population.fitnesses) / len(population),
        feasible_count=feasible,
        best_chromosome=population.members[best],
    )


def _run_python(instance: KnapsackInstance, config: GaConfig) -> list[GenerationStats]:
    rng = SplitMix64(config.seed)
    population = init_population(instance, config.population_size, rng)
    stats = [_stats_of(population, instance, 0)]
    for generation in range(1, config.generations):
        population = step_generation(population, config, instance, rng)
        stats.append(_stats_of(population, instance, generation))
    return stats


def _run_numba(instance: KnapsackInstance, config: GaConfig) -> list[GenerationStats]:
    from . import _kernel

    best, mean, feasible, best_genes = _kernel.run(instance, config)
    return [
        GenerationStats(
            generation=g,
            best_fitness=int(best[g]),
            mean_fitness=float(mean[g]),
            feasible_count=int(feasible[g]),
            best_chromosome=Chromosome(tuple(int(x) for x in best_genes[g])),
        )
        for g in range(config.generations)
    ]


def run_ga(
    instance: KnapsackInstance,
    config: GaConfig,
    optimum: int,
    backend: str | None = None,
) -> ConvergenceTrace:
    """Run one seeded GA for exactly ``config.generations`` generations.

    ``optimum`` is the oracle value used to detect the first-hit
    generation; pass ``dp_optimal(instance)[0]``. ``backend`` overrides the
    implementation choice (see ``backend.resolve_backend``).
    """
    if config.selection.kind == "tournament":
        # GaConfig already validates this, but config and instance meet here.
        if config.selection.tournament_size > config.population_size:
            raise ValueError("tournament size exceeds population size")
    minimum_items = 2 if config.crossover.kind == "one_point" else 3
    if instance.n < minimum_items:
        raise ValueError(
            f"{config.crossover.kind} crossover needs at least "
            f"{minimum_items} items, instance has {instance.n}"
        )
    chosen = resolve_backend(backend)
    if chosen == "numba":
        stats = _run_numba(instance, config)
    else:
        stats = _run_python(instance, config)
    first_hit = next((s.generation for s in stats if s.best_fitness == optimum), None)
    return ConvergenceTrace(config=config, stats=tuple(stats), first_hit=first_hit)


def config_for(base: GaConfig, **overrides: Any) -> GaConfig:
    """Convenience wrapper around dataclasses.replace for config tweaks."""
    return replace(base, **overrides)
