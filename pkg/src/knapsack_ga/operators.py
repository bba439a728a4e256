"""Selection, crossover, and mutation operators behind uniform interfaces.

Every operator is a pure function of its inputs and the state of the
passed random stream; none holds mutable state. Selection returns an index
into the population (callers control duplication). The exact draws each
operator consumes are documented per function because the draw order is
part of the reproducibility contract (see ``engine``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Chromosome, KnapsackInstance, fitness
from .rng import SplitMix64

SELECTION_KINDS = ("rank", "roulette", "tournament")
CROSSOVER_KINDS = ("one_point", "two_point")
MUTATION_SCOPES = ("chromosome", "gene")

DEFAULT_TOURNAMENT_SIZE = 3


@dataclass(frozen=True)
class SelectionMethod:
    """One of rank, roulette, or tournament selection.

    ``tournament_size`` only matters for the tournament kind; it defaults
    to 3.
    """

    kind: str
    tournament_size: int = DEFAULT_TOURNAMENT_SIZE

    def __post_init__(self) -> None:
        if self.kind not in SELECTION_KINDS:
            raise ValueError(f"unknown selection kind: {self.kind!r}")
        if self.tournament_size < 1:
            raise ValueError(f"tournament size must be >= 1, got {self.tournament_size}")

    @classmethod
    def rank(cls) -> "SelectionMethod":
        return cls("rank")

    @classmethod
    def roulette(cls) -> "SelectionMethod":
        return cls("roulette")

    @classmethod
    def tournament(cls, size: int = DEFAULT_TOURNAMENT_SIZE) -> "SelectionMethod":
        return cls("tournament", size)


@dataclass(frozen=True)
class CrossoverMethod:
    """One- or two-point crossover applied with probability ``rate``."""

    kind: str
    rate: float = 0.8

    def __post_init__(self) -> None:
        if self.kind not in CROSSOVER_KINDS:
            raise ValueError(f"unknown crossover kind: {self.kind!r}")
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"crossover rate must be in [0, 1], got {self.rate}")

    @classmethod
    def one_point(cls, rate: float = 0.8) -> "CrossoverMethod":
        return cls("one_point", rate)

    @classmethod
    def two_point(cls, rate: float = 0.8) -> "CrossoverMethod":
        return cls("two_point", rate)


@dataclass(frozen=True)
class MutationConfig:
    """Bit-flip mutation.

    ``scope`` selects the interpretation of ``rate``:

    * ``"chromosome"`` (default): with probability ``rate`` the chromosome
      undergoes exactly one uniformly chosen bit flip.
    * ``"gene"``: every gene is flipped independently with probability
      ``rate``.
    """

    rate: float = 0.4
    scope: str = "chromosome"

    def __post_init__(self) -> None:
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"mutation rate must be in [0, 1], got {self.rate}")
        if self.scope not in MUTATION_SCOPES:
            raise ValueError(f"unknown mutation scope: {self.scope!r}")


@dataclass(frozen=True)
class Population:
    """Ordered chromosomes with their cached fitness values."""

    members: tuple[Chromosome, ...]
    fitnesses: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("population must have at least one member")
        if len(self.members) != len(self.fitnesses):
            raise ValueError(
                f"members and fitnesses differ in length: "
                f"{len(self.members)} != {len(self.fitnesses)}"
            )

    def __len__(self) -> int:
        return len(self.members)

    @classmethod
    def evaluate(
        cls, members: Iterable[Chromosome], instance: KnapsackInstance
    ) -> "Population":
        """Build a population, computing the fitness cache."""
        ms = tuple(members)
        return cls(ms, tuple(fitness(m, instance) for m in ms))

    def best_index(self) -> int:
        """Lowest index attaining the maximum fitness."""
        best = 0
        for i in range(1, len(self.fitnesses)):
            if self.fitnesses[i] > self.fitnesses[best]:
                best = i
        return best


def _rank_weights(fitnesses: Sequence[int]) -> list[int]:
    """Linear ranking weights: the fittest gets n, the least fit gets 1.

    Ranks come from sorting fitness descending with ties broken by lower
    index (stable), so equal fitnesses keep their original order.
    """
    n = len(fitnesses)
    order = sorted(range(n), key=lambda i: (-fitnesses[i], i))
    weights = [0] * n
    for position, i in enumerate(order):
        weights[i] = n - position
    return weights


def rank_probabilities(fitnesses: Sequence[int]) -> list[float]:
    """Selection probabilities for linear rank selection.

    Individual with rank r (1 = fittest) gets weight n + 1 - r, normalized
    by the total n(n+1)/2. The vector sums to 1 and is non-increasing in
    rank number.
    """
    if not fitnesses:
        raise ValueError("rank_probabilities requires a non-empty fitness list")
    weights = _rank_weights(fitnesses)
    total = len(fitnesses) * (len(fitnesses) + 1) // 2
    return [w / total for w in weights]


def _weighted_index(weights: Sequence[int], total: int, u: float) -> int:
    """First index whose cumulative weight exceeds ``u * total``.

    Samples index i with probability weights[i] / total using exact integer
    accumulation, so the numba kernel can reproduce it bit for bit.
    """
    target = u * total
    cum = 0
    for i, w in enumerate(weights):
        cum += w
        if target < cum:
            return i
    return len(weights) - 1


def select_rank(population: Population, rng: SplitMix64) -> int:
    """Rank selection. Consumes one ``random()`` draw."""
    weights = _rank_weights(population.fitnesses)
    total = len(population) * (len(population) + 1) // 2
    return _weighted_index(weights, total, rng.random())


def select_roulette(population: Population, rng: SplitMix64) -> int:
    """Fitness-proportionate selection. Consumes one ``random()`` draw.

    When the whole population has zero fitness (every member infeasible
    under the death penalty) the share formula is undefined; we fall back
    to a uniform pick.
    """
    total = sum(population.fitnesses)
    if total == 0:
        n = len(population)
        return _weighted_index([1] * n, n, rng.random())
    return _weighted_index(population.fitnesses, total, rng.random())


def select_tournament(population: Population, size: int, rng: SplitMix64) -> int:
    """Tournament selection. Consumes exactly ``size`` draws.

    Draws ``size`` distinct contenders uniformly without replacement and
    returns the one with maximum fitness, ties broken by lowest index.
    """
    n = len(population)
    if not 1 <= size <= n:
        raise ValueError(f"tournament size must be in [1, {n}], got {size}")
    contenders = rng.sample_indices(size, n)
    best = contenders[0]
    for i in contenders[1:]:
        if population.fitnesses[i] > population.fitnesses[best] or (
            population.fitnesses[i] == population.fitnesses[best] and i < best
        ):
            best = i
    return best


def select_parent(method: SelectionMethod, population: Population, rng: SplitMix64) -> int:
    """Dispatch to the configured selection operator."""
    if method.kind == "rank":
        return select_rank(population, rng)
    if method.kind == "roulette":
        return select_roulette(population, rng)
    return select_tournament(population, method.tournament_size, rng)


def _check_parents(p1: Chromosome, p2: Chromosome, min_length: int) -> int:
    if len(p1) != len(p2):
        raise ValueError(f"parent lengths differ: {len(p1)} != {len(p2)}")
    if len(p1) < min_length:
        raise ValueError(f"crossover requires length >= {min_length}, got {len(p1)}")
    return len(p1)


def crossover_one_point(
    p1: Chromosome, p2: Chromosome, rng: SplitMix64
) -> tuple[Chromosome, Chromosome]:
    """Exchange tails after a cut point k uniform in {1, ..., L-1}.

    Degenerate cuts (k = 0 or k = L) are excluded so that an applied
    crossover always exchanges at least one gene. Consumes one
    ``randbelow`` draw.
    """
    length = _check_parents(p1, p2, 2)
    k = 1 + rng.randbelow(length - 1)
    return (
        Chromosome(p1.genes[:k] + p2.genes[k:]),
        Chromosome(p2.genes[:k] + p1.genes[k:]),
    )


def crossover_two_point(
    p1: Chromosome, p2: Chromosome, rng: SplitMix64
) -> tuple[Chromosome, Chromosome]:
    """Swap the gene segment [a, b) between the parents.

    a is uniform in {1, ..., L-2}; b is uniform in {a+1, ..., L-1}.
    Consumes two ``randbelow`` draws (a first, then b).
    """
    length = _check_parents(p1, p2, 3)
    a = 1 + rng.randbelow(length - 2)
    b = a + 1 + rng.randbelow(length - 1 - a)
    return (
        Chromosome(p1.genes[:a] + p2.genes[a:b] + p1.genes[b:]),
        Chromosome(p2.genes[:a] + p1.genes[a:b] + p2.genes[b:]),
    )


def apply_crossover(
    method: CrossoverMethod, p1: Chromosome, p2: Chromosome, rng: SplitMix64
) -> tuple[Chromosome, Chromosome]:
    """Perform the configured crossover with probability ``method.rate``.

    Always consumes one ``random()`` decision draw; cut-point draws happen
    only when the crossover is applied. When it is not applied the parents
    are returned unchanged (chromosomes are immutable, so sharing is safe).
    """
    min_length = 2 if method.kind == "one_point" else 3
    _check_parents(p1, p2, min_length)
    if rng.random() < method.rate:
        if method.kind == "one_point":
            return crossover_one_point(p1, p2, rng)
        return crossover_two_point(p1, p2, rng)
    return p1, p2


def mutate_bit_flip(
    chromosome: Chromosome, config: MutationConfig, rng: SplitMix64
) -> Chromosome:
    """Bit-flip mutation under the configured scope.

    Chromosome scope consumes one ``random()`` decision draw plus, when the
    mutation fires, one ``randbelow`` draw for the flip position. Gene
    scope consumes one ``random()`` draw per gene.
    """
    if config.scope == "gene":
        genes = list(chromosome.genes)
        changed = False
        for i in range(len(genes)):
            if rng.random() < config.rate:
                genes[i] ^= 1
                changed = True
        return Chromosome(tuple(genes)) if changed else chromosome
    if rng.random() < config.rate:
        genes = list(chromosome.genes)
        position = rng.randbelow(len(genes))
        genes[position] ^= 1
        return Chromosome(tuple(genes))
    return chromosome
