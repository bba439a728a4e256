"""0/1 knapsack model: problem instances, bitstring solutions, scoring,
and two independent exact solvers used as ground truth.

Fitness uses a death penalty: a selection whose total weight exceeds the
capacity scores 0 instead of being removed from the population. All
arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

import numpy as np

# Instance totals must stay below this so the int64 kernel and the exact
# float comparisons in selection never overflow or lose precision.
_SUM_LIMIT = 1 << 62

# Exhaustive enumeration materialises a few arrays of length 2**n.
_ENUMERATION_MAX_ITEMS = 24

# Guard for the O(n * capacity) dynamic-programming table.
_DP_MAX_CELLS = 1 << 28


class InstanceFormatError(ValueError):
    """An instance document is missing, malformed, or violates an invariant."""


def _check_int_sequence(name: str, xs, allow_empty: bool = False) -> tuple[int, ...]:
    if not isinstance(xs, (list, tuple)):
        raise InstanceFormatError(f"{name} must be a list of integers")
    out = []
    for i, x in enumerate(xs):
        if isinstance(x, bool) or not isinstance(x, int):
            raise InstanceFormatError(f"{name}[{i}] is not an integer: {x!r}")
        if x < 0:
            raise InstanceFormatError(f"{name}[{i}] is negative: {x}")
        out.append(x)
    if not out and not allow_empty:
        raise InstanceFormatError(f"{name} must not be empty")
    return tuple(out)


@dataclass(frozen=True)
class KnapsackInstance:
    """Item weights/values and the knapsack capacity.

    Invariants: ``weights`` and ``values`` have identical length n >= 1 and
    every entry is a non-negative integer; ``capacity`` is a non-negative
    integer.
    """

    weights: tuple[int, ...]
    values: tuple[int, ...]
    capacity: int

    def __post_init__(self) -> None:
        weights = _check_int_sequence("weights", self.weights)
        values = _check_int_sequence("values", self.values)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "values", values)
        if len(weights) != len(values):
            raise InstanceFormatError(
                f"weights and values differ in length: {len(weights)} != {len(values)}"
            )
        if isinstance(self.capacity, bool) or not isinstance(self.capacity, int):
            raise InstanceFormatError(f"capacity is not an integer: {self.capacity!r}")
        if self.capacity < 0:
            raise InstanceFormatError(f"capacity is negative: {self.capacity}")
        if sum(values) >= _SUM_LIMIT or sum(weights) >= _SUM_LIMIT:
            raise InstanceFormatError("instance weight/value totals exceed the supported range")

    @property
    def n(self) -> int:
        """Number of items."""
        return len(self.weights)


@dataclass(frozen=True)
class Chromosome:
    """Fixed-length bitstring; gene i == 1 means item i is packed."""

    genes: tuple[int, ...]

    def __post_init__(self) -> None:
        genes = tuple(self.genes)
        object.__setattr__(self, "genes", genes)
        if not genes:
            raise ValueError("chromosome must have at least one gene")
        for g in genes:
            if g != 0 and g != 1:
                raise ValueError(f"genes must be 0 or 1, got {g!r}")

    def __len__(self) -> int:
        return len(self.genes)

    def __str__(self) -> str:
        return "".join(str(g) for g in self.genes)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Chromosome":
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def from_string(cls, s: str) -> "Chromosome":
        """Parse a bitstring such as ``"0101"``."""
        return cls(tuple(int(c) for c in s))

    @classmethod
    def zeros(cls, n: int) -> "Chromosome":
        return cls((0,) * n)

    @classmethod
    def from_items(cls, items: Iterable[int], n: int) -> "Chromosome":
        """Chromosome of length n selecting exactly the given item indices."""
        genes = [0] * n
        for i in items:
            genes[i] = 1
        return cls(tuple(genes))

    def items(self) -> tuple[int, ...]:
        """Indices of the packed items."""
        return tuple(i for i, g in enumerate(self.genes) if g)


def _check_length(chromosome: Chromosome, instance: KnapsackInstance) -> None:
    if len(chromosome) != instance.n:
        raise ValueError(
            f"chromosome length {len(chromosome)} does not match item count {instance.n}"
        )


def total_weight(chromosome: Chromosome, instance: KnapsackInstance) -> int:
    """Total weight of the packed items."""
    _check_length(chromosome, instance)
    return sum(w for w, g in zip(instance.weights, chromosome.genes) if g)


def fitness(chromosome: Chromosome, instance: KnapsackInstance) -> int:
    """Total value of the packed items, or 0 if the capacity is exceeded."""
    _check_length(chromosome, instance)
    weight = 0
    value = 0
    for w, v, g in zip(instance.weights, instance.values, chromosome.genes):
        if g:
            weight += w
            value += v
    return value if weight <= instance.capacity else 0


def dp_optimal(instance: KnapsackInstance) -> tuple[int, Chromosome]:
    """Exact optimum via the classical O(n * capacity) table.

    Returns the maximum feasible value and one witness chromosome achieving
    it. Witness reconstruction breaks ties toward excluding the item, so
    the witness is deterministic.
    """
    n, cap = instance.n, instance.capacity
    if (n + 1) * (cap + 1) > _DP_MAX_CELLS:
        raise ValueError(f"dynamic-programming table too large: {n} items, capacity {cap}")
    table = np.zeros((n + 1, cap + 1), dtype=np.int64)
    for i in range(1, n + 1):
        w, v = instance.weights[i - 1], instance.values[i - 1]
        row = table[i - 1].copy()
        if w <= cap:
            np.maximum(row[w:], table[i - 1, : cap + 1 - w] + v, out=row[w:])
        table[i] = row
    genes = [0] * n
    remaining = cap
    for i in range(n, 0, -1):
        if table[i, remaining] != table[i - 1, remaining]:
            genes[i - 1] = 1
            remaining -= instance.weights[i - 1]
    witness = Chromosome(tuple(genes))
    return int(table[n, cap]), witness


def enumerate_optimal(instance: KnapsackInstance) -> tuple[int, Chromosome]:
    """Exact optimum by brute force over all 2**n selections.

    Independent of :func:`dp_optimal`; used to cross-check it. Bit j of the
    enumeration code is item j, and the witness is the lowest such code
    among the optima. Limited to n <= 24 items.
    """
    n = instance.n
    if n > _ENUMERATION_MAX_ITEMS:
        raise ValueError(f"exhaustive enumeration supports at most {_ENUMERATION_MAX_ITEMS} items")
    codes = np.arange(1 << n, dtype=np.int64)
    weight = np.zeros(1 << n, dtype=np.int64)
    value = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        bit = (codes >> i) & 1
        weight += bit * instance.weights[i]
        value += bit * instance.values[i]
    scored = np.where(weight <= instance.capacity, value, -1)
    best_code = int(np.argmax(scored))
    genes = tuple(int((best_code >> i) & 1) for i in range(n))
    return int(scored[best_code]), Chromosome(genes)


def load_instance(path: str | Path) -> KnapsackInstance:
    """Load an instance from a JSON document.

    Schema: ``{"weights": [int...], "values": [int...], "capacity": int}``.
    Raises FileNotFoundError for a missing file and
    :class:`InstanceFormatError` (with a distinct message per defect) for
    anything that parses but does not describe a valid instance.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{path}: expected a JSON object at the top level")
    missing = [key for key in ("weights", "values", "capacity") if key not in doc]
    if missing:
        raise InstanceFormatError(f"{path}: missing field(s): {', '.join(missing)}")
    try:
        return KnapsackInstance(
            weights=doc["weights"], values=doc["values"], capacity=doc["capacity"]
        )
    except InstanceFormatError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from exc


def save_instance(instance: KnapsackInstance, path: str | Path) -> None:
    """Write an instance as JSON; ``load_instance`` round-trips it exactly."""
    doc = {
        "weights": list(instance.weights),
        "values": list(instance.values),
        "capacity": instance.capacity,
    }
    with open(path, "w", encoding="utf-8", newline="") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


def bundled_instance_path() -> Path:
    """Path of the bundled 17-item benchmark instance (paper_instance.json)."""
    return Path(str(resources.files("knapsack_ga").joinpath("data/paper_instance.json")))


def bundled_instance() -> KnapsackInstance:
    """The bundled 17-item benchmark instance with capacity 29."""
    return load_instance(bundled_instance_path())
