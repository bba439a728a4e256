"""Acceptance gate: one test per numbered criterion, each printing a
PASS/FAIL line directly to the terminal.

Two criteria are known-red and are implemented as stated anyway:

* Criterion 1 pins the oracle output for the bundled instance at 52, but
  the instance's true optimum is 55 (unique witness, items
  0 1 2 3 7 8 11 16, weight exactly 29). Both independent exact solvers
  agree, so the pinned value itself is wrong, and the test fails honestly.
* Criterion 6 expects the one-point/tournament scenario to reach the
  optimum most often. Against the true optimum of 55 every scenario
  succeeds in well under 5% of runs and the expected ordering does not
  emerge (rank selection leads; see the decisions ledger for the sweep
  data). The frozen measured rates are asserted as regression bounds and
  pass; the three directional claims fail honestly.

Tolerances are pinned in the constants below. Criterion 8 runs last and
checks every trace produced by the other criteria.
"""

import time
from pathlib import Path

import pytest

from knapsack_ga import (
    Chromosome,
    GaConfig,
    Population,
    cli,
    crossover_one_point,
    crossover_two_point,
    dp_optimal,
    enumerate_optimal,
    fitness,
    rank_probabilities,
    read_trace_rows,
    run_all,
    run_ga,
    select_rank,
    select_roulette,
    select_tournament,
)
from knapsack_ga.rng import SplitMix64

PINNED_ORACLE_OUTPUT = 52  # criterion 1; the instance's true optimum is 55
SELECTION_TOLERANCE = 0.01  # criterion 3
TOURNAMENT_MAX_RATE = 0.375  # C(7,2)/C(8,3)
SUCCESS_RATE_BAND = 0.05  # criterion 6 regression tolerance
# success rates measured once (defaults, seed 42, 200 replications) and frozen
FROZEN_SUCCESS_RATES = {1: 0.020, 2: 0.035, 3: 0.010, 4: 0.040, 5: 0.020, 6: 0.005}

# every trace any criterion produces lands here for criterion 8
_BEST_FITNESS_LOG: list[tuple[str, int]] = []


def _log_trace(source: str, best_values) -> None:
    _BEST_FITNESS_LOG.extend((source, int(b)) for b in best_values)


def _verdict(capsys, number: int, description: str, passed: bool) -> None:
    with capsys.disabled():
        print(f"\ncriterion {number} ({description}): {'PASS' if passed else 'FAIL'}")


class _ScriptedDraws:
    def __init__(self, randbelow_values=(), random_values=()):
        self._randbelow = list(randbelow_values)
        self._random = list(random_values)

    def randbelow(self, n):
        value = self._randbelow.pop(0)
        assert 0 <= value < n
        return value

    def random(self):
        return self._random.pop(0)


def test_criterion_1_oracle_value(capsys, instance):
    start = time.perf_counter()
    enum_value, _ = enumerate_optimal(instance)
    dp_value, witness = dp_optimal(instance)
    code = cli.main(["oracle"])
    out, _ = capsys.readouterr()
    printed = int(out.splitlines()[0].removeprefix("optimum: "))
    elapsed = time.perf_counter() - start
    passed = (
        code == 0
        and elapsed < 5.0
        and printed == dp_value == enum_value
        and printed == PINNED_ORACLE_OUTPUT
    )
    _verdict(capsys, 1, "oracle prints 52, enumeration confirms, < 5 s", passed)
    assert code == 0
    assert elapsed < 5.0
    assert printed == dp_value == enum_value
    assert printed == PINNED_ORACLE_OUTPUT, (
        f"oracle and exhaustive enumeration agree the optimum is {printed} "
        f"(witness items {witness.items()}, weight 29 of capacity 29); "
        f"the pinned output of {PINNED_ORACLE_OUTPUT} is not attainable"
    )


def test_criterion_2_fitness_penalty_suite(capsys, instance):
    start = time.perf_counter()
    rng = SplitMix64(20240825)
    mismatches = 0
    for _ in range(10_000):
        genes = tuple(rng.randbelow(2) for _ in range(instance.n))
        weight = sum(w for w, g in zip(instance.weights, genes) if g)
        value = sum(v for v, g in zip(instance.values, genes) if g)
        expected = value if weight <= instance.capacity else 0
        if fitness(Chromosome(genes), instance) != expected:
            mismatches += 1
    elapsed = time.perf_counter() - start
    passed = mismatches == 0 and elapsed < 1.0
    _verdict(capsys, 2, "10k random chromosomes match direct recomputation, < 1 s", passed)
    assert mismatches == 0
    assert elapsed < 1.0


def test_criterion_3_selection_distributions(capsys):
    start = time.perf_counter()
    draws = 100_000

    def freqs(select, n, seed):
        counts = [0] * n
        rng = SplitMix64(seed)
        for _ in range(draws):
            counts[select(rng)] += 1
        return [c / draws for c in counts]

    def dummy_population(fitnesses):
        return Population(tuple(Chromosome.zeros(1) for _ in fitnesses), tuple(fitnesses))

    roulette_pop = dummy_population([3, 1])
    roulette = freqs(lambda rng: select_roulette(roulette_pop, rng), 2, seed=101)
    roulette_ok = (
        abs(roulette[0] - 0.75) < SELECTION_TOLERANCE
        and abs(roulette[1] - 0.25) < SELECTION_TOLERANCE
    )

    tournament_pop = dummy_population(list(range(1, 9)))
    tournament = freqs(lambda rng: select_tournament(tournament_pop, 3, rng), 8, seed=102)
    tournament_ok = abs(tournament[7] - TOURNAMENT_MAX_RATE) < SELECTION_TOLERANCE

    rank_pop = dummy_population([37, 6, 36, 30, 28])
    rank = freqs(lambda rng: select_rank(rank_pop, rng), 5, seed=103)
    expected_rank = rank_probabilities(rank_pop.fitnesses)
    rank_ok = all(
        abs(f - p) < SELECTION_TOLERANCE for f, p in zip(rank, expected_rank)
    )

    elapsed = time.perf_counter() - start
    passed = roulette_ok and tournament_ok and rank_ok and elapsed < 5.0
    _verdict(capsys, 3, "selection frequencies within 0.01 over 100k draws, < 5 s", passed)
    assert roulette_ok, f"roulette frequencies {roulette}"
    assert tournament_ok, f"tournament max frequency {tournament[7]}"
    assert rank_ok, f"rank frequencies {rank} vs {expected_rank}"
    assert elapsed < 5.0


def test_criterion_4_crossover_conservation(capsys):
    start = time.perf_counter()
    rng = SplitMix64(31337)
    length = 17
    conserved = True
    for variant in (crossover_one_point, crossover_two_point):
        for _ in range(10_000):
            bits1 = rng.next_u64()
            bits2 = rng.next_u64()
            p1 = Chromosome(tuple((bits1 >> j) & 1 for j in range(length)))
            p2 = Chromosome(tuple((bits2 >> j) & 1 for j in range(length)))
            c1, c2 = variant(p1, p2, rng)
            if len(c1) != length or len(c2) != length:
                conserved = False
            # binary genes: the unordered pair is conserved iff the sum is
            for i in range(length):
                if c1.genes[i] + c2.genes[i] != p1.genes[i] + p2.genes[i]:
                    conserved = False

    one_a, one_b = crossover_one_point(
        Chromosome.from_string("00000000111"),
        Chromosome.from_string("11111111000"),
        _ScriptedDraws(randbelow_values=[7]),  # cut point 8
    )
    one_point_ok = (str(one_a), str(one_b)) == ("00000000000", "11111111111")

    two_a, two_b = crossover_two_point(
        Chromosome.from_string("1111111111"),
        Chromosome.from_string("0000000000"),
        _ScriptedDraws(randbelow_values=[1, 4]),  # cut points (2, 7)
    )
    two_point_ok = (str(two_a), str(two_b)) == ("1100000111", "0011111000")

    elapsed = time.perf_counter() - start
    passed = conserved and one_point_ok and two_point_ok and elapsed < 1.0
    _verdict(capsys, 4, "gene conservation over 10k pairs; worked cut examples, < 1 s", passed)
    assert conserved
    assert one_point_ok, f"cut-8 exchange produced {one_a} / {one_b}"
    assert two_point_ok, f"cut-(2,7) exchange produced {two_a} / {two_b}"
    assert elapsed < 1.0


def test_criterion_5_cli_determinism(capsys, tmp_path, optimum):
    args = ["scenarios", "--scenarios", "1,2,3,4,5,6", "--replications", "20", "--seed", "42"]
    code_a = cli.main(args + ["--output", str(tmp_path / "a")])
    code_b = cli.main(args + ["--output", str(tmp_path / "b")])
    capsys.readouterr()
    names = [f"scenario_{i}_traces.csv" for i in range(1, 7)] + ["report.csv"]
    identical = all(
        (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        for name in names
    )
    for i in range(1, 7):
        rows = read_trace_rows(tmp_path / "a" / f"scenario_{i}_traces.csv")
        _log_trace("criterion 5 suite", (row.best_fitness for row in rows))
    passed = code_a == code_b == 0 and identical
    _verdict(capsys, 5, "rerunning the 6x20 suite is byte-identical", passed)
    assert code_a == 0 and code_b == 0
    assert identical


def test_criterion_6_convergence_ranking(capsys, instance):
    start = time.perf_counter()
    reports, records = run_all(instance, GaConfig(), 200, 42)
    elapsed = time.perf_counter() - start
    for record in records:
        _log_trace(
            f"criterion 6 scenario {record.scenario_id}",
            (s.best_fitness for s in record.trace.stats),
        )
    rates = {r.scenario_id: r.success_rate for r in reports}
    medians = {r.scenario_id: r.first_hit_median for r in reports}

    within_band = all(
        abs(rates[sid] - FROZEN_SUCCESS_RATES[sid]) <= SUCCESS_RATE_BAND
        for sid in FROZEN_SUCCESS_RATES
    )
    highest = all(rates[3] > rates[sid] for sid in (1, 2, 4, 5, 6))
    tournament_beats_roulette = all(
        rates[t] > rates[r] for t in (3, 6) for r in (2, 5)
    )
    faster_median = (
        medians[3] is not None
        and medians[2] is not None
        and medians[5] is not None
        and medians[3] < medians[2]
        and medians[3] < medians[5]
    )
    passed = (
        elapsed < 120.0
        and within_band
        and highest
        and tournament_beats_roulette
        and faster_median
    )
    _verdict(
        capsys,
        6,
        "scenario ranking: 3 highest; tournament > roulette; 3 fastest median",
        passed,
    )
    assert elapsed < 120.0
    assert within_band, f"rates {rates} drifted from frozen {FROZEN_SUCCESS_RATES}"
    assert highest, (
        f"scenario 3 does not attain the highest success rate: measured {rates}; "
        f"reaching the true optimum (a single exact-capacity selection out of "
        f"2**17) is a rare event for every operator combination"
    )
    assert tournament_beats_roulette, (
        f"tournament scenarios do not strictly beat roulette scenarios: {rates}"
    )
    assert faster_median, f"median first hits {medians}"


def test_criterion_7_elitism_monotonicity(capsys, instance, optimum):
    start = time.perf_counter()
    violations = 0
    for seed in range(100):
        trace = run_ga(instance, GaConfig(elitism=1, seed=seed), optimum)
        best = [s.best_fitness for s in trace.stats]
        _log_trace("criterion 7 elitism run", best)
        if any(a > b for a, b in zip(best, best[1:])):
            violations += 1
    elapsed = time.perf_counter() - start
    passed = violations == 0 and elapsed < 10.0
    _verdict(capsys, 7, "100 elitism-1 runs have non-decreasing best fitness, < 10 s", passed)
    assert violations == 0
    assert elapsed < 10.0


def test_criterion_8_engine_bound(capsys, instance, optimum):
    # self-contained sweep so the bound is exercised even in isolation
    for scenario_seed in range(50):
        trace = run_ga(instance, GaConfig(seed=scenario_seed), optimum)
        _log_trace("criterion 8 sweep", (s.best_fitness for s in trace.stats))
    assert _BEST_FITNESS_LOG, "no acceptance traces were recorded"
    offenders = [
        (source, best) for source, best in _BEST_FITNESS_LOG if best > optimum
    ]
    passed = not offenders
    _verdict(
        capsys,
        8,
        f"no best fitness above the oracle optimum across "
        f"{len(_BEST_FITNESS_LOG)} recorded generations",
        passed,
    )
    assert not offenders, offenders[:5]
