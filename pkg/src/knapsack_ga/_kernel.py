"""Numba-jitted twin of the generational loop.

Mirrors the pure-Python path (``engine._run_python`` plus the operators it
composes) draw for draw: the same SplitMix64 stream, consumed in the same
order, with the same integer-exact selection walks. Any change here must
keep the cross-backend trace-equality tests green.

Encodings used across the kernel boundary:
selection 0=rank 1=roulette 2=tournament; crossover 0=one_point
2-point=1; mutation scope 0=chromosome 1=gene.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import KnapsackInstance
from .engine import GaConfig

_SELECTION_CODE = {"rank": 0, "roulette": 1, "tournament": 2}
_CROSSOVER_CODE = {"one_point": 0, "two_point": 1}
_SCOPE_CODE = {"chromosome": 0, "gene": 1}

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 2.0**-53


@njit(cache=True)
def _next_u64(state):
    state[0] = state[0] + _GOLDEN
    z = state[0]
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True)
def _next_float(state):
    return np.float64(_next_u64(state) >> _S11) * _INV53


@njit(cache=True)
def _randbelow(state, n):
    return np.int64(_next_u64(state) % np.uint64(n))


@njit(cache=True)
def fill_stream(seed, out):
    """Write the raw 64-bit stream for a seed; used by equality tests."""
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed
    for i in range(out.shape[0]):
        out[i] = _next_u64(state)


@njit(cache=True)
def _weighted_index(weights, total, u):
    target = u * total
    cum = 0
    for i in range(weights.shape[0]):
        cum += weights[i]
        if target < cum:
            return i
    return weights.shape[0] - 1


@njit(cache=True)
def _rank_weights_into(fitnesses, out):
    # weight = n - (number of individuals sorted strictly before me), where
    # the sort is fitness descending with ties broken by lower index.
    n = fitnesses.shape[0]
    for i in range(n):
        before = 0
        for j in range(n):
            if fitnesses[j] > fitnesses[i] or (fitnesses[j] == fitnesses[i] and j < i):
                before += 1
        out[i] = n - before


@njit(cache=True)
def _select(state, sel_kind, tournament_size, fitnesses, rank_weights, ones, scratch):
    n = fitnesses.shape[0]
    if sel_kind == 0:
        total = n * (n + 1) // 2
        return _weighted_index(rank_weights, total, _next_float(state))
    if sel_kind == 1:
        total = 0
        for i in range(n):
            total += fitnesses[i]
        if total == 0:
            return _weighted_index(ones, n, _next_float(state))
        return _weighted_index(fitnesses, total, _next_float(state))
    # tournament: partial Fisher-Yates, then max fitness with lowest index.
    for i in range(n):
        scratch[i] = i
    best = np.int64(-1)
    for i in range(tournament_size):
        j = i + _randbelow(state, n - i)
        tmp = scratch[i]
        scratch[i] = scratch[j]
        scratch[j] = tmp
        cand = scratch[i]
        if best < 0 or fitnesses[cand] > fitnesses[best] or (
            fitnesses[cand] == fitnesses[best] and cand < best
        ):
            best = cand
    return best


@njit(cache=True)
def _mutate(state, genes, rate, scope):
    n = genes.shape[0]
    if scope == 1:
        for g in range(n):
            if _next_float(state) < rate:
                genes[g] = genes[g] ^ np.uint8(1)
    else:
        if _next_float(state) < rate:
            pos = _randbelow(state, n)
            genes[pos] = genes[pos] ^ np.uint8(1)


@njit(cache=True)
def _evaluate(pop, weights, values, capacity, fit, wts):
    pop_size, n = pop.shape
    for m in range(pop_size):
        tw = np.int64(0)
        tv = np.int64(0)
        for g in range(n):
            if pop[m, g] != 0:
                tw += weights[g]
                tv += values[g]
        wts[m] = tw
        fit[m] = tv if tw <= capacity else 0


@njit(cache=True)
def _record(gen, pop, fit, wts, capacity, out_best, out_mean, out_feasible, out_best_genes):
    pop_size, n = pop.shape
    best = 0
    total = np.int64(0)
    feasible = 0
    for m in range(pop_size):
        total += fit[m]
        if fit[m] > fit[best]:
            best = m
        if wts[m] <= capacity:
            feasible += 1
    out_best[gen] = fit[best]
    out_mean[gen] = total / pop_size
    out_feasible[gen] = feasible
    for g in range(n):
        out_best_genes[gen, g] = pop[best, g]


@njit(cache=True)
def _ga_kernel(
    weights,
    values,
    capacity,
    generations,
    pop_size,
    sel_kind,
    tournament_size,
    cx_kind,
    cx_rate,
    mut_rate,
    mut_scope,
    elitism,
    seed,
    out_best,
    out_mean,
    out_feasible,
    out_best_genes,
):
    n = weights.shape[0]
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed

    pop = np.empty((pop_size, n), dtype=np.uint8)
    nxt = np.empty((pop_size, n), dtype=np.uint8)
    child1 = np.empty(n, dtype=np.uint8)
    child2 = np.empty(n, dtype=np.uint8)
    fit = np.empty(pop_size, dtype=np.int64)
    wts = np.empty(pop_size, dtype=np.int64)
    rank_weights = np.zeros(pop_size, dtype=np.int64)
    ones = np.ones(pop_size, dtype=np.int64)
    scratch = np.empty(pop_size, dtype=np.int64)
    taken = np.empty(pop_size, dtype=np.uint8)

    for m in range(pop_size):
        for g in range(n):
            pop[m, g] = np.uint8(_randbelow(state, 2))
    _evaluate(pop, weights, values, capacity, fit, wts)
    _record(0, pop, fit, wts, capacity, out_best, out_mean, out_feasible, out_best_genes)

    for gen in range(1, generations):
        filled = 0
        if elitism > 0:
            for i in range(pop_size):
                taken[i] = 0
            for _ in range(elitism):
                pick = -1
                for i in range(pop_size):
                    if taken[i] == 0 and (pick < 0 or fit[i] > fit[pick]):
                        pick = i
                taken[pick] = 1
                for g in range(n):
                    nxt[filled, g] = pop[pick, g]
                filled += 1
        if sel_kind == 0:
            _rank_weights_into(fit, rank_weights)
        while filled < pop_size:
            i1 = _select(state, sel_kind, tournament_size, fit, rank_weights, ones, scratch)
            i2 = _select(state, sel_kind, tournament_size, fit, rank_weights, ones, scratch)
            if _next_float(state) < cx_rate:
                if cx_kind == 0:
                    k = 1 + _randbelow(state, n - 1)
                    for g in range(n):
                        if g < k:
                            child1[g] = pop[i1, g]
                            child2[g] = pop[i2, g]
                        else:
                            child1[g] = pop[i2, g]
                            child2[g] = pop[i1, g]
                else:
                    a = 1 + _randbelow(state, n - 2)
                    b = a + 1 + _randbelow(state, n - 1 - a)
                    for g in range(n):
                        if a <= g < b:
                            child1[g] = pop[i2, g]
                            child2[g] = pop[i1, g]
                        else:
                            child1[g] = pop[i1, g]
                            child2[g] = pop[i2, g]
            else:
                for g in range(n):
                    child1[g] = pop[i1, g]
                    child2[g] = pop[i2, g]
            _mutate(state, child1, mut_rate, mut_scope)
            _mutate(state, child2, mut_rate, mut_scope)
            for g in range(n):
                nxt[filled, g] = child1[g]
            filled += 1
            if filled < pop_size:
                for g in range(n):
                    nxt[filled, g] = child2[g]
                filled += 1
        pop, nxt = nxt, pop
        _evaluate(pop, weights, values, capacity, fit, wts)
        _record(gen, pop, fit, wts, capacity, out_best, out_mean, out_feasible, out_best_genes)


def run(instance: KnapsackInstance, config: GaConfig):
    """Run the kernel, returning (best, mean, feasible, best_genes) arrays."""
    generations = config.generations
    out_best = np.zeros(generations, dtype=np.int64)
    out_mean = np.zeros(generations, dtype=np.float64)
    out_feasible = np.zeros(generations, dtype=np.int64)
    out_best_genes = np.zeros((generations, instance.n), dtype=np.uint8)
    _ga_kernel(
        np.asarray(instance.weights, dtype=np.int64),
        np.asarray(instance.values, dtype=np.int64),
        instance.capacity,
        generations,
        config.population_size,
        _SELECTION_CODE[config.selection.kind],
        config.selection.tournament_size,
        _CROSSOVER_CODE[config.crossover.kind],
        config.crossover.rate,
        config.mutation.rate,
        _SCOPE_CODE[config.mutation.scope],
        config.elitism,
        np.uint64(config.seed),
        out_best,
        out_mean,
        out_feasible,
        out_best_genes,
    )
    return out_best, out_mean, out_feasible, out_best_genes
