"""Seeded random instances.

Randomness comes from ``numpy.random.default_rng`` (PCG64). For a fixed
numpy release the same ``(n, seed, solo_prob)`` yields the same instance.
Seeds are reduced modulo 2**64, so negative 64-bit seeds are accepted.

Draw order, which is part of the determinism contract:

1. for agents 1..n in turn, a uniform permutation of ``1..n`` as the ranking;
2. one uniform shuffle of the agents;
3. scanning the shuffled order, one uniform draw per still-unpaired agent
   that has an unpaired successor; below ``solo_prob`` it stays alone,
   otherwise it pairs with the next unpaired agent.
"""

from __future__ import annotations

import numpy as np

from .model import Instance, validate_matching, validate_profile

__all__ = ["random_instance", "repair_irrational_pairs", "serial_dictatorship", "bench_seed"]

SEED_MASK = (1 << 64) - 1


def random_instance(n: int, seed: int, solo_prob: float = 0.2) -> Instance:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if not 0.0 <= solo_prob <= 1.0:
        raise ValueError(f"solo probability must lie in [0, 1], got {solo_prob}")
    rng = np.random.default_rng(seed & SEED_MASK)
    rankings = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        rankings[i] = rng.permutation(n) + 1
    order = rng.permutation(n)

    partner = np.arange(n)
    k = 0
    while k < n - 1:
        i = order[k]
        if rng.random() < solo_prob:
            k += 1
            continue
        j = order[k + 1]
        partner[i], partner[j] = j, i
        k += 2
    return Instance(
        validate_profile(n, rankings.tolist()),
        validate_matching(n, (partner + 1).tolist()),
    )


def repair_irrational_pairs(instance: Instance) -> Instance:
    """Remove irrational pairs by editing one ranking per pair.

    In each matched pair where both members rank themselves above each
    other, the lower-numbered member swaps itself with its partner in its own
    ranking. Everything else is left untouched, so the instance keeps its
    dense random structure but now exercises the full graph pipeline.
    """
    rankings = [list(r) for r in instance.profile.rankings]
    rank = instance.profile.rank
    for i, j in instance.matching.pairs():
        if rank[i - 1, i - 1] < rank[i - 1, j - 1] and rank[j - 1, j - 1] < rank[j - 1, i - 1]:
            row = rankings[i - 1]
            a, b = rank[i - 1, i - 1], rank[i - 1, j - 1]
            row[a], row[b] = row[b], row[a]
    return Instance(validate_profile(instance.n, rankings), instance.matching)


def serial_dictatorship(instance: Instance, seed: int) -> Instance:
    """Replace the matching by a serial dictatorship outcome.

    Agents are visited in a seeded random order; each one still free takes
    its favourite free agent, possibly itself. The first dictator cannot be
    made better off, which fixes its pair in any dominating matching, and so
    on down the order, so the result is always Pareto efficient. Many such
    instances need several reduction passes before they settle.
    """
    rng = np.random.default_rng(seed & SEED_MASK)
    n = instance.n
    order = np.asarray(instance.profile.rankings, dtype=np.int64) - 1
    free = np.ones(n, dtype=bool)
    partner = np.arange(n)
    for i in rng.permutation(n):
        if not free[i]:
            continue
        row = order[i]
        j = row[free[row]][0]
        partner[i], partner[j] = j, i
        free[i] = free[j] = False
    return Instance(instance.profile, validate_matching(n, (partner + 1).tolist()))


def bench_seed(seed: int, n: int, rep: int) -> int:
    """Per-run seed for the benchmark: ``seed`` offset by a fixed mix of (n, rep)."""
    return (seed + n * 1_000_003 + rep * 7_919) & SEED_MASK
