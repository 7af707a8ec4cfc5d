"""Instances of the roommates problem: preferences, matchings, dominance.

Agents are numbered ``1..n`` on every public surface. Arrays that back the
fast paths are 0-indexed, so agent ``i`` lives at index ``i - 1``.

Each agent ranks *all* agents, itself included. Everyone ranked below the
agent itself is unacceptable to it, which is how unmatched agents and
unacceptable partners are expressed without truncated lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ValidationError",
    "TooSmall",
    "BadSize",
    "NotPermutation",
    "NotInvolution",
    "OutOfRange",
    "PreferenceProfile",
    "Matching",
    "Instance",
    "Verdict",
    "validate_profile",
    "validate_matching",
    "prefers",
    "pareto_dominates",
    "find_irrational_pairs",
]

MIN_AGENTS = 3


class ValidationError(ValueError):
    """Raised when raw input does not describe a valid instance."""


class TooSmall(ValidationError):
    pass


class BadSize(ValidationError):
    pass


class NotPermutation(ValidationError):
    pass


class NotInvolution(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


@dataclass(frozen=True)
class PreferenceProfile:
    """Strict rankings of all ``n`` agents by every agent, best first.

    ``rank[i - 1, a - 1]`` is the 0-based position of agent ``a`` in agent
    ``i``'s ranking. It is precomputed so that comparisons are O(1).
    """

    n: int
    rankings: tuple[tuple[int, ...], ...]
    rank: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        order = np.asarray(self.rankings, dtype=np.int64) - 1
        rank = np.empty((self.n, self.n), dtype=np.int64)
        np.put_along_axis(rank, order, np.arange(self.n)[None, :], axis=1)
        rank.setflags(write=False)
        object.__setattr__(self, "rank", rank)

    def ranking(self, i: int) -> tuple[int, ...]:
        return self.rankings[i - 1]


@dataclass(frozen=True)
class Matching:
    """An involution on agents; ``partner[i - 1] == i`` means ``i`` is alone."""

    partner: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.partner)

    def __call__(self, i: int) -> int:
        return self.partner[i - 1]

    def __len__(self) -> int:
        return len(self.partner)

    @property
    def mate(self) -> np.ndarray:
        """0-indexed partner array."""
        return np.asarray(self.partner, dtype=np.int64) - 1

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner, start=1) if i < j]

    def unmatched(self) -> list[int]:
        return [i for i, j in enumerate(self.partner, start=1) if i == j]

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Matching:
        partner = list(range(1, n + 1))
        for i, j in pairs:
            partner[i - 1] = j
            partner[j - 1] = i
        return validate_matching(n, partner)

    @classmethod
    def identity(cls, n: int) -> Matching:
        return cls(tuple(range(1, n + 1)))

    def __str__(self) -> str:
        return " ".join(map(str, self.partner))


@dataclass(frozen=True)
class Instance:
    profile: PreferenceProfile
    matching: Matching

    def __post_init__(self) -> None:
        if self.profile.n != self.matching.n:
            raise BadSize(
                f"profile has {self.profile.n} agents but matching has "
                f"{self.matching.n}"
            )

    @property
    def n(self) -> int:
        return self.profile.n

    @classmethod
    def from_lists(
        cls, rankings: Sequence[Sequence[int]], partners: Sequence[int]
    ) -> Instance:
        n = len(rankings)
        return cls(validate_profile(n, rankings), validate_matching(n, partners))


@dataclass(frozen=True)
class Verdict:
    """Outcome of an efficiency check.

    ``cause`` is ``"irrational-pair"`` or ``"alternating-cycle"`` when the
    matching is inefficient; ``pairs`` or ``cycle`` then holds the evidence
    the witness was built from. ``iterations`` counts reduction passes and is
    0 when the check stopped at the irrational-pair screen.
    """

    efficient: bool
    witness: Matching | None = None
    cause: str | None = None
    pairs: tuple[tuple[int, int], ...] = ()
    cycle: tuple[int, ...] = ()
    iterations: int = 0

    def __post_init__(self) -> None:
        if self.efficient and self.witness is not None:
            raise ValueError("an efficient verdict carries no witness")
        if not self.efficient and self.witness is None:
            raise ValueError("an inefficient verdict needs a witness")

    def to_dict(self) -> dict:
        return {
            "efficient": self.efficient,
            "cause": self.cause,
            "witness": list(self.witness.partner) if self.witness else None,
            "iterations": self.iterations,
        }


def validate_profile(n: int, raw_rankings: Sequence[Sequence[int]]) -> PreferenceProfile:
    if n < MIN_AGENTS:
        raise TooSmall(f"need at least {MIN_AGENTS} agents, got {n}")
    if len(raw_rankings) != n:
        raise BadSize(f"expected {n} rankings, got {len(raw_rankings)}")
    expected = list(range(1, n + 1))
    rows = []
    for i, row in enumerate(raw_rankings, start=1):
        row = tuple(int(a) for a in row)
        if len(row) != n:
            raise BadSize(f"ranking of agent {i} has {len(row)} entries, expected {n}")
        if sorted(row) != expected:
            raise NotPermutation(f"ranking of agent {i} is not a permutation of 1..{n}")
        rows.append(row)
    return PreferenceProfile(n, tuple(rows))


def validate_matching(n: int, partners: Sequence[int]) -> Matching:
    if len(partners) != n:
        raise BadSize(f"matching has {len(partners)} entries, expected {n}")
    partner = tuple(int(j) for j in partners)
    for i, j in enumerate(partner, start=1):
        if not 1 <= j <= n:
            raise OutOfRange(f"partner of agent {i} is {j}, outside 1..{n}")
    for i, j in enumerate(partner, start=1):
        if partner[j - 1] != i:
            raise NotInvolution(
                f"agent {i} is matched to {j} but {j} is matched to {partner[j - 1]}"
            )
    return Matching(partner)


def prefers(profile: PreferenceProfile, i: int, a: int, b: int) -> bool:
    """True iff agent ``i`` strictly prefers ``a`` to ``b``."""
    for agent in (i, a, b):
        if not 1 <= agent <= profile.n:
            raise OutOfRange(f"agent {agent} outside 1..{profile.n}")
    row = profile.rank[i - 1]
    return bool(row[a - 1] < row[b - 1])


def pareto_dominates(
    profile: PreferenceProfile, candidate: Matching, baseline: Matching
) -> bool:
    """True iff ``candidate`` differs from ``baseline`` and nobody is worse off."""
    if candidate.partner == baseline.partner:
        return False
    rows = np.arange(profile.n)
    new = profile.rank[rows, candidate.mate]
    old = profile.rank[rows, baseline.mate]
    return bool(np.all(new <= old))


def find_irrational_pairs(instance: Instance) -> list[tuple[int, int]]:
    """Matched pairs in which both members would rather be alone."""
    rank = instance.profile.rank
    mate = instance.matching.mate
    rows = np.arange(instance.n)
    wants_out = rank[rows, rows] < rank[rows, mate]
    both = wants_out & wants_out[mate] & (mate > rows)
    return [(int(i) + 1, int(mate[i]) + 1) for i in np.flatnonzero(both)]
