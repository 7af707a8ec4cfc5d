import pytest
from hypothesis import given, settings, strategies as st

from pareto_roommates.model import (
    BadSize,
    Matching,
    NotInvolution,
    NotPermutation,
    OutOfRange,
    TooSmall,
    Verdict,
    find_irrational_pairs,
    pareto_dominates,
    prefers,
    validate_matching,
    validate_profile,
)

from conftest import instances, make, matchings


def test_validate_profile_accepts_permutations():
    p = validate_profile(3, [[2, 1, 3], [1, 2, 3], [3, 1, 2]])
    assert p.n == 3
    assert p.ranking(1) == (2, 1, 3)
    assert p.rank[0].tolist() == [1, 0, 2]


@pytest.mark.parametrize(
    "n, rows, error",
    [
        (3, [[2, 2, 3], [1, 2, 3], [3, 1, 2]], NotPermutation),
        (3, [[1, 2, 4], [1, 2, 3], [3, 1, 2]], NotPermutation),
        (2, [[1, 2], [2, 1]], TooSmall),
        (3, [[1, 2, 3], [1, 2, 3]], BadSize),
        (3, [[1, 2], [1, 2, 3], [3, 1, 2]], BadSize),
    ],
)
def test_validate_profile_rejects(n, rows, error):
    with pytest.raises(error):
        validate_profile(n, rows)


def test_validate_matching():
    assert validate_matching(4, [2, 1, 4, 3]).pairs() == [(1, 2), (3, 4)]
    assert validate_matching(3, [1, 2, 3]).unmatched() == [1, 2, 3]
    with pytest.raises(NotInvolution):
        validate_matching(3, [2, 3, 1])
    with pytest.raises(OutOfRange):
        validate_matching(3, [1, 2, 4])
    with pytest.raises(BadSize):
        validate_matching(3, [1, 2])


def test_prefers():
    p = validate_profile(4, [[3, 2, 1, 4], [1, 2, 3, 4], [1, 2, 3, 4], [1, 2, 3, 4]])
    assert prefers(p, 1, 3, 2)
    assert not prefers(p, 1, 4, 1)
    assert not any(prefers(p, i, a, a) for i in range(1, 5) for a in range(1, 5))
    with pytest.raises(OutOfRange):
        prefers(p, 1, 5, 2)


def test_pareto_dominates_examples():
    b = make("B")
    swapped = Matching.from_pairs(4, [(1, 3), (2, 4)])
    assert pareto_dominates(b.profile, swapped, b.matching)
    assert not pareto_dominates(b.profile, b.matching, b.matching)
    # 1 is worse off, every other agent is better off
    p = validate_profile(4, [[2, 3, 1, 4], [3, 4, 2, 1], [2, 4, 3, 1], [2, 4, 3, 1]])
    base = Matching.from_pairs(4, [(1, 2), (3, 4)])
    cand = Matching.from_pairs(4, [(2, 3)])
    assert not pareto_dominates(p, cand, base)


def test_find_irrational_pairs_examples():
    assert find_irrational_pairs(make("D")) == [(1, 2)]
    assert find_irrational_pairs(make("E")) == []
    assert find_irrational_pairs(make("C")) == []


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict(True, witness=Matching((1, 2, 3)))
    with pytest.raises(ValueError):
        Verdict(False)
    assert Verdict(True, iterations=3).to_dict() == {
        "efficient": True, "cause": None, "witness": None, "iterations": 3
    }


@given(st.integers(3, 8).flatmap(matchings))
def test_involution_round_trip(m):
    assert all(m(m(i)) == i for i in range(1, m.n + 1))


@given(instances(max_n=6).flatmap(lambda x: st.tuples(st.just(x), matchings(x.n))))
def test_dominance_irreflexive_and_antisymmetric(pair):
    x, other = pair
    p, mu = x.profile, x.matching
    assert not pareto_dominates(p, mu, mu)
    assert not (pareto_dominates(p, mu, other) and pareto_dominates(p, other, mu))


@settings(max_examples=200)
@given(
    st.integers(3, 8).flatmap(
        lambda n: st.tuples(
            st.lists(st.permutations(range(1, n + 1)), min_size=n, max_size=n),
            matchings(n), matchings(n), matchings(n),
        )
    )
)
def test_dominance_transitive(data):
    rows, a, b, c = data
    p = validate_profile(len(rows), rows)
    if pareto_dominates(p, a, b) and pareto_dominates(p, b, c):
        assert pareto_dominates(p, a, c)


@given(instances(max_n=8))
def test_dissolving_irrational_pair_dominates(x):
    for i, j in find_irrational_pairs(x):
        partner = list(x.matching.partner)
        partner[i - 1], partner[j - 1] = i, j
        assert pareto_dominates(x.profile, Matching(tuple(partner)), x.matching)
