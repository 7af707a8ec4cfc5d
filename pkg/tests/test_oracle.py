import pytest
from hypothesis import given, settings

from pareto_roommates.graph import EdgeKind, ModifiedGraph, build_graph, build_modified_graph
from pareto_roommates.model import Matching, find_irrational_pairs, pareto_dominates
from pareto_roommates.oracle import (
    NotADominator,
    TooLarge,
    enumerate_matchings,
    improve_from_structure,
    involution_count,
    oracle_efficient,
    search_alternating_cycle,
    search_alternating_structures,
    structure_from_dominator,
)

from conftest import instances, make

S, N = EdgeKind.SPECIAL, EdgeKind.NORMAL


def test_small_enumerations():
    three = [m.partner for m in enumerate_matchings(3)]
    assert sorted(three) == sorted([(1, 2, 3), (2, 1, 3), (3, 2, 1), (1, 3, 2)])
    four = list(enumerate_matchings(4))
    assert len(four) == 10
    assert sum(len(m.pairs()) == 0 for m in four) == 1
    assert sum(len(m.pairs()) == 1 for m in four) == 6
    assert sum(len(m.pairs()) == 2 for m in four) == 3
    assert len(list(enumerate_matchings(8))) == 764


def test_enumeration_order():
    assert [m.partner for m in enumerate_matchings(3)] == [
        (1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 2, 1)
    ]


def test_telephone_numbers():
    # T(n) = T(n-1) + (n-1) T(n-2), T(1) = 1, T(2) = 2
    assert [involution_count(n) for n in range(1, 11)] == [
        1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496
    ]
    for n in range(1, 11):
        ms = [m.partner for m in enumerate_matchings(n)]
        assert len(ms) == len(set(ms)) == involution_count(n)


def test_guard():
    with pytest.raises(TooLarge):
        next(enumerate_matchings(13))


@pytest.mark.parametrize(
    "name, efficient, dominator",
    [("C", True, None), ("B", False, (3, 4, 1, 2)), ("E", True, None)],
)
def test_oracle_examples(name, efficient, dominator):
    result, found = oracle_efficient(make(name))
    assert result is efficient
    assert (found.partner if found else None) == dominator


def test_search_structures_examples():
    path = search_alternating_structures(build_graph(make("A")))
    assert path.kind == "path"
    assert path.vertices == (2, 1, 3, 4) and path.kinds == (S, N, S)
    assert path.terminal_loops == (N, N)
    cycle = search_alternating_structures(build_graph(make("B")))
    assert cycle.kind == "cycle" and cycle.vertices == (1, 2, 4, 3)
    assert cycle.kinds == (S, N, S, N)
    assert search_alternating_structures(build_graph(make("C"))) is None


def test_search_cycle_examples():
    assert set(search_alternating_cycle(build_modified_graph(build_graph(make("F"))))) == {1, 2, 4, 5}
    assert search_alternating_cycle(build_modified_graph(build_graph(make("E")))) is None
    assert search_alternating_cycle(ModifiedGraph.from_edges([(1, 2), (3, 4)], [])) is None


def test_structure_from_dominator_examples():
    b = make("B")
    s = structure_from_dominator(b, Matching((3, 4, 1, 2)))
    assert s.kind == "cycle" and set(s.vertices) == {1, 2, 3, 4}

    f = make("F")
    s = structure_from_dominator(f, Matching((2, 1, 3)))
    assert (s.kind, s.vertices, s.kinds, s.terminal_loops) == ("path", (1, 2), (N,), (S, S))

    a = make("A")
    s = structure_from_dominator(a, Matching((3, 2, 1, 4)))
    assert (s.kind, s.vertices, s.kinds) == ("path", (2, 1, 3, 4), (S, N, S))
    assert s.terminal_loops == (N, N)
    for x, dom in ((a, (3, 2, 1, 4)), (b, (3, 4, 1, 2)), (f, (2, 1, 3))):
        s = structure_from_dominator(x, Matching(dom))
        assert s.is_valid(build_graph(x))


def test_structure_from_non_dominator():
    with pytest.raises(NotADominator):
        structure_from_dominator(make("C"), Matching((1, 2, 3, 4)))


@settings(max_examples=250, deadline=None)
@given(instances(max_n=7))
def test_lemma_equivalence_on_graph(x):
    g = build_graph(x)
    found = search_alternating_structures(g)
    assert (found is None) == oracle_efficient(x)[0]
    if found is not None:
        assert found.is_valid(g)
        assert pareto_dominates(x.profile, improve_from_structure(x.matching, found), x.matching)


@settings(max_examples=250, deadline=None)
@given(instances(max_n=7))
def test_modified_graph_equivalence(x):
    if find_irrational_pairs(x):
        return
    g = build_graph(x)
    assert (search_alternating_structures(g) is None) == (
        search_alternating_cycle(build_modified_graph(g)) is None
    )


@settings(max_examples=100, deadline=None)
@given(instances(max_n=7))
def test_round_trip_through_every_dominator(x):
    g = build_graph(x)
    for candidate in enumerate_matchings(x.n):
        if not pareto_dominates(x.profile, candidate, x.matching):
            continue
        s = structure_from_dominator(x, candidate)
        assert s.is_valid(g)
        assert pareto_dominates(x.profile, improve_from_structure(x.matching, s), x.matching)
