import pytest
from hypothesis import strategies as st

from pareto_roommates.graph import EdgeKind, ModifiedGraph
from pareto_roommates.model import Instance, Matching, validate_matching, validate_profile

# Small named instances used throughout the suite.
INSTANCES = {
    # alternating path 2 -S- 1 -N- 3 -S- 4 with normal loops at 2 and 4
    "A": ([[3, 2, 1, 4], [2, 1, 3, 4], [1, 4, 3, 2], [4, 3, 1, 2]], [2, 1, 4, 3]),
    # alternating 4-cycle 1 -S- 2 -N- 4 -S- 3 -N- 1, nobody prefers solitude
    "B": ([[3, 2, 4, 1], [4, 1, 3, 2], [1, 4, 2, 3], [2, 3, 1, 4]], [2, 1, 4, 3]),
    # everyone holds their top choice
    "C": ([[2, 1, 3, 4], [1, 2, 3, 4], [4, 3, 1, 2], [3, 4, 1, 2]], [2, 1, 4, 3]),
    # 1 and 2 both prefer to be alone
    "D": ([[1, 2, 3, 4], [2, 1, 3, 4], [4, 3, 1, 2], [3, 4, 1, 2]], [2, 1, 4, 3]),
    # 1 is stuck with an unacceptable partner, yet nothing dominates
    "E": ([[1, 2, 3], [1, 2, 3], [3, 1, 2]], [2, 1, 3]),
    # nobody matched, 1 and 2 mutually acceptable
    "F": ([[2, 1, 3], [1, 2, 3], [3, 1, 2]], [1, 2, 3]),
    # realises the drawn block example: pairs 1-3, 4-7, 2-8, 5-6 with
    # normal edges 1-8, 1-4, 4-2 and nothing else
    "FIG2": (
        [
            [8, 4, 3, 1, 2, 5, 6, 7],
            [4, 8, 2, 1, 3, 5, 6, 7],
            [1, 3, 2, 4, 5, 6, 7, 8],
            [1, 2, 7, 4, 3, 5, 6, 8],
            [6, 5, 1, 2, 3, 4, 7, 8],
            [5, 6, 1, 2, 3, 4, 7, 8],
            [4, 7, 1, 2, 3, 5, 6, 8],
            [1, 2, 8, 3, 4, 5, 6, 7],
        ],
        [3, 8, 1, 7, 6, 5, 4, 2],
    ),
}

FIG2_SPECIAL = [(3, 1), (7, 4), (8, 2)]
FIG2_NORMAL = [(1, 8), (1, 4), (4, 2)]


def make(name: str) -> Instance:
    rankings, partners = INSTANCES[name]
    return Instance.from_lists(rankings, partners)


@pytest.fixture(params=sorted(INSTANCES))
def named_instance(request):
    return request.param, make(request.param)


@pytest.fixture
def fig2_graph() -> ModifiedGraph:
    return ModifiedGraph.from_edges(FIG2_SPECIAL, FIG2_NORMAL)


def fig2_edges():
    return [(u, v, EdgeKind.SPECIAL) for u, v in FIG2_SPECIAL] + [
        (u, v, EdgeKind.NORMAL) for u, v in FIG2_NORMAL
    ]


@st.composite
def matchings(draw, n: int) -> Matching:
    order = draw(st.permutations(range(1, n + 1)))
    solo = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    partner = list(range(1, n + 1))
    k = 0
    while k < n - 1:
        if solo[k]:
            k += 1
            continue
        i, j = order[k], order[k + 1]
        partner[i - 1], partner[j - 1] = j, i
        k += 2
    return validate_matching(n, partner)


@st.composite
def instances(draw, min_n: int = 3, max_n: int = 7) -> Instance:
    n = draw(st.integers(min_n, max_n))
    rows = [draw(st.permutations(range(1, n + 1))) for _ in range(n)]
    return Instance(validate_profile(n, rows), draw(matchings(n)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
