"""Exhaustive ground truth for small instances.

Nothing here shares code with the checker's decision path: dominance is
decided by scanning every matching, and alternating structures are found by
plain depth-first search over simple paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .graph import EdgeKind, EfficiencyGraph, ModifiedGraph
from .model import Instance, Matching, pareto_dominates

__all__ = [
    "MAX_AGENTS",
    "TooLarge",
    "NotADominator",
    "AlternatingStructure",
    "involution_count",
    "enumerate_matchings",
    "oracle_efficient",
    "search_alternating_structures",
    "search_alternating_cycle",
    "structure_from_dominator",
    "improve_from_structure",
]

MAX_AGENTS = 12

S, N = EdgeKind.SPECIAL, EdgeKind.NORMAL


class TooLarge(ValueError):
    pass


class NotADominator(ValueError):
    pass


def _guard(n: int) -> None:
    if n > MAX_AGENTS:
        raise TooLarge(f"exhaustive search is limited to {MAX_AGENTS} agents, got {n}")


@dataclass(frozen=True)
class AlternatingStructure:
    """An alternating path or cycle of the efficiency graph.

    ``kinds[k]`` is the kind of the edge from ``vertices[k]`` to the next
    vertex (wrapping around for a cycle). A path carries a self-loop at
    each end, of the kind opposite to the path edge it touches.
    """

    kind: Literal["path", "cycle"]
    vertices: tuple[int, ...]
    kinds: tuple[EdgeKind, ...]

    @property
    def terminal_loops(self) -> tuple[EdgeKind, EdgeKind] | None:
        if self.kind == "cycle":
            return None
        return self.kinds[0].flip(), self.kinds[-1].flip()

    def edges(self) -> list[tuple[int, int, EdgeKind]]:
        vs = self.vertices
        if self.kind == "cycle":
            return [(vs[k], vs[(k + 1) % len(vs)], self.kinds[k]) for k in range(len(vs))]
        return [(vs[k], vs[k + 1], self.kinds[k]) for k in range(len(vs) - 1)]

    def is_valid(self, g: EfficiencyGraph) -> bool:
        vs, kinds = self.vertices, self.kinds
        if len(set(vs)) != len(vs) or not all(1 <= v <= g.n for v in vs):
            return False
        if self.kind == "cycle":
            if len(vs) < 4 or len(kinds) != len(vs) or len(vs) % 2:
                return False
        elif len(vs) < 2 or len(kinds) != len(vs) - 1:
            return False
        if any(a is b for a, b in zip(kinds, kinds[1:])):
            return False
        if self.kind == "cycle" and kinds[0] is kinds[-1]:
            return False
        for u, v, kind in self.edges():
            if not _has_edge(g, u, v, kind):
                return False
        if self.kind == "path":
            first, last = self.terminal_loops
            if not (_has_edge(g, vs[0], vs[0], first) and _has_edge(g, vs[-1], vs[-1], last)):
                return False
        return True


def _has_edge(g: EfficiencyGraph, u: int, v: int, kind: EdgeKind) -> bool:
    if kind is S:
        return g.special_partner(u) == v
    return g.has_normal(u, v)


def involution_count(n: int) -> int:
    """Telephone number T(n), the number of matchings on n agents."""
    a, b = 1, 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b


def enumerate_matchings(n: int) -> Iterator[Matching]:
    """Every matching on ``1..n``, each once.

    The smallest unresolved agent is settled first: alone, then with each
    free partner in ascending order.
    """
    if n < 1:
        raise ValueError("need at least one agent")
    _guard(n)
    partner = [0] * (n + 1)

    def extend(i: int) -> Iterator[Matching]:
        while i <= n and partner[i]:
            i += 1
        if i > n:
            yield Matching(tuple(partner[1:]))
            return
        partner[i] = i
        yield from extend(i + 1)
        for j in range(i + 1, n + 1):
            if not partner[j]:
                partner[i], partner[j] = j, i
                yield from extend(i + 1)
                partner[j] = 0
        partner[i] = 0

    yield from extend(1)


def oracle_efficient(instance: Instance) -> tuple[bool, Matching | None]:
    """Scan all matchings for one that Pareto dominates the given one."""
    _guard(instance.n)
    for candidate in enumerate_matchings(instance.n):
        if pareto_dominates(instance.profile, candidate, instance.matching):
            return False, candidate
    return True, None


def search_alternating_structures(g: EfficiencyGraph) -> AlternatingStructure | None:
    """Depth-first search for any alternating cycle or path of ``g``."""
    _guard(g.n)
    adj = _efficiency_adjacency(g)

    def loop_kind(v: int) -> EdgeKind | None:
        if g.has_special_loop(v):
            return S
        if g.normal_loop[v - 1]:
            return N
        return None

    for start in range(1, g.n + 1):
        found = _dfs_cycle(start, adj)
        if found:
            return AlternatingStructure("cycle", *found)
    for start in range(1, g.n + 1):
        anchor = loop_kind(start)
        if anchor is None:
            continue
        found = _dfs_path(start, anchor.flip(), adj, loop_kind)
        if found:
            return AlternatingStructure("path", *found)
    return None


def search_alternating_cycle(g2: ModifiedGraph) -> tuple[int, ...] | None:
    """Vertices of some alternating cycle of ``g2``, special edge first."""
    _guard(g2.n)
    adj = {}
    for v in g2.vertices():
        adj[v] = {
            S: [g2.special_partner(v)],
            N: [int(w) + 1 for w, on in enumerate(g2.normal[v - 1]) if on],
        }
    for start in adj:
        found = _dfs_cycle(start, adj)
        if found:
            return found[0]
    return None


def _efficiency_adjacency(g: EfficiencyGraph) -> dict[int, dict[EdgeKind, list[int]]]:
    adj = {}
    for v in range(1, g.n + 1):
        mate = g.special_partner(v)
        adj[v] = {
            S: [mate] if mate != v else [],
            N: [w for w in range(1, g.n + 1) if w != v and g.has_normal(v, w)],
        }
    return adj


def _dfs_cycle(start, adj):
    """Alternating cycle through ``start`` leaving it by its special edge."""
    path = [start]
    kinds = []
    on_path = {start}

    def go(v, kind):
        for w in adj[v][kind]:
            if w == start and kind is N and len(path) >= 4:
                kinds.append(kind)
                return True
            if w in on_path:
                continue
            path.append(w)
            kinds.append(kind)
            on_path.add(w)
            if go(w, kind.flip()):
                return True
            on_path.discard(path.pop())
            kinds.pop()
        return False

    if go(start, S):
        return tuple(path), tuple(kinds)
    return None


def _dfs_path(start, first, adj, loop_kind):
    path = [start]
    kinds = []
    on_path = {start}

    def go(v, kind):
        for w in adj[v][kind]:
            if w in on_path:
                continue
            path.append(w)
            kinds.append(kind)
            on_path.add(w)
            if loop_kind(w) is kind.flip():
                return True
            if go(w, kind.flip()):
                return True
            on_path.discard(path.pop())
            kinds.pop()
        return False

    if go(start, first):
        return tuple(path), tuple(kinds)
    return None


def structure_from_dominator(instance: Instance, dominator: Matching) -> AlternatingStructure:
    """Trace the symmetric difference of a matching and one dominating it."""
    mu, nu = instance.matching, dominator
    if not pareto_dominates(instance.profile, nu, mu):
        raise NotADominator("the given matching does not Pareto dominate the instance")
    n = instance.n
    differ = [i for i in range(1, n + 1) if mu(i) != nu(i)]

    def trace(i: int, first, second, first_kind: EdgeKind, closed: bool):
        seq = [i]
        steps = (first, second)
        step_kinds = (first_kind, first_kind.flip())
        kinds = []
        k = 0
        j = steps[0](i)
        kinds.append(step_kinds[0])
        while True:
            if closed and j == i:
                return AlternatingStructure("cycle", tuple(seq), tuple(kinds))
            seq.append(j)
            k += 1
            nxt = steps[k % 2](j)
            if not closed and nxt == j:
                return AlternatingStructure("path", tuple(seq), tuple(kinds))
            kinds.append(step_kinds[k % 2])
            j = nxt

    for i in differ:
        if mu(i) == i:
            return trace(i, nu, mu, N, closed=False)
    for i in differ:
        if nu(i) == i:
            return trace(i, mu, nu, S, closed=False)
    return trace(differ[0], mu, nu, S, closed=True)


def improve_from_structure(matching: Matching, structure: AlternatingStructure) -> Matching:
    """Match along the structure's normal edges; normal end loops mean solitude."""
    partner = list(matching.partner)
    for u, v, kind in structure.edges():
        if kind is N:
            partner[u - 1], partner[v - 1] = v, u
    if structure.kind == "path":
        for end, loop in zip((structure.vertices[0], structure.vertices[-1]), structure.terminal_loops):
            if loop is N:
                partner[end - 1] = end
    return Matching(tuple(partner))
