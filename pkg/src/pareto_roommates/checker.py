"""Pareto efficiency test by iterated block decomposition.

Pipeline for one instance:

1. A matched pair whose members both prefer solitude is dominated outright
   by dissolving it.
2. Otherwise the modified graph is built and blocks are repeatedly
   decomposed; a vertex whose special edge lies outside a block loses all of
   its edges in that block. No alternating cycle can use those edges, since a
   cycle sits inside one block and uses the special edge of each of its
   vertices.
3. At the fixed point every block holds the special edge of each of its
   vertices. The matching is efficient exactly when all blocks are special
   pairs. Otherwise an alternating cycle is extracted from a non-trivial
   block and turned into a dominating matching.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .decomposition import Block, Decomposition, block_from_indices, blocks_and_components
from .graph import EdgeKind, EfficiencyGraph, ModifiedGraph, build_graph, build_modified_graph
from .model import (
    Instance,
    Matching,
    Verdict,
    find_irrational_pairs,
    pareto_dominates,
    validate_matching,
)

__all__ = [
    "AlternatingCycle",
    "InvalidCycle",
    "NoCycleFound",
    "ReducedGraph",
    "check",
    "extract_alternating_cycle",
    "improve_from_cycle",
    "improve_from_irrational",
    "reduce_to_fixed_point",
]


class InvalidCycle(RuntimeError):
    pass


class NoCycleFound(RuntimeError):
    pass


@dataclass(frozen=True)
class AlternatingCycle:
    """Cycle ``v1 -S- v2 -N- v3 -S- ... -N- v1`` given by its vertex ids."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int, EdgeKind]]:
        vs = self.vertices
        return [
            (vs[k], vs[(k + 1) % len(vs)], EdgeKind.SPECIAL if k % 2 == 0 else EdgeKind.NORMAL)
            for k in range(len(vs))
        ]

    def normal_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, kind in self.edges() if kind is EdgeKind.NORMAL]

    def validate(self, graph: ModifiedGraph, adj: np.ndarray | None = None) -> None:
        """Raise :class:`InvalidCycle` unless this is an alternating cycle.

        Normal edges are looked up in ``adj`` when given (a reduced
        adjacency), else in the graph itself.
        """
        vs = self.vertices
        if len(vs) < 4 or len(vs) % 2:
            raise InvalidCycle(f"cycle length {len(vs)} is not an even number >= 4")
        if len(set(vs)) != len(vs):
            raise InvalidCycle("cycle repeats a vertex")
        for v in vs:
            if v not in graph:
                raise InvalidCycle(f"vertex {v} is not in the graph")
        normal = graph.normal if adj is None else adj
        for u, v, kind in self.edges():
            if kind is EdgeKind.SPECIAL:
                ok = graph.special[u - 1] == v - 1
            else:
                ok = bool(normal[u - 1, v - 1]) and graph.special[u - 1] != v - 1
            if not ok:
                raise InvalidCycle(f"missing {kind.name.lower()} edge {u}-{v}")


@dataclass
class ReducedGraph:
    """A modified graph after normal-edge deletions.

    ``adj`` holds the surviving edges of both kinds. ``deletions`` logs
    ``(vertex id, pass)`` for every eviction, and ``normal_counts[k]`` is the
    number of normal edges after ``k`` passes.
    """

    graph: ModifiedGraph
    adj: np.ndarray
    iterations: int = 0
    deletions: list[tuple[int, int]] = field(default_factory=list)
    normal_counts: list[int] = field(default_factory=list)

    def normal_edge_count(self) -> int:
        return _normal_count(self.graph, self.adj)


def _normal_count(graph: ModifiedGraph, adj: np.ndarray) -> int:
    specials = int(graph.present.sum())  # each special edge, counted from both ends
    return (int(np.count_nonzero(adj)) - specials) // 2


def reduce_to_fixed_point(
    g2: ModifiedGraph, adj: np.ndarray | None = None
) -> tuple[ReducedGraph, Decomposition]:
    """Decompose and evict until a pass removes nothing.

    ``adj`` lets a reduction resume from an already reduced adjacency; it is
    copied, not modified. Only components that lost edges in a pass are
    decomposed again in the next one.
    """
    adj = g2.adjacency() if adj is None else adj.copy()
    special = g2.special
    reduced = ReducedGraph(g2, adj, normal_counts=[_normal_count(g2, adj)])
    settled: list[np.ndarray] = []
    dirty = [np.flatnonzero(g2.present)]

    while dirty:
        reduced.iterations += 1
        pass_no = reduced.iterations
        next_dirty = []
        for comp in dirty:
            local_blocks, label = blocks_and_components(adj[np.ix_(comp, comp)])
            by_component: dict[int, list[np.ndarray]] = {}
            for local in local_blocks:
                by_component.setdefault(int(label[local[0]]), []).append(comp[local])
            for root, blocks in by_component.items():
                changed = False
                for members in blocks:
                    inside = np.zeros(adj.shape[0], dtype=bool)
                    inside[members] = True
                    evicted = members[~inside[special[members]]]
                    if evicted.size:
                        changed = True
                        adj[np.ix_(evicted, members)] = False
                        adj[np.ix_(members, evicted)] = False
                        reduced.deletions.extend((int(v) + 1, pass_no) for v in evicted)
                if changed:
                    next_dirty.append(comp[label == root])
                else:
                    settled.extend(blocks)
        reduced.normal_counts.append(_normal_count(g2, adj))
        dirty = next_dirty

    blocks = [block_from_indices(g2, adj, b) for b in sorted(settled, key=lambda b: b.min())]
    return reduced, Decomposition.from_blocks(blocks)


def extract_alternating_cycle(reduced: ReducedGraph, block: Block) -> AlternatingCycle:
    """Find an alternating cycle inside a non-trivial fixed-point block.

    The special edges of the block form a perfect matching of its vertices.
    For a special edge ``a-b``, an alternating cycle through it is the edge
    plus an augmenting path between ``b`` and ``a`` once that edge is taken
    out of the matching and the graph. Special edges are tried in order of
    their smaller endpoint, and each search is a single Edmonds blossom
    search.
    """
    if block.trivial:
        raise ValueError("a trivial block contains no cycle")
    g2 = reduced.graph
    members = np.array(block.vertices, dtype=np.int64) - 1
    local = {int(v): k for k, v in enumerate(members)}
    try:
        mate = [local[int(g2.special[v])] for v in members]
    except KeyError:
        raise ValueError("block is not at a fixed point") from None
    sub = reduced.adj[np.ix_(members, members)].copy()

    for a in range(len(members)):
        b = mate[a]
        if b < a:
            continue
        sub[a, b] = sub[b, a] = False
        trial = list(mate)
        trial[a] = trial[b] = -1
        path = _augmenting_path(sub, trial, root=b)
        sub[a, b] = sub[b, a] = True
        if path is None:
            continue
        # path runs a .. b; the cycle is a -S- b -N- ... -N- a
        ids = [int(members[k]) + 1 for k in path]
        cycle = AlternatingCycle((ids[0], *reversed(ids[1:])))
        cycle.validate(g2, reduced.adj)
        return cycle
    raise NoCycleFound(f"no alternating cycle in block of {len(block)} vertices")


def _augmenting_path(adj: np.ndarray, match: list[int], root: int) -> list[int] | None:
    """Edmonds search for an augmenting path from the exposed vertex ``root``.

    Returns the path from the other exposed endpoint back to ``root``.
    ``match`` uses -1 for exposed vertices.
    """
    m = len(match)
    parent = [-1] * m
    base = list(range(m))
    used = [False] * m
    rows: dict[int, list[int]] = {}
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * m
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        if v not in rows:
            rows[v] = np.flatnonzero(adj[v]).tolist()
        for to in rows[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                top = lca(v, to)
                blossom = [False] * m
                mark(v, top, to, blossom)
                mark(to, top, v, blossom)
                for i in range(m):
                    if blossom[base[i]]:
                        base[i] = top
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    path = []
                    w = to
                    while w != -1:
                        pw = parent[w]
                        path.append(w)
                        if pw == -1:
                            break
                        path.append(pw)
                        w = match[pw]
                    return path
                used[match[to]] = True
                queue.append(match[to])
    return None


def improve_from_cycle(
    matching: Matching, cycle: AlternatingCycle, g: EfficiencyGraph
) -> Matching:
    """Swap the matching along a cycle of the modified graph.

    Each real agent on the cycle follows its normal cycle edge: to the agent
    at the other end when that edge exists in ``g``, and into solitude when
    the edge was added or leads to a virtual vertex.
    """
    n = g.n
    _check_cycle_against(cycle, g)
    partner = list(matching.partner)
    for u, v in cycle.normal_edges():
        if u <= n and v <= n and g.normal[u - 1, v - 1]:
            partner[u - 1], partner[v - 1] = v, u
            continue
        for w in (u, v):
            if w <= n:
                partner[w - 1] = w
    return validate_matching(n, partner)


def _check_cycle_against(cycle: AlternatingCycle, g: EfficiencyGraph) -> None:
    n = g.n

    def lonely(v: int) -> bool:
        return v > n and 1 <= v - n <= n and g.special[v - n - 1] == v - n - 1

    vs = cycle.vertices
    if len(vs) < 4 or len(vs) % 2 or len(set(vs)) != len(vs):
        raise InvalidCycle(f"not a simple even cycle: {vs}")
    for u, v, kind in cycle.edges():
        for w in (u, v):
            if not (1 <= w <= n or lonely(w)):
                raise InvalidCycle(f"vertex {w} is not in the modified graph")
        if kind is EdgeKind.SPECIAL:
            if u <= n and v <= n:
                ok = g.special[u - 1] == v - 1 and u != v
            else:
                ok = abs(u - v) == n
        elif u <= n and v <= n:
            ok = bool(g.normal[u - 1, v - 1]) or (
                bool(g.normal_loop[u - 1])
                and bool(g.normal_loop[v - 1])
                and g.special[u - 1] != v - 1
            )
        elif u <= n or v <= n:
            ok = bool(g.normal_loop[min(u, v) - 1])
        else:
            ok = True
        if not ok:
            raise InvalidCycle(f"{kind.name.lower()} edge {u}-{v} is not in the modified graph")


def improve_from_irrational(matching: Matching, pairs: list[tuple[int, int]]) -> Matching:
    """Dissolve every listed pair."""
    if not pairs:
        raise ValueError("no pairs to dissolve")
    partner = list(matching.partner)
    for i, j in pairs:
        if partner[i - 1] != j:
            raise ValueError(f"{i} and {j} are not matched to each other")
        partner[i - 1], partner[j - 1] = i, j
    return Matching(tuple(partner))


def check(instance: Instance) -> Verdict:
    """Decide whether ``instance.matching`` is Pareto efficient."""
    matching = instance.matching
    pairs = find_irrational_pairs(instance)
    if pairs:
        witness = improve_from_irrational(matching, pairs)
        assert pareto_dominates(instance.profile, witness, matching)
        return Verdict(False, witness, "irrational-pair", pairs=tuple(pairs))

    g = build_graph(instance)
    g2 = build_modified_graph(g)
    reduced, decomposition = reduce_to_fixed_point(g2)
    candidates = decomposition.nontrivial()
    if not candidates:
        return Verdict(True, iterations=reduced.iterations)

    cycle = extract_alternating_cycle(reduced, candidates[0])
    witness = improve_from_cycle(matching, cycle, g)
    assert pareto_dominates(instance.profile, witness, matching)
    return Verdict(
        False,
        witness,
        "alternating-cycle",
        cycle=cycle.vertices,
        iterations=reduced.iterations,
    )
