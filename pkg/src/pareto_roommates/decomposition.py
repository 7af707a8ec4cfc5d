"""Biconnected component (block) decomposition.

The kernel is the classical lowpoint depth-first search, run iteratively so
deep trees cannot exhaust the interpreter stack. It works on a dense boolean
adjacency matrix and finds each unvisited neighbour with one vectorised scan
of the current row, so a graph with ``V`` vertices costs O(V²) regardless of
its edge count. Every edge belongs to exactly one block, namely the block that
contains both of its endpoints, so blocks are reported as vertex sets and
their edges are recovered from the adjacency on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .graph import EdgeKind, ModifiedGraph

__all__ = [
    "Block",
    "Decomposition",
    "SelfLoopPresent",
    "block_vertex_sets",
    "blocks_and_components",
    "block_from_indices",
    "biconnected_components",
    "decompose",
    "is_trivial",
]

Edge = tuple[int, int, EdgeKind]


class SelfLoopPresent(ValueError):
    pass


class Block:
    """A maximal subgraph without a cut-vertex.

    ``edges`` may be supplied eagerly or produced by a loader on first access;
    the checker uses the latter so that large blocks are not expanded into
    Python tuples unless somebody asks.
    """

    __slots__ = ("vertices", "_edges", "_loader")

    def __init__(
        self,
        vertices: Sequence[int],
        edges: Sequence[Edge] | None = None,
        loader: Callable[[], Sequence[Edge]] | None = None,
    ) -> None:
        self.vertices = tuple(sorted(vertices))
        self._edges = tuple(edges) if edges is not None else None
        self._loader = loader

    @property
    def edges(self) -> tuple[Edge, ...]:
        if self._edges is None:
            self._edges = tuple(self._loader()) if self._loader else ()
        return self._edges

    @property
    def trivial(self) -> bool:
        return len(self.vertices) == 2

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __repr__(self) -> str:
        return f"Block({list(self.vertices)})"


def is_trivial(block: Block) -> bool:
    return block.trivial


@dataclass
class Decomposition:
    blocks: list[Block]
    cut_vertices: list[int]
    block_membership: dict[int, list[int]] = field(default_factory=dict)

    @classmethod
    def from_blocks(cls, blocks: list[Block]) -> Decomposition:
        membership: dict[int, list[int]] = {}
        for k, block in enumerate(blocks):
            for v in block.vertices:
                membership.setdefault(v, []).append(k)
        cuts = sorted(v for v, ks in membership.items() if len(ks) > 1)
        return cls(blocks, cuts, membership)

    def nontrivial(self) -> list[Block]:
        return [b for b in self.blocks if not b.trivial]


def block_vertex_sets(adj: np.ndarray) -> list[np.ndarray]:
    """Vertex index sets of the blocks of a simple undirected graph.

    ``adj`` must be a symmetric boolean matrix with an empty diagonal.
    Isolated vertices belong to no block. Blocks come out grouped by
    connected component, in order of each component's smallest vertex.
    """
    return blocks_and_components(adj)[0]


def blocks_and_components(adj: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
    """Like :func:`block_vertex_sets`, also returning component labels.

    The label of a vertex is the index of its component's DFS root, or -1
    for isolated vertices.
    """
    m = adj.shape[0]
    label = np.full(m, -1, dtype=np.int64)
    disc = np.full(m, -1, dtype=np.int64)
    low = np.zeros(m, dtype=np.int64)
    parent = np.full(m, -1, dtype=np.int64)
    unvisited = np.ones(m, dtype=bool)
    blocks: list[np.ndarray] = []
    clock = 0

    for root in np.flatnonzero(adj.any(axis=1)):
        if not unvisited[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        unvisited[root] = False
        label[root] = root
        path = [root]
        pending = [root]
        while path:
            u = path[-1]
            fresh = np.flatnonzero(adj[u] & unvisited)
            if fresh.size:
                w = fresh[0]
                parent[w] = u
                disc[w] = low[w] = clock
                clock += 1
                unvisited[w] = False
                label[w] = root
                path.append(w)
                pending.append(w)
                continue
            path.pop()
            p = parent[u]
            nbrs = np.flatnonzero(adj[u])
            back = disc[nbrs[nbrs != p]]
            if back.size:
                low[u] = min(low[u], back.min())
            if p < 0:
                continue
            low[p] = min(low[p], low[u])
            if low[u] >= disc[p]:
                # u's subtree hangs off p: everything pushed since u, plus p.
                members = [p]
                while True:
                    x = pending.pop()
                    members.append(x)
                    if x == u:
                        break
                blocks.append(np.array(members, dtype=np.int64))
    return blocks, label


def biconnected_components(
    vertices: Sequence[int],
    edges: Sequence[tuple[int, int] | Edge],
) -> Decomposition:
    """Decompose an undirected simple graph given as vertex and edge lists.

    Edges may carry an :class:`EdgeKind` as a third element; plain pairs are
    treated as normal edges. Blocks are ordered by the position of their
    first edge in ``edges``.
    """
    index = {v: k for k, v in enumerate(vertices)}
    m = len(index)
    adj = np.zeros((m, m), dtype=bool)
    typed: list[Edge] = []
    for e in edges:
        u, v = e[0], e[1]
        kind = e[2] if len(e) > 2 else EdgeKind.NORMAL
        if u == v:
            raise SelfLoopPresent(f"self-loop at {u}")
        for w in (u, v):
            if w not in index:
                raise KeyError(f"edge endpoint {w} is not a listed vertex")
        adj[index[u], index[v]] = adj[index[v], index[u]] = True
        typed.append((u, v, kind))

    sets = block_vertex_sets(adj)
    owner = {}
    for k, members in enumerate(sets):
        for i in members:
            owner.setdefault(int(i), set()).add(k)
    grouped: list[list[Edge]] = [[] for _ in sets]
    first_edge = [len(typed)] * len(sets)
    for pos, (u, v, kind) in enumerate(typed):
        (k,) = owner[index[u]] & owner[index[v]]
        grouped[k].append((u, v, kind))
        first_edge[k] = min(first_edge[k], pos)

    order = sorted(range(len(sets)), key=first_edge.__getitem__)
    blocks = [
        Block([vertices[int(i)] for i in sets[k]], grouped[k]) for k in order
    ]
    return Decomposition.from_blocks(blocks)


def decompose(graph: ModifiedGraph, adj: np.ndarray | None = None) -> Decomposition:
    """Blocks of a modified graph, optionally with some normal edges deleted.

    ``adj`` overrides the graph's own adjacency (both kinds of edges); it
    must not be modified while the returned blocks are in use.
    """
    if adj is None:
        adj = graph.adjacency()
    blocks = [
        block_from_indices(graph, adj, members)
        for members in sorted(block_vertex_sets(adj), key=lambda b: b.min())
    ]
    return Decomposition.from_blocks(blocks)


def block_from_indices(graph: ModifiedGraph, adj: np.ndarray, members: np.ndarray) -> Block:
    members = np.sort(members)

    def load() -> list[Edge]:
        sub = np.triu(adj[np.ix_(members, members)])
        out = []
        for a, b in zip(*np.nonzero(sub)):
            u, v = int(members[a]), int(members[b])
            kind = EdgeKind.SPECIAL if graph.special[u] == v else EdgeKind.NORMAL
            out.append((u + 1, v + 1, kind))
        return out

    return Block([int(v) + 1 for v in members], loader=load)
