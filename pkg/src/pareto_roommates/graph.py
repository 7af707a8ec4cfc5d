"""The efficiency graph of a matching and its modified, loop-free form.

Vertex ids are 1-based. In the modified graph an unmatched agent ``i`` gets a
virtual twin with id ``i + n``, so ids range over ``1..2n`` and some of the
upper half may be absent. Internally vertex id ``v`` sits at index ``v - 1``
of every array, which keeps the virtual-id arithmetic O(1).

Both graphs keep normal edges in a dense boolean matrix. Instances of the
roommates problem produce Θ(n²) normal edges on typical inputs, and the
matrix gives constant-time membership tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import Instance

__all__ = [
    "EdgeKind",
    "EfficiencyGraph",
    "ModifiedGraph",
    "UnknownVertex",
    "build_graph",
    "build_modified_graph",
    "neighbors",
    "to_dot",
]


class EdgeKind(enum.Enum):
    SPECIAL = "S"
    NORMAL = "N"

    def flip(self) -> EdgeKind:
        return EdgeKind.NORMAL if self is EdgeKind.SPECIAL else EdgeKind.SPECIAL


class UnknownVertex(KeyError):
    pass


def _freeze(*arrays: np.ndarray) -> None:
    for a in arrays:
        a.setflags(write=False)


@dataclass(frozen=True, eq=False)
class EfficiencyGraph:
    """Special edges follow the matching, normal edges mark mutual upgrades.

    ``special[i]`` is the partner index of agent index ``i`` (itself when
    unmatched, i.e. a special self-loop). ``normal`` is symmetric with an empty
    diagonal; an agent preferring solitude to its partner is flagged in
    ``normal_loop`` instead.
    """

    n: int
    special: np.ndarray
    normal: np.ndarray
    normal_loop: np.ndarray

    def special_partner(self, i: int) -> int:
        return int(self.special[i - 1]) + 1

    def has_normal(self, i: int, j: int) -> bool:
        if i == j:
            return bool(self.normal_loop[i - 1])
        return bool(self.normal[i - 1, j - 1])

    def has_special_loop(self, i: int) -> bool:
        return int(self.special[i - 1]) == i - 1

    def normal_edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.normal))
        return [(int(u) + 1, int(v) + 1) for u, v in zip(us, vs)]

    def special_edges(self) -> list[tuple[int, int]]:
        return [
            (i + 1, int(j) + 1) for i, j in enumerate(self.special) if i < j
        ]

    def normal_loops(self) -> list[int]:
        return [int(i) + 1 for i in np.flatnonzero(self.normal_loop)]

    def special_loops(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self.special) if i == j]


@dataclass(frozen=True, eq=False)
class ModifiedGraph:
    """Loop-free graph whose special edges form a perfect matching.

    ``present[v]`` tells whether index ``v`` (id ``v + 1``) is a vertex; the
    universe is ``2n`` slots wide. ``special[v]`` is ``-1`` for absent slots.
    ``added`` marks normal edges that were inserted during the construction
    and do not exist in the efficiency graph.
    """

    n: int
    present: np.ndarray
    special: np.ndarray
    normal: np.ndarray
    added: np.ndarray

    @classmethod
    def from_edges(
        cls,
        special_pairs: list[tuple[int, int]],
        normal_edges: list[tuple[int, int]],
        n: int | None = None,
    ) -> ModifiedGraph:
        """Build a graph directly from edge lists, e.g. for a drawn example.

        Ids above ``n`` count as virtual. By default ``n`` is the largest id,
        so nothing is virtual.
        """
        ids = [v for e in (*special_pairs, *normal_edges) for v in e]
        if n is None:
            n = max(ids)
        size = 2 * n
        present = np.zeros(size, dtype=bool)
        special = np.full(size, -1, dtype=np.int64)
        normal = np.zeros((size, size), dtype=bool)
        for u, v in special_pairs:
            if u == v:
                raise ValueError(f"special self-loop at {u}")
            if special[u - 1] >= 0 or special[v - 1] >= 0:
                raise ValueError(f"vertex of special edge {u}-{v} already paired")
            special[u - 1], special[v - 1] = v - 1, u - 1
            present[[u - 1, v - 1]] = True
        for u, v in normal_edges:
            if u == v:
                raise ValueError(f"normal self-loop at {u}")
            normal[u - 1, v - 1] = normal[v - 1, u - 1] = True
            present[[u - 1, v - 1]] = True
        if np.any(present & (special < 0)):
            raise ValueError("every vertex needs a special partner")
        added = np.zeros_like(normal)
        _freeze(present, special, normal, added)
        return cls(n, present, special, normal, added)

    def __contains__(self, v: int) -> bool:
        return 1 <= v <= 2 * self.n and bool(self.present[v - 1])

    def vertices(self) -> list[int]:
        return [int(v) + 1 for v in np.flatnonzero(self.present)]

    def is_virtual(self, v: int) -> bool:
        return v > self.n

    def special_partner(self, v: int) -> int:
        if v not in self:
            raise UnknownVertex(v)
        return int(self.special[v - 1]) + 1

    def special_edges(self) -> list[tuple[int, int]]:
        return [
            (int(v) + 1, int(self.special[v]) + 1)
            for v in np.flatnonzero(self.present)
            if v < self.special[v]
        ]

    def normal_edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.normal))
        return [(int(u) + 1, int(v) + 1) for u, v in zip(us, vs)]

    def adjacency(self) -> np.ndarray:
        """Fresh, writable matrix holding both edge kinds."""
        adj = self.normal.copy()
        idx = np.flatnonzero(self.present)
        adj[idx, self.special[idx]] = True
        return adj


def build_graph(instance: Instance) -> EfficiencyGraph:
    n = instance.n
    rank = instance.profile.rank
    mate = instance.matching.mate
    # upgrade[i, j]: agent i strictly prefers j to its current partner
    current = rank[np.arange(n), mate]
    upgrade = rank < current[:, None]
    normal = upgrade & upgrade.T
    np.fill_diagonal(normal, False)
    normal_loop = upgrade.diagonal().copy()
    special = mate.copy()
    _freeze(special, normal, normal_loop)
    return EfficiencyGraph(n, special, normal, normal_loop)


def build_modified_graph(g: EfficiencyGraph) -> ModifiedGraph:
    n = g.n
    size = 2 * n
    agents = np.arange(n)

    present = np.zeros(size, dtype=bool)
    present[:n] = True
    special = np.full(size, -1, dtype=np.int64)
    special[:n] = g.special
    lonely = np.flatnonzero(g.special == agents)
    present[lonely + n] = True
    special[lonely] = lonely + n
    special[lonely + n] = lonely

    normal = np.zeros((size, size), dtype=bool)
    normal[:n, :n] = g.normal

    # Vertices that may receive new normal edges: virtual twins, and agents
    # that would rather be alone than with their partner.
    qualifies = np.zeros(size, dtype=bool)
    qualifies[lonely + n] = True
    qualifies[:n] = g.normal_loop

    adjacent = normal.copy()
    adjacent[agents, g.special] = True
    adjacent[lonely + n, lonely] = True
    adjacent[lonely, lonely + n] = True
    added = qualifies[:, None] & qualifies[None, :] & ~adjacent
    np.fill_diagonal(added, False)
    normal |= added

    _freeze(present, special, normal, added)
    return ModifiedGraph(n, present, special, normal, added)


def neighbors(graph: ModifiedGraph, v: int, kind: EdgeKind) -> list[int]:
    if v not in graph:
        raise UnknownVertex(v)
    if kind is EdgeKind.SPECIAL:
        return [graph.special_partner(v)]
    return [int(w) + 1 for w in np.flatnonzero(graph.normal[v - 1])]


def to_dot(graph: EfficiencyGraph | ModifiedGraph, name: str = "G") -> str:
    """Debug rendering; special edges are drawn doubled, normal ones single."""
    lines = [f"graph {name} {{"]
    if isinstance(graph, ModifiedGraph):
        for v in graph.vertices():
            shape = "box" if graph.is_virtual(v) else "circle"
            lines.append(f"  {v} [shape={shape}];")
        for u, v in graph.special_edges():
            lines.append(f'  {u} -- {v} [color="black:black"];')
        for u, v in graph.normal_edges():
            style = "dashed" if graph.added[u - 1, v - 1] else "solid"
            lines.append(f"  {u} -- {v} [style={style}];")
    else:
        for v in range(1, graph.n + 1):
            lines.append(f"  {v};")
        for u, v in graph.special_edges():
            lines.append(f'  {u} -- {v} [color="black:black"];')
        for v in graph.special_loops():
            lines.append(f'  {v} -- {v} [color="black:black"];')
        for u, v in graph.normal_edges():
            lines.append(f"  {u} -- {v};")
        for v in graph.normal_loops():
            lines.append(f"  {v} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
