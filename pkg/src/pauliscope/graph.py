"""Simple undirected graphs on packed bit rows."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


def bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Graph:
    """Immutable loop-free undirected graph.

    ``rows[i]`` is an int whose bit ``j`` is set iff ``i ~ j``.
    """

    __slots__ = ("_rows", "_labels", "_index")

    def __init__(self, rows: Sequence[int], labels: Sequence[str] | None = None):
        rows = tuple(rows)
        v = len(rows)
        full = (1 << v) - 1
        for i, r in enumerate(rows):
            if r & ~full:
                raise GraphError(f"row {i} references a vertex outside 0..{v - 1}")
            if (r >> i) & 1:
                raise GraphError(f"loop at vertex {i}")
        for i, r in enumerate(rows):
            for j in bits(r):
                if not (rows[j] >> i) & 1:
                    raise GraphError(f"adjacency not symmetric at ({i}, {j})")
        if labels is None:
            labels = tuple(str(i) for i in range(v))
        labels = tuple(str(x) for x in labels)
        if len(labels) != v:
            raise GraphError(f"{len(labels)} labels for {v} vertices")
        if len(set(labels)) != v:
            raise GraphError("duplicate vertex labels")
        self._rows = rows
        self._labels = labels
        self._index = None

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
        rows = [0] * v
        for i, j in edges:
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(rows, labels)

    @classmethod
    def from_matrix(cls, matrix, labels=None) -> Graph:
        rows = []
        for i, row in enumerate(matrix):
            rows.append(to_mask(j for j, x in enumerate(row) if x and j != i))
        return cls(rows, labels)

    @property
    def v(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def index(self, label: str) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self._labels)}
        try:
            return self._index[str(label)]
        except KeyError:
            raise GraphError(f"no vertex labelled {label!r}") from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(x) for x in labels]

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self._rows[i] >> j) & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(bits(self._rows[i]))

    def degree(self, i: int) -> int:
        return self._rows[i].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    @property
    def e(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.v) for j in bits(self._rows[i] >> (i + 1) << (i + 1))]

    def adjacency_matrix(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.v)] for r in self._rows]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._rows == other._rows and self._labels == other._labels

    def __hash__(self) -> int:
        return hash((self._rows, self._labels))

    def __repr__(self) -> str:
        return f"Graph(v={self.v}, e={self.e})"

    def same_adjacency(self, other: Graph) -> bool:
        return self._rows == other._rows

    # -- export -----------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"labels": list(self._labels), "edges": [list(e) for e in self.edges()]})

    @classmethod
    def from_json(cls, text: str) -> Graph:
        data = json.loads(text)
        return cls.from_edges(len(data["labels"]), (tuple(e) for e in data["edges"]), data["labels"])

    def to_dot(self, name: str = "G") -> str:
        out = [f"graph {name} {{"]
        for i, lab in enumerate(self._labels):
            out.append(f'  {i} [label="{lab}"];')
        for i, j in self.edges():
            out.append(f"  {i} -- {j};")
        out.append("}")
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class VertexSet:
    """Subset of a parent graph's vertex range, as a bit mask."""

    mask: int
    v: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.v:
            raise GraphError(f"vertex set exceeds parent range 0..{self.v - 1}")

    @classmethod
    def of(cls, g: Graph, members: Iterable) -> VertexSet:
        idx = []
        for m in members:
            if isinstance(m, int):
                if not 0 <= m < g.v:
                    raise GraphError(f"vertex {m} out of range")
                idx.append(m)
            else:
                idx.append(g.index(m))
        return cls(to_mask(idx), g.v)

    def __iter__(self):
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> i) & 1)

    def sorted(self) -> list[int]:
        return list(bits(self.mask))

    def complement(self) -> VertexSet:
        return VertexSet(((1 << self.v) - 1) & ~self.mask, self.v)

    def labels(self, g: Graph) -> list[str]:
        return [g.labels[i] for i in self]


def _as_indices(g: Graph, s) -> list[int]:
    if isinstance(s, VertexSet):
        if s.v != g.v:
            raise GraphError("vertex set belongs to a graph of a different size")
        return s.sorted()
    return VertexSet.of(g, s).sorted()


def induced_subgraph(g: Graph, s) -> Graph:
    """Subgraph on ``s`` (VertexSet, indices or labels), keeping labels and order."""
    idx = _as_indices(g, s)
    pos = {old: new for new, old in enumerate(idx)}
    rows = []
    for old in idx:
        rows.append(to_mask(pos[j] for j in bits(g.rows[old]) if j in pos))
    return Graph(rows, [g.labels[i] for i in idx])


def complement(g: Graph) -> Graph:
    full = (1 << g.v) - 1
    return Graph([full & ~r & ~(1 << i) for i, r in enumerate(g.rows)], g.labels)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph([full & ~(1 << i) for i in range(n)], [str(i + 1) for i in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph([0] * n)


def line_graph(g: Graph) -> Graph:
    edges = g.edges()
    labels = [f"{g.labels[i]}-{g.labels[j]}" for i, j in edges]
    adj = [(a, b) for a, b in combinations(range(len(edges)), 2) if set(edges[a]) & set(edges[b])]
    return Graph.from_edges(len(edges), adj, labels)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(m: int, n: int) -> Graph:
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def hypercube(dim: int) -> Graph:
    v = 1 << dim
    return Graph.from_edges(v, [(x, x ^ (1 << k)) for x in range(v) for k in range(dim) if x < x ^ (1 << k)])


def petersen_graph() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {1..5}, adjacent when disjoint."""
    pairs = list(combinations(range(1, 6), 2))
    edges = [(a, b) for a, b in combinations(range(10), 2) if not set(pairs[a]) & set(pairs[b])]
    return Graph.from_edges(10, edges, [f"{x}{y}" for x, y in pairs])


def rook_graph(m: int, n: int) -> Graph:
    """m x n grid graph: cells adjacent when they share a row or a column."""
    cells = [(r, c) for r in range(m) for c in range(n)]
    edges = [
        (a, b)
        for a, b in combinations(range(len(cells)), 2)
        if cells[a][0] == cells[b][0] or cells[a][1] == cells[b][1]
    ]
    return Graph.from_edges(len(cells), edges)


# ---------------------------------------------------------------------------
# Invariants


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.v
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in bits(g.rows[u]):
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.v == 0:
        return True
    return all(x is not None for x in bfs_distances(g, 0))


def diameter(g: Graph) -> int | None:
    """Longest geodesic, or ``None`` for a disconnected graph."""
    best = 0
    for s in range(g.v):
        dist = bfs_distances(g, s)
        if any(x is None for x in dist):
            return None
        best = max(best, max(dist))
    return best


def girth(g: Graph) -> int | None:
    """Shortest cycle length; ``None`` when the graph is a forest."""
    best = None
    for s in range(g.v):
        dist: list[int | None] = [None] * g.v
        parent = [-1] * g.v
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in bits(g.rows[u]):
                if dist[w] is None:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


@dataclass(frozen=True)
class Invariants:
    v: int
    e: int
    degrees: tuple[int, ...]
    regular: bool
    girth: int | None
    diameter: int | None
    connected: bool


def invariants(g: Graph) -> Invariants:
    degs = tuple(g.degrees())
    return Invariants(
        v=g.v,
        e=sum(degs) // 2,
        degrees=degs,
        regular=len(set(degs)) <= 1,
        girth=girth(g),
        diameter=diameter(g),
        connected=is_connected(g),
    )
