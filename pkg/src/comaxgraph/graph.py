"""Simple undirected graphs with Python-int bitset adjacency rows."""

from __future__ import annotations

import json
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


class Graph:
    """Vertices are sortable hashable labels kept in sorted order; ``names``
    are display strings used by the exporters.  ``adj[i]`` has bit j set
    iff i and j are adjacent."""

    def __init__(
        self,
        vertices: Sequence[Hashable],
        adj: Sequence[int],
        names: Sequence[str] | None = None,
        check: bool = True,
    ):
        self.vertices = tuple(vertices)
        self.adj = list(adj)
        self.names = tuple(names) if names is not None else tuple(str(v) for v in self.vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        if check:
            self._validate()

    def _validate(self) -> None:
        for i, row in enumerate(self.adj):
            if (row >> i) & 1:
                raise ValueError(f"self-loop at {self.vertices[i]!r}")
            for j in iter_bits(row):
                if not (self.adj[j] >> i) & 1:
                    raise ValueError("adjacency is not symmetric")

    # -- construction --------------------------------------------------------

    @classmethod
    def from_edges(cls, vertices: Iterable[Hashable], edges: Iterable[tuple], names: dict | None = None) -> "Graph":
        """Build from labels and label pairs; vertices end up sorted by label."""
        verts = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(verts)}
        adj = [0] * len(verts)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            i, j = idx[u], idx[v]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        nm = [names[v] for v in verts] if names is not None else None
        return cls(verts, adj, nm)

    @classmethod
    def from_matrix(cls, vertices: Sequence[Hashable], matrix: np.ndarray, names: Sequence[str] | None = None) -> "Graph":
        matrix = np.asarray(matrix, dtype=bool).copy()
        np.fill_diagonal(matrix, False)
        if not np.array_equal(matrix, matrix.T):
            raise ValueError("adjacency is not symmetric")
        return cls(vertices, [_row_to_int(r) for r in matrix], names, check=False)

    # -- queries -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return popcount(self.adj[i])

    @cached_property
    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def neighbors(self, i: int) -> list[int]:
        return list(iter_bits(self.adj[i]))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.adj) for j in iter_bits(row >> (i + 1) << (i + 1))]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def label_edges(self) -> set[frozenset]:
        return {frozenset((self.vertices[i], self.vertices[j])) for i, j in self.edges()}

    @cached_property
    def matrix(self) -> np.ndarray:
        nbytes = (self.n + 7) // 8
        if self.n == 0:
            return np.zeros((0, 0), dtype=bool)
        raw = b"".join(row.to_bytes(nbytes, "little") for row in self.adj)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(self.n, nbytes), axis=1, bitorder="little")
        return bits[:, : self.n].astype(bool)

    def induced(self, indices: Iterable[int]) -> "Graph":
        """Induced subgraph on vertex indices, keeping labels and sorted order."""
        keep = sorted(set(indices))
        if len(keep) == self.n:
            return self
        if self.n > 256:
            idx = np.array(keep, dtype=np.int64)
            sub = self.matrix[np.ix_(idx, idx)]
            return Graph(
                [self.vertices[i] for i in keep],
                [_row_to_int(r) for r in sub],
                [self.names[i] for i in keep],
                check=False,
            )
        pos = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            row = 0
            for j in iter_bits(self.adj[old]):
                if j in pos:
                    row |= 1 << pos[j]
            adj.append(row)
        return Graph([self.vertices[i] for i in keep], adj, [self.names[i] for i in keep])

    def relabel(self, vertices: Sequence[Hashable], names: Sequence[str] | None = None) -> "Graph":
        """Same structure under new labels (re-sorted)."""
        order = sorted(range(self.n), key=lambda i: vertices[i])
        pos = {old: new for new, old in enumerate(order)}
        adj = []
        for old in order:
            row = 0
            for j in iter_bits(self.adj[old]):
                row |= 1 << pos[j]
            adj.append(row)
        nm = [names[i] for i in order] if names is not None else None
        return Graph([vertices[i] for i in order], adj, nm)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.vertices == other.vertices and self.adj == other.adj

    def __hash__(self):
        return hash((self.vertices, tuple(self.adj)))

    def __repr__(self) -> str:
        return f"<Graph n={self.n} m={self.edge_count}>"


# -- named graphs -------------------------------------------------------------

def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(range(n), [full & ~(1 << i) for i in range(n)])


def discrete(n: int) -> Graph:
    return Graph(range(n), [0] * n)


def complete_bipartite(m: int, n: int) -> Graph:
    left = (1 << m) - 1
    right = ((1 << n) - 1) << m
    return Graph(range(m + n), [right] * m + [left] * n)


def star(n: int) -> Graph:
    return complete_bipartite(1, n)


def cycle(n: int) -> Graph:
    return Graph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])


def triangle_with_pendants() -> Graph:
    """The graph H: a triangle with one end vertex hung on each corner."""
    return Graph.from_edges(range(6), [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])


def sequential_sum(parts: Sequence[Graph]) -> Graph:
    """Disjoint union of the parts, joining every vertex of each part to every
    vertex of the next one.  Labels become ``(part_index, old_label)``."""
    if not parts:
        raise ValueError("sequential sum needs at least one part")
    if len(parts) == 1:
        return parts[0]
    offsets = []
    total = 0
    for g in parts:
        offsets.append(total)
        total += g.n
    adj = [0] * total
    for k, g in enumerate(parts):
        off = offsets[k]
        for i, row in enumerate(g.adj):
            adj[off + i] = row << off
    for k in range(len(parts) - 1):
        a, b = parts[k], parts[k + 1]
        amask = ((1 << a.n) - 1) << offsets[k]
        bmask = ((1 << b.n) - 1) << offsets[k + 1]
        for i in range(a.n):
            adj[offsets[k] + i] |= bmask
        for i in range(b.n):
            adj[offsets[k + 1] + i] |= amask
    labels = [(k, v) for k, g in enumerate(parts) for v in g.vertices]
    names = [f"G{k}:{nm}" for k, g in enumerate(parts) for nm in g.names]
    return Graph(labels, adj, names)


# -- export -------------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(G: Graph, fmt: str = "json") -> str:
    """Serialize as DOT or JSON; both are byte-for-byte deterministic."""
    if fmt == "json":
        return json.dumps({"vertices": list(G.names), "edges": [list(e) for e in G.edges()]})
    if fmt == "dot":
        lines = ["graph {"]
        lines += [f"  {_quote(G.names[i])};" for i in range(G.n) if G.adj[i] == 0]
        lines += [f"  {_quote(G.names[i])} -- {_quote(G.names[j])};" for i, j in G.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")
