"""Power graph, directed power graph and commuting graph of an enumerated group."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup


@dataclass(frozen=True, eq=False)
class Graph:
    """Compressed adjacency: neighbours of ``v`` are ``indices[indptr[v]:indptr[v+1]]``,
    sorted ascending and duplicate-free."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    directed: bool = False

    @classmethod
    def from_arcs(cls, n: int, src, dst, directed: bool = False) -> "Graph":
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        keep = src != dst
        src, dst = src[keep], dst[keep]
        if not directed:
            src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
        code = np.unique(src * n + dst)
        src, dst = code // n, code % n
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        indptr = np.cumsum(indptr)
        return cls(n, indptr, dst.astype(np.int32), directed)

    @classmethod
    def from_edges(cls, n: int, edges, directed: bool = False) -> "Graph":
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls.from_arcs(n, edges[:, 0], edges[:, 1], directed)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    @property
    def num_arcs(self) -> int:
        return int(self.indptr[-1])

    @property
    def num_edges(self) -> int:
        return self.num_arcs if self.directed else self.num_arcs // 2

    def edges(self) -> np.ndarray:
        src = np.repeat(np.arange(self.n), self.degrees)
        dst = self.indices.astype(np.int64)
        if self.directed:
            return np.stack([src, dst], axis=1)
        keep = src < dst
        return np.stack([src[keep], dst[keep]], axis=1)

    def underlying(self) -> "Graph":
        if not self.directed:
            return self
        e = self.edges()
        return Graph.from_arcs(self.n, e[:, 0], e[:, 1], directed=False)

    def subgraph(self, vertices) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on ``vertices``; returns it with the old-index map."""
        vertices = np.unique(np.asarray(vertices, dtype=np.int64))
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[vertices] = np.arange(len(vertices))
        e = self.edges()
        keep = (pos[e[:, 0]] >= 0) & (pos[e[:, 1]] >= 0)
        e = e[keep]
        return Graph.from_arcs(len(vertices), pos[e[:, 0]], pos[e[:, 1]], self.directed), vertices

    def to_networkx(self):
        import networkx as nx

        g = nx.DiGraph() if self.directed else nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(map(tuple, self.edges().tolist()))
        return g

    # ------------------------------------------------------------ export
    def to_json(self, labels=None) -> str:
        doc = {
            "n": self.n,
            "directed": self.directed,
            "edges": self.edges().tolist(),
        }
        if labels is not None:
            doc["labels"] = list(labels)
        return json.dumps(doc)

    def to_dot(self, labels=None, name: str = "G") -> str:
        arrow = "->" if self.directed else "--"
        head = "digraph" if self.directed else "graph"
        lines = [f"{head} {json.dumps(name)} {{"]
        for v in range(self.n):
            lab = labels[v] if labels is not None else str(v)
            lines.append(f"  {v} [label={json.dumps(lab)}];")
        for u, v in self.edges().tolist():
            lines.append(f"  {u} {arrow} {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _power_arcs(G: FiniteGroup):
    orders, ptr, flat = G._power_data
    src = np.repeat(np.arange(G.order), orders)
    first = np.zeros(len(flat), dtype=bool)
    first[ptr[:-1]] = True  # x^1 = x itself
    return src[~first], flat[~first]


def directed_power_graph(G: FiniteGroup) -> Graph:
    """Arc x -> y for every y in <x> other than x."""
    src, dst = _power_arcs(G)
    return Graph.from_arcs(G.order, src, dst, directed=True)


def power_graph(G: FiniteGroup) -> Graph:
    src, dst = _power_arcs(G)
    return Graph.from_arcs(G.order, src, dst, directed=False)


def commuting_graph(G: FiniteGroup) -> Graph:
    cid = G.cyclic_ids
    srcs, dsts = [], []
    cache: dict[int, np.ndarray] = {}
    for x in range(1, G.order):
        c = int(cid[x])
        if c not in cache:
            cache[c] = G.centralizer([c])
        cen = cache[c]
        srcs.append(np.full(len(cen), x))
        dsts.append(cen)
    if not srcs:
        return Graph.from_arcs(G.order, [], [])
    return Graph.from_arcs(G.order, np.concatenate(srcs), np.concatenate(dsts))


def in_power_graph(G: FiniteGroup, x: int, y: int) -> bool:
    """Adjacency in Pow(G) straight from the definition."""
    if x == y:
        return False
    return bool(np.isin(y, G.powers(x)) or np.isin(x, G.powers(y)))


def arc(G: FiniteGroup, x: int, y: int) -> bool:
    """Whether DPow(G) has the arc x -> y, i.e. y is a power of x."""
    return x != y and bool(np.isin(y, G.powers(x)))
