"""Chordality with certificates, hole search and bounded induced-path search.

The heavy loops (maximum cardinality search, PEO verification, BFS and the
induced-path DFS) are numba kernels over the CSR arrays of :class:`Graph`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numba as nb
import numpy as np

from .powergraph import Graph

MAX_PATH_LIMIT = 25
DEFAULT_PATH_BUDGET = 200_000_000


class WitnessError(RuntimeError):
    """A produced certificate failed validation. Always an implementation bug."""


# ---------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class HoleWitness:
    """Cyclically ordered vertices of an induced cycle; in/out labels are filled
    in by :func:`powerchordal.reduction.classify_in_out`."""

    vertices: tuple[int, ...]
    in_vertices: frozenset = field(default_factory=frozenset)
    out_vertices: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.vertices)

    def to_dict(self, labels=None) -> dict:
        d = {"kind": "hole", "length": len(self.vertices), "vertices": list(self.vertices),
             "in": sorted(self.in_vertices), "out": sorted(self.out_vertices)}
        if labels is not None:
            d["labels"] = [labels[v] for v in self.vertices]
        return d

    def to_json(self, labels=None) -> str:
        return json.dumps(self.to_dict(labels))


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]
    in_vertices: frozenset = field(default_factory=frozenset)
    out_vertices: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.vertices)

    def to_dict(self, labels=None) -> dict:
        d = {
            "kind": "path",
            "length": len(self.vertices),
            "vertices": list(self.vertices),
            "in": sorted(self.in_vertices),
            "out": sorted(self.out_vertices),
        }
        if labels is not None:
            d["labels"] = [labels[v] for v in self.vertices]
        return d

    def to_json(self, labels=None) -> str:
        return json.dumps(self.to_dict(labels))


@dataclass(frozen=True)
class ChordalVerdict:
    chordal: bool
    hole: HoleWitness | None = None

    def __bool__(self):
        return self.chordal


def verify_induced_path(g: Graph, seq) -> bool:
    seq = [int(v) for v in seq]
    if len(set(seq)) != len(seq) or not seq:
        return False
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if g.has_edge(seq[i], seq[j]) != (j == i + 1):
                return False
    return True


def verify_induced_cycle(g: Graph, seq) -> bool:
    seq = [int(v) for v in seq]
    k = len(seq)
    if k < 4 or len(set(seq)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(seq[i], seq[j]) != consecutive:
                return False
    return True


# ---------------------------------------------------------------- kernels

@nb.njit(cache=True)
def _heap_push(heap, size, key):
    i = size
    heap[i] = key
    while i > 0:
        p = (i - 1) >> 1
        if heap[p] <= heap[i]:
            break
        heap[p], heap[i] = heap[i], heap[p]
        i = p
    return size + 1


@nb.njit(cache=True)
def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        c = l
        if l + 1 < size and heap[l + 1] < heap[l]:
            c = l + 1
        if heap[i] <= heap[c]:
            break
        heap[i], heap[c] = heap[c], heap[i]
        i = c
    return top, size


@nb.njit(cache=True)
def _mcs_visit(n, indptr, indices):
    """MCS visit order: repeatedly take an unvisited vertex with the most visited
    neighbours, least index on ties. Lazy-deletion heap on (-weight, index)."""
    weight = np.zeros(n, np.int64)
    visited = np.zeros(n, np.bool_)
    heap = np.empty(n + indptr[n] + 1, np.int64)
    size = 0
    for v in range(n):
        size = _heap_push(heap, size, v)  # weight 0
    out = np.empty(n, np.int64)
    k = 0
    while k < n:
        key, size = _heap_pop(heap, size)
        w = -(key // n)
        v = key + w * n
        if visited[v] or weight[v] != w:
            continue
        visited[v] = True
        out[k] = v
        k += 1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if not visited[u]:
                weight[u] += 1
                size = _heap_push(heap, size, -weight[u] * n + u)
    return out


@nb.njit(cache=True)
def _has_edge(indptr, indices, u, v):
    lo = indptr[u]
    hi = indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        x = indices[mid]
        if x == v:
            return True
        if x < v:
            lo = mid + 1
        else:
            hi = mid
    return False


@nb.njit(cache=True)
def _check_peo(n, indptr, indices, order):
    """Returns (-1,-1,-1) if ``order`` is a perfect elimination ordering, else a
    violation (v, u, w): u, w later neighbours of v, non-adjacent."""
    pos = np.empty(n, np.int64)
    for i in range(n):
        pos[order[i]] = i
    for i in range(n):
        v = order[i]
        parent = -1
        best = n
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if pos[u] > i and pos[u] < best:
                best = pos[u]
                parent = u
        if parent < 0:
            continue
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if pos[w] > i and w != parent and not _has_edge(indptr, indices, parent, w):
                return v, parent, w
    return -1, -1, -1


@nb.njit(cache=True)
def _bfs_path(n, indptr, indices, blocked, src, dst):
    """Shortest src-dst path avoiding blocked vertices (src/dst must be unblocked)."""
    prev = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    prev[src] = src
    queue[0] = src
    head, tail = 0, 1
    while head < tail:
        x = queue[head]
        head += 1
        if x == dst:
            break
        for e in range(indptr[x], indptr[x + 1]):
            y = indices[e]
            if prev[y] < 0 and not blocked[y]:
                prev[y] = x
                queue[tail] = y
                tail += 1
    if prev[dst] < 0:
        return np.empty(0, np.int64)
    length = 1
    x = dst
    while x != src:
        x = prev[x]
        length += 1
    out = np.empty(length, np.int64)
    x = dst
    for i in range(length - 1, -1, -1):
        out[i] = x
        x = prev[x]
    return out


@nb.njit(cache=True)
def _hole_at(n, indptr, indices, v):
    """A hole through v, or an empty array: look for two non-adjacent neighbours
    of v joined by a path outside N[v]."""
    blocked = np.zeros(n, np.bool_)
    blocked[v] = True
    for e in range(indptr[v], indptr[v + 1]):
        blocked[indices[e]] = True
    comp = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    ncomp = 0
    for s in range(n):
        if blocked[s] or comp[s] >= 0:
            continue
        comp[s] = ncomp
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            x = queue[head]
            head += 1
            for e in range(indptr[x], indptr[x + 1]):
                y = indices[e]
                if not blocked[y] and comp[y] < 0:
                    comp[y] = ncomp
                    queue[tail] = y
                    tail += 1
        ncomp += 1
    # neighbour u of v "touches" component c if u has a neighbour in c
    deg = indptr[v + 1] - indptr[v]
    for a in range(deg):
        u = indices[indptr[v] + a]
        for e in range(indptr[u], indptr[u + 1]):
            c = comp[indices[e]]
            if c < 0:
                continue
            for b in range(a + 1, deg):
                w = indices[indptr[v] + b]
                if _has_edge(indptr, indices, u, w):
                    continue
                touches = False
                for f in range(indptr[w], indptr[w + 1]):
                    if comp[indices[f]] == c:
                        touches = True
                        break
                if touches:
                    blk = blocked.copy()
                    blk[u] = False
                    blk[w] = False
                    p = _bfs_path(n, indptr, indices, blk, u, w)
                    out = np.empty(len(p) + 1, np.int64)
                    out[0] = v
                    out[1:] = p
                    return out
    return np.empty(0, np.int64)


@nb.njit(cache=True)
def _longest_induced_path(n, indptr, indices, starts, limit, budget):
    """Depth-first extension of induced paths. ``cnt[x]`` counts path vertices
    adjacent to x; an extension v of the last vertex is legal iff cnt[v] == 1.
    Returns (best length, best path, nodes used, exhausted flag)."""
    cnt = np.zeros(n, np.int64)
    inpath = np.zeros(n, np.bool_)
    path = np.empty(limit, np.int64)
    cursor = np.empty(limit, np.int64)
    best = np.empty(limit, np.int64)
    best_len = 0
    nodes = 0
    for si in range(len(starts)):
        s = starts[si]
        path[0] = s
        inpath[s] = True
        for e in range(indptr[s], indptr[s + 1]):
            cnt[indices[e]] += 1
        cursor[0] = indptr[s]
        depth = 1
        if best_len < 1:
            best_len = 1
            best[0] = s
        while depth > 0:
            last = path[depth - 1]
            advanced = False
            if depth < limit:
                while cursor[depth - 1] < indptr[last + 1]:
                    v = indices[cursor[depth - 1]]
                    cursor[depth - 1] += 1
                    if inpath[v] or cnt[v] != 1:
                        continue
                    nodes += 1
                    path[depth] = v
                    inpath[v] = True
                    for e in range(indptr[v], indptr[v + 1]):
                        cnt[indices[e]] += 1
                    cursor[depth] = indptr[v]
                    depth += 1
                    if depth > best_len:
                        best_len = depth
                        best[:depth] = path[:depth]
                    advanced = True
                    break
            if best_len >= limit or nodes >= budget:
                # unwind completely
                while depth > 0:
                    x = path[depth - 1]
                    inpath[x] = False
                    for e in range(indptr[x], indptr[x + 1]):
                        cnt[indices[e]] -= 1
                    depth -= 1
                return best_len, best[:best_len].copy(), nodes, best_len >= limit
            if not advanced:
                x = path[depth - 1]
                inpath[x] = False
                for e in range(indptr[x], indptr[x + 1]):
                    cnt[indices[e]] -= 1
                depth -= 1
    return best_len, best[:best_len].copy(), nodes, True


@nb.njit(cache=True)
def _four_hole(n, indptr, indices):
    """Induced 4-cycle (a, b, c, d) or an empty array."""
    mark = np.zeros(n, np.int64)  # stamp a+1 on N(a)
    common = np.empty(n, np.int64)
    seen = np.full(n, -1, np.int64)
    for a in range(n):
        for e in range(indptr[a], indptr[a + 1]):
            mark[indices[e]] = a + 1
        # candidates c > a at distance exactly 2
        for e in range(indptr[a], indptr[a + 1]):
            b = indices[e]
            for f in range(indptr[b], indptr[b + 1]):
                c = indices[f]
                if c <= a or mark[c] == a + 1 or seen[c] == a:
                    continue
                seen[c] = a
                k = 0
                for g in range(indptr[c], indptr[c + 1]):
                    x = indices[g]
                    if mark[x] == a + 1:
                        common[k] = x
                        k += 1
                for i in range(k):
                    for j in range(i + 1, k):
                        if not _has_edge(indptr, indices, common[i], common[j]):
                            out = np.empty(4, np.int64)
                            out[0] = a
                            out[1] = common[i]
                            out[2] = c
                            out[3] = common[j]
                            return out
    return np.empty(0, np.int64)


# ---------------------------------------------------------------- public API

def _require_undirected(g: Graph):
    if g.directed:
        raise ValueError("chordality is defined for undirected graphs; use g.underlying()")


def mcs_order(g: Graph) -> np.ndarray:
    """Elimination order from maximum cardinality search.

    Vertices are visited greedily by number of visited neighbours (least index on
    ties); the returned order is the reverse of the visit order, which is a
    perfect elimination ordering exactly when ``g`` is chordal.
    """
    _require_undirected(g)
    if g.n == 0:
        return np.empty(0, np.int64)
    return _mcs_visit(g.n, g.indptr, g.indices)[::-1].copy()


def check_peo(g: Graph, order):
    """``None`` if ``order`` is a perfect elimination ordering, else ``(v, u, w)``."""
    order = np.asarray(order, dtype=np.int64)
    if g.n == 0:
        return None
    if len(order) != g.n or not np.array_equal(np.sort(order), np.arange(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    v, u, w = _check_peo(g.n, g.indptr, g.indices, order)
    return None if v < 0 else (int(v), int(u), int(w))


def extract_hole(g: Graph, violation) -> HoleWitness:
    v, u, w = violation
    blocked = np.zeros(g.n, dtype=bool)
    blocked[v] = True
    blocked[g.neighbors(v)] = True
    blocked[u] = blocked[w] = False
    p = _bfs_path(g.n, g.indptr, g.indices, blocked, int(u), int(w))
    seq = [int(v)] + p.tolist() if len(p) else []
    if not (seq and verify_induced_cycle(g, seq)):
        seq = _hole_at(g.n, g.indptr, g.indices, int(v)).tolist()
    if not (seq and verify_induced_cycle(g, seq)):
        seq = []
        for x in range(g.n):
            seq = _hole_at(g.n, g.indptr, g.indices, x).tolist()
            if seq:
                break
    if not verify_induced_cycle(g, seq):
        raise WitnessError(f"hole extraction from violation {violation} produced {seq}")
    return HoleWitness(tuple(seq))


def is_chordal(g: Graph) -> ChordalVerdict:
    _require_undirected(g)
    violation = check_peo(g, mcs_order(g))
    if violation is None:
        return ChordalVerdict(True)
    return ChordalVerdict(False, extract_hole(g, violation))


def find_four_hole(g: Graph) -> HoleWitness | None:
    _require_undirected(g)
    out = _four_hole(g.n, g.indptr, g.indices).tolist()
    if not out:
        return None
    if not verify_induced_cycle(g, out):
        raise WitnessError(f"4-hole search produced {out}")
    return HoleWitness(tuple(out))


def brute_force_hole(g: Graph, max_len: int | None = None) -> HoleWitness | None:
    """Independent oracle: a shortest hole with at most ``max_len`` vertices.

    Depth-first search over induced paths whose first vertex is the least on the
    path, closing them into chordless cycles, with the target length raised one
    step at a time. Exponential; meant for small graphs.
    """
    n = g.n
    adj = [set(g.neighbors(v).tolist()) for v in range(n)]
    max_len = n if max_len is None else min(max_len, n)

    def extend(path, target):
        s, last = path[0], path[-1]
        for v in sorted(adj[last]):
            if v <= s or v in path:
                continue
            if any(v in adj[x] for x in path[1:-1]):
                continue
            if len(path) >= 2 and s in adj[v]:
                if len(path) + 1 == target:
                    return path + [v]  # closes a chordless cycle
                continue
            if len(path) + 1 >= target:
                continue
            found = extend(path + [v], target)
            if found:
                return found
        return None

    for target in range(4, max_len + 1):
        for s in range(n):
            found = extend([s], target)
            if found:
                return HoleWitness(tuple(found))
    return None


# ---------------------------------------------------------------- reductions

def reduce_for_paths(g: Graph) -> tuple[Graph, np.ndarray]:
    """Drop universal vertices and keep one vertex per true-twin class.

    Neither operation changes induced paths on four or more vertices: a universal
    vertex is adjacent to everything, and two true twins on one induced path would
    have to be consecutive with a common further neighbour. A universal vertex can
    still be the middle of a three-vertex path; the caller accounts for that. Holes
    are likewise preserved. Returns the reduced graph and the map back to ``g``'s indices.
    """
    n = g.n
    deg = g.degrees
    keep = deg < n - 1
    reps = {}
    for v in np.nonzero(keep)[0].tolist():
        nbrs = g.neighbors(v)
        key = np.sort(np.append(nbrs, v)).astype(np.int32).tobytes()
        reps.setdefault(key, v)
    verts = np.array(sorted(reps.values()), dtype=np.int64)
    sub, mapping = g.subgraph(verts)
    return sub, mapping


def _three_path_through_universal(g: Graph) -> tuple[int, ...] | None:
    deg = g.degrees
    universal = np.nonzero(deg == g.n - 1)[0]
    other = np.nonzero(deg < g.n - 1)[0]
    if not len(universal) or not len(other):
        return None
    a = int(other[0])
    seen = np.zeros(g.n, dtype=bool)
    seen[g.neighbors(a)] = True
    seen[a] = True
    b = int(np.argmin(seen))
    return (a, int(universal[0]), b)


@dataclass(frozen=True)
class LongestPathResult:
    length: int
    witness: PathWitness
    exact: bool  # False when the node budget ran out first
    nodes: int


def bounded_longest_induced_path(g: Graph, limit: int = 20,
                                 budget: int = DEFAULT_PATH_BUDGET) -> LongestPathResult:
    """Longest induced path with at most ``limit`` vertices.

    Exact unless the node budget is exhausted, in which case ``exact`` is False
    and the length is only a lower bound.
    """
    _require_undirected(g)
    if not 1 <= limit <= MAX_PATH_LIMIT:
        raise ValueError(f"limit must be between 1 and {MAX_PATH_LIMIT}")
    if g.n == 0:
        return LongestPathResult(0, PathWitness(()), True, 0)
    # baseline: any edge is an induced path on 2 vertices
    base: tuple[int, ...] = (0,)
    if g.num_edges and limit >= 2:
        u = int(np.argmax(g.degrees > 0))
        base = (u, int(g.neighbors(u)[0]))
    sub, mapping = reduce_for_paths(g)
    length, seq, exact, nodes = len(base), base, True, 0
    if sub.n and sub.num_edges:
        starts = np.argsort(sub.degrees, kind="stable").astype(np.int64)
        blen, bpath, nodes, done = _longest_induced_path(sub.n, sub.indptr, sub.indices,
                                                        starts, limit, budget)
        exact = bool(done)
        if blen > length:
            length, seq = int(blen), tuple(int(mapping[x]) for x in bpath)
    if length < 3 <= limit:
        # only a universal vertex can then be the middle of a longer path
        seq = _three_path_through_universal(g) or seq
        length = len(seq)
    if not verify_induced_path(g, seq):
        raise WitnessError(f"induced path search produced {seq}")
    return LongestPathResult(length, PathWitness(seq), exact, int(nodes))
