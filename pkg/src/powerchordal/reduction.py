"""In/out classification, power reduction of holes and paths, and the passage
between power-reduced witnesses in Pow(G) and paths or cycles in Com(G).

All functions work on element indices of an enumerated group and decide
adjacency straight from the definitions, so they need no prebuilt graph.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .chordal import HoleWitness, PathWitness, WitnessError, brute_force_hole, find_four_hole, is_chordal, \
    verify_induced_cycle, verify_induced_path
from .groups import FiniteGroup
from .numtheory import factor, is_prime, screen_order
from .powergraph import Graph, power_graph


class InconsistentWitness(WitnessError):
    pass


class PreconditionError(ValueError):
    pass


class CorrespondenceError(ValueError):
    """The commuting-graph correspondence did not produce a valid witness."""


class PowerAdjacency:
    """Adjacency oracle for Pow(G) and DPow(G) computed on demand."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        self._members: dict[int, frozenset] = {}

    def powers(self, x: int) -> frozenset:
        x = int(x)
        if x not in self._members:
            self._members[x] = frozenset(self.G.powers(x).tolist())
        return self._members[x]

    def arc(self, x: int, y: int) -> bool:
        """x -> y in DPow(G)."""
        return x != y and y in self.powers(x)

    def has_edge(self, x: int, y: int) -> bool:
        return self.arc(x, y) or self.arc(y, x)

    def subgraph(self, verts) -> Graph:
        verts = list(verts)
        edges = [(i, j) for i, j in combinations(range(len(verts)), 2)
                 if self.has_edge(verts[i], verts[j])]
        return Graph.from_edges(len(verts), edges)


def _adjacency(G, adj):
    return adj if adj is not None else PowerAdjacency(G)


# ---------------------------------------------------------------- canonical form

def canonical_cycle(seq) -> tuple[int, ...]:
    """Rotate to start at the least vertex and head toward its smaller neighbour."""
    seq = [int(v) for v in seq]
    i = seq.index(min(seq))
    seq = seq[i:] + seq[:i]
    if len(seq) > 2 and seq[-1] < seq[1]:
        seq = [seq[0]] + seq[1:][::-1]
    return tuple(seq)


def canonical_path(seq) -> tuple[int, ...]:
    seq = tuple(int(v) for v in seq)
    return seq[::-1] if seq and seq[-1] < seq[0] else seq


# ---------------------------------------------------------------- in/out labelling

def _labels(adj: PowerAdjacency, seq, cyclic: bool):
    k = len(seq)
    pairs = [(i, i + 1) for i in range(k - 1)] + ([(k - 1, 0)] if cyclic else [])
    incoming = [0] * k
    outgoing = [0] * k
    for i, j in pairs:
        a, b = seq[i], seq[j]
        fw, bw = adj.arc(a, b), adj.arc(b, a)
        if fw and bw:
            raise InconsistentWitness(f"{a} and {b} generate the same cyclic subgroup")
        if not (fw or bw):
            raise InconsistentWitness(f"{a} and {b} are not adjacent")
        if fw:
            outgoing[i] += 1
            incoming[j] += 1
        else:
            outgoing[j] += 1
            incoming[i] += 1
    ins, outs = set(), set()
    for i, v in enumerate(seq):
        if incoming[i] and outgoing[i]:
            raise InconsistentWitness(f"arc directions do not alternate at vertex {v}")
        (ins if incoming[i] else outs).add(int(v))
    return frozenset(ins), frozenset(outs)


def classify_in_out(G: FiniteGroup, witness, adj: PowerAdjacency | None = None):
    """Return ``witness`` with its in-vertices (powers of their witness neighbours)
    and out-vertices filled in; raises if directions fail to alternate."""
    adj = _adjacency(G, adj)
    seq = list(witness.vertices)
    if isinstance(witness, HoleWitness):
        if not verify_induced_cycle(adj, seq):
            raise WitnessError(f"{seq} is not an induced cycle of Pow({G.name})")
        ins, outs = _labels(adj, seq, True)
        return HoleWitness(tuple(seq), ins, outs)
    if len(seq) < 3 or not verify_induced_path(adj, seq):
        raise WitnessError(f"{seq} is not an induced path on at least 3 vertices")
    ins, outs = _labels(adj, seq, False)
    return PathWitness(tuple(seq), ins, outs)


def is_power_reduced(G: FiniteGroup, witness) -> bool:
    return all(is_prime(G.element_order(v)) for v in witness.in_vertices)


# ---------------------------------------------------------------- reduction of holes

def _prime_power_elem(G: FiniteGroup, g: int, p: int) -> int:
    """The power of g of order p (p must divide |g|)."""
    return G.power(g, G.element_order(g) // p)


def _holes_within(adj: PowerAdjacency, verts) -> HoleWitness | None:
    verts = list(dict.fromkeys(int(v) for v in verts))
    sub = adj.subgraph(verts)
    h = brute_force_hole(sub)
    if h is None:
        return None
    return HoleWitness(tuple(verts[i] for i in h.vertices))


def _four_cycle_construction(G, adj, seq, pos, gp, p):
    """The 4-cycle {g', h1, x', h2} built in the collapse case of the reduction."""
    k = len(seq)
    ins = [i for i in range(k) if i != pos and adj.arc(seq[(i + 1) % k], seq[i])]
    for i in ins:
        x = seq[i]
        h1, h2 = seq[(i - 1) % k], seq[(i + 1) % k]
        ox = G.element_order(x)
        for q, _ in factor(ox).factors:
            if q == p:
                continue
            xp = _prime_power_elem(G, x, q)
            cand = [gp, h1, xp, h2]
            if verify_induced_cycle(adj, cand):
                return HoleWitness(tuple(cand))
    return None


def power_reduce_cycle(G: FiniteGroup, hole: HoleWitness, adj: PowerAdjacency | None = None) -> HoleWitness:
    """A power-reduced hole obtained by replacing in-vertices by prime-order powers.

    In-vertices are processed by ascending position. When a replacement destroys
    the cycle, a shorter hole inside the modified vertex set or the 4-cycle
    construction takes over. Every intermediate witness is validated.
    """
    adj = _adjacency(G, adj)
    cur = classify_in_out(G, hole, adj)
    guard = 0
    while True:
        guard += 1
        if guard > 10_000:  # pragma: no cover - the measure below strictly decreases
            raise WitnessError("power reduction did not terminate")
        seq = list(cur.vertices)
        todo = [i for i, v in enumerate(seq) if v in cur.in_vertices and not is_prime(G.element_order(v))]
        if not todo:
            return HoleWitness(canonical_cycle(seq), cur.in_vertices, cur.out_vertices)
        pos = todo[0]
        g = seq[pos]
        primes = [p for p, _ in factor(G.element_order(g)).factors]
        nxt = None
        for p in primes:
            cand = seq.copy()
            cand[pos] = _prime_power_elem(G, g, p)
            if verify_induced_cycle(adj, cand):
                nxt = HoleWitness(tuple(cand))
                break
        if nxt is None:
            for p in primes:
                gp = _prime_power_elem(G, g, p)
                cand = seq.copy()
                cand[pos] = gp
                nxt = _holes_within(adj, cand)
                if nxt is None:
                    nxt = _four_cycle_construction(G, adj, seq, pos, gp, p)
                if nxt is not None:
                    break
        if nxt is None:
            raise WitnessError(f"no power-reduced cycle materialized from {seq}")
        cur = classify_in_out(G, nxt, adj)


# ---------------------------------------------------------------- reduction of paths

def power_reduce_path(G: FiniteGroup, path: PathWitness, adj: PowerAdjacency | None = None):
    """A power-reduced induced path with as many vertices as ``path``, or a hole
    with between 4 and ``len(path)`` vertices.

    Each in-vertex is replaced by one of its prime-order powers. That keeps every
    edge of the path, so only the non-edges need checking, and the choices are
    searched by backtracking. In-vertices need not have prime-power order (in C_24
    the path of orders 8, 4, 12, 6 is induced), so a single fixed replacement per
    vertex is not enough in general. If no choice gives a path, a hole inside one
    of the single-replacement vertex sets is returned, and failing that a hole of
    Pow(G) of admissible length (in Q_8 x C_3 the path of orders 4, 12, 6, 12, 4
    needs this last step, which builds the whole power graph).
    """
    scr = screen_order(G.order)
    if not scr.clean:
        raise PreconditionError(f"|{G.name}| = {G.order} is divisible by a {scr.pattern} pattern")
    if 0 in path.vertices:
        raise WitnessError("path witnesses must not contain the identity")
    adj = _adjacency(G, adj)
    cur = classify_in_out(G, path, adj)
    seq = list(cur.vertices)
    k = len(seq)
    options = {}
    for i, v in enumerate(seq):
        if v in cur.in_vertices:
            o = G.element_order(v)
            options[i] = [v] if is_prime(o) else [_prime_power_elem(G, v, p) for p, _ in factor(o).factors]
    order = sorted(options)

    def clashes(cand, i, fixed):
        return any(abs(i - j) > 1 and adj.has_edge(cand[i], cand[j]) for j in fixed)

    cand = seq.copy()
    fixed = [i for i in range(k) if i not in options]

    def search(t):
        if t == len(order):
            return True
        i = order[t]
        for w in options[i]:
            cand[i] = w
            if not clashes(cand, i, fixed):
                fixed.append(i)
                if search(t + 1):
                    return True
                fixed.pop()
        cand[i] = seq[i]
        return False

    if search(0):
        return classify_in_out(G, PathWitness(canonical_path(cand)), adj)
    for i in order:
        for w in options[i]:
            single = seq.copy()
            single[i] = w
            hole = _holes_within(adj, single)
            if hole is not None:
                return classify_in_out(G, HoleWitness(canonical_cycle(hole.vertices)), adj)
    hole = _short_hole(G, k)
    if hole is None:
        raise WitnessError(f"no power-reduced path or short hole materialized from {seq}")
    return classify_in_out(G, HoleWitness(canonical_cycle(hole.vertices)), adj)


def _short_hole(G: FiniteGroup, max_len: int) -> HoleWitness | None:
    pg = power_graph(G)
    hole = find_four_hole(pg)
    if hole is None:
        verdict = is_chordal(pg)
        if verdict.chordal:
            return None
        hole = verdict.hole if len(verdict.hole) <= max_len else brute_force_hole(pg, max_len)
    return hole


# ---------------------------------------------------------------- commuting graph correspondence

def to_commuting_path(G: FiniteGroup, reduced, adj: PowerAdjacency | None = None) -> list[int]:
    """The in-vertex subsequence of a power-reduced witness.

    Consecutive entries are checked to commute and to have distinct prime orders.
    Non-consecutive entries may commute as well (always so in abelian groups), so
    the result is a path or cycle of Com(G) that need not be induced; see
    :func:`is_induced_in_commuting_graph`.
    """
    adj = _adjacency(G, adj)
    w = reduced if reduced.in_vertices else classify_in_out(G, reduced, adj)
    if not is_power_reduced(G, w):
        raise PreconditionError("witness is not power-reduced")
    ins = [v for v in w.vertices if v in w.in_vertices]
    cyclic = isinstance(w, HoleWitness)
    k = len(ins)
    pairs = list(zip(ins, ins[1:])) + ([(ins[-1], ins[0])] if cyclic and k > 2 else [])
    for x, y in pairs:
        if not G.commute(x, y) or G.element_order(x) == G.element_order(y):
            raise CorrespondenceError(f"in-vertices {x}, {y} break the commuting-path shape")
    return ins


def is_induced_in_commuting_graph(G: FiniteGroup, seq, cyclic: bool) -> bool:
    k = len(seq)
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (cyclic and i == 0 and j == k - 1 and k > 2)
            if G.commute(seq[i], seq[j]) != consecutive:
                return False
    return True


def from_commuting_path(G: FiniteGroup, vertices, cyclic: bool = False,
                        adj: PowerAdjacency | None = None):
    """Interleave consecutive commuting prime-order elements x, y with the products
    xy as out-vertices, then validate the result in Pow(G)."""
    vertices = [int(v) for v in vertices]
    if len(vertices) < 2:
        raise ValueError("a commuting path needs at least two vertices")
    for v in vertices:
        if not is_prime(G.element_order(v)):
            raise ValueError(f"element {v} does not have prime order")
    adj = _adjacency(G, adj)
    pairs = list(zip(vertices, vertices[1:])) + ([(vertices[-1], vertices[0])] if cyclic else [])
    seq = []
    for x, y in pairs:
        if not G.commute(x, y) or G.element_order(x) == G.element_order(y):
            raise CorrespondenceError(f"{x}, {y} must commute and have distinct prime orders")
        seq += [x, G.mul(x, y)]
    if not cyclic:
        seq.append(vertices[-1])
    if cyclic:
        if not verify_induced_cycle(adj, seq):
            raise CorrespondenceError(f"interleaved sequence {seq} is not an induced cycle of Pow(G)")
        return classify_in_out(G, HoleWitness(tuple(seq)), adj)
    if not verify_induced_path(adj, seq):
        raise CorrespondenceError(f"interleaved sequence {seq} is not an induced path of Pow(G)")
    return classify_in_out(G, PathWitness(tuple(seq)), adj)


# ---------------------------------------------------------------- structural checks on 4-cycles

def out_vertex_orders_ok(G: FiniteGroup, hole: HoleWitness) -> bool:
    """Every out-vertex order is divisible by p^2 q for distinct primes p, q."""
    for v in hole.out_vertices:
        fs = factor(G.element_order(v)).factors
        if len(fs) < 2 or not any(e >= 2 for _, e in fs):
            return False
    return True


def has_proper_normal_cyclic(G: FiniteGroup, gens) -> bool:
    """Whether <gens> has a nontrivial proper normal cyclic subgroup."""
    U = G.subgroup_generated(gens)
    cid = G.cyclic_ids
    for c in np.unique(cid[U]).tolist():
        if c == 0:
            continue
        Z = G.cyclic_subgroup(c)
        if len(Z) < len(U) and G.is_normal_in(Z, U):
            return True
    return False
