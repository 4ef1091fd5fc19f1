"""Independent reference implementations used as test oracles."""
from __future__ import annotations

import networkx as nx


def power_sets(G) -> list[set[int]]:
    """<x> for every x, by repeated multiplication with G.mul only."""
    out = []
    for x in range(G.order):
        seen, cur = {0}, x
        while cur not in seen:
            seen.add(cur)
            cur = G.mul(cur, x)
        out.append(seen)
    return out


def power_graph_nx(G) -> nx.Graph:
    pw = power_sets(G)
    g = nx.Graph()
    g.add_nodes_from(range(G.order))
    for x in range(G.order):
        for y in pw[x]:
            if y != x:
                g.add_edge(x, y)
    return g


def chordal_nx(G) -> bool:
    return nx.is_chordal(power_graph_nx(G))


def naive_longest_induced_path(g: nx.Graph) -> int:
    """Exhaustive DFS over induced paths; exponential, for tiny graphs only."""
    best = min(1, g.number_of_nodes())
    nodes = list(g.nodes)

    def extend(path, inside):
        nonlocal best
        best = max(best, len(path))
        last = path[-1]
        for v in g.neighbors(last):
            if v in inside:
                continue
            if any(g.has_edge(v, u) for u in path[:-1]):
                continue
            inside.add(v)
            path.append(v)
            extend(path, inside)
            path.pop()
            inside.discard(v)

    for s in nodes:
        extend([s], {s})
    return best


def naive_centralizer(G, x) -> set[int]:
    return {g for g in range(G.order) if G.mul(g, x) == G.mul(x, g)}


def naive_is_nilpotent_abelian_predicate(moduli) -> bool:
    """Power-chordality of an abelian group from its invariant factors."""
    from sympy import factorint

    sylow: dict[int, list[int]] = {}
    for m in moduli:
        for p, e in factorint(m).items():
            sylow.setdefault(p, []).append(e)
    if len(sylow) <= 1:
        return True
    if len(sylow) > 2:
        return False
    (a, ea), (b, eb) = sylow.items()
    cyclic = {a: len(ea) == 1, b: len(eb) == 1}
    exp_p = {a: max(ea) == 1, b: max(eb) == 1}
    return (cyclic[a] and exp_p[b]) or (cyclic[b] and exp_p[a])
