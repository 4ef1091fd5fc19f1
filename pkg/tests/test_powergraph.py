import json

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import naive_centralizer, power_graph_nx, power_sets
from powerchordal.powergraph import (
    Graph,
    arc,
    commuting_graph,
    directed_power_graph,
    in_power_graph,
    power_graph,
)

SPECS = ["cyclic:1", "cyclic:12", "ab:2x2x2", "sym:4", "q:12", "dih:cyclic:6", "psl:2,5", "sd:7^1,3^1,2"]


@pytest.mark.parametrize("spec", SPECS)
def test_power_graph_matches_definition(G, spec):
    H = G(spec)
    g = power_graph(H)
    want = power_graph_nx(H)
    assert g.n == H.order
    assert {tuple(e) for e in g.edges().tolist()} == {tuple(sorted(e)) for e in want.edges}


@pytest.mark.parametrize("spec", SPECS)
def test_directed_power_graph(G, spec):
    H = G(spec)
    d = directed_power_graph(H)
    pw = power_sets(H)
    arcs = {tuple(e) for e in d.edges().tolist()}
    assert arcs == {(x, y) for x in range(H.order) for y in pw[x] if y != x}
    # bidirectional arcs exactly between generators of one cyclic subgroup
    for x, y in list(arcs)[:300]:
        assert ((y, x) in arcs) == (H.cyclic_ids[x] == H.cyclic_ids[y])
    assert d.underlying().num_edges == power_graph(H).num_edges


@pytest.mark.parametrize("spec", ["sym:4", "q:12", "ab:2x6"])
def test_commuting_graph(G, spec):
    H = G(spec)
    c = commuting_graph(H)
    for x in range(H.order):
        assert set(c.neighbors(x).tolist()) == naive_centralizer(H, x) - {x}


def test_direct_definitions(G):
    H = G("cyclic:6")
    assert in_power_graph(H, 1, 2) == power_graph(H).has_edge(1, 2)
    assert not in_power_graph(H, 3, 3)
    g = 1  # generator of C6 in BFS order
    assert H.element_order(g) == 6
    assert all(arc(H, g, y) for y in range(1, 6) if y != g)


@given(st.integers(1, 14), st.lists(st.tuples(st.integers(0, 13), st.integers(0, 13)), max_size=40))
def test_graph_csr_invariants(n, edges):
    edges = [(a % n, b % n) for a, b in edges]
    g = Graph.from_edges(n, edges)
    ref = nx.Graph()
    ref.add_nodes_from(range(n))
    ref.add_edges_from((a, b) for a, b in edges if a != b)
    assert g.num_edges == ref.number_of_edges()
    for v in range(n):
        nb = g.neighbors(v)
        assert np.all(np.diff(nb) > 0)
        assert set(nb.tolist()) == set(ref.neighbors(v))
    for a, b in edges:
        assert g.has_edge(a, b) == (a != b)
    sub, mapping = g.subgraph(range(0, n, 2))
    assert nx.is_isomorphic(sub.to_networkx(), ref.subgraph(mapping.tolist()))


def test_exports(G):
    H = G("cyclic:4")
    g = power_graph(H)
    doc = json.loads(g.to_json(H.labels()))
    assert doc["n"] == 4 and doc["directed"] is False and len(doc["labels"]) == 4
    dot = directed_power_graph(H).to_dot(H.labels(), name="C4")
    assert dot.startswith('digraph "C4" {') and "->" in dot
    assert g.to_dot() == g.to_dot()
