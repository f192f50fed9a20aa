"""graph type, formats, generators and structural predicates."""

import itertools
from collections import deque

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclecover.graphs import (
    Graph,
    GraphFormatError,
    NAMED_GRAPHS,
    generate_named,
    parse_edge_list,
    parse_graph6,
    structural_report,
    to_dot,
    to_graph6,
)

from conftest import FULL_CORPUS


# ---------------------------------------------------------------------------
# independent oracles


def bfs_connected_from_everywhere(g: Graph) -> bool:
    """Connectivity the slow way: BFS from every single vertex."""
    if g.vertex_count == 0:
        return False
    for s in range(g.vertex_count):
        seen = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != g.vertex_count:
            return False
    return True


def bridges_by_removal(g: Graph):
    """An edge is a bridge iff removing it splits its endpoints apart."""
    out = []
    for e in g.edges:
        remaining = [f for f in g.edges if f != e]
        adj = {v: [] for v in range(g.vertex_count)}
        for u, v in remaining:
            adj[u].append(v)
            adj[v].append(u)
        seen = {e[0]}
        queue = deque([e[0]])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if e[1] not in seen:
            out.append(e)
    return out


def girth_by_vertex_bfs(g: Graph):
    """Shortest cycle via BFS from each vertex (cross edges close cycles)."""
    best = None
    for root in range(g.vertex_count):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    cand = dist[v] + dist[w] + 1
                    if best is None or cand < best:
                        best = cand
    return best


# ---------------------------------------------------------------------------
# graph6


def test_graph6_hand_decoded_example():
    # 'D' -> n=5; '?{' -> bits 000000 111100; ten upper-triangle bits in
    # column order put the four 1s on the pairs (0,4) (1,4) (2,4) (3,4)
    g = parse_graph6("D?{")
    assert g.vertex_count == 5
    assert g.edges == ((0, 4), (1, 4), (2, 4), (3, 4))
    nxg = nx.from_graph6_bytes(b"D?{")
    assert set(map(tuple, map(sorted, nxg.edges()))) == set(g.edges)


def test_graph6_smallest():
    g = parse_graph6("@")
    assert g.vertex_count == 1
    assert g.edges == ()


def test_graph6_petersen_against_networkx():
    g = generate_named("petersen")
    assert g.vertex_count == 10 and len(g.edges) == 15
    encoded = to_graph6(g)
    nxg = nx.from_graph6_bytes(encoded.encode())
    assert set(map(tuple, map(sorted, nxg.edges()))) == set(g.edges)
    # and our decoder agrees with networkx's encoder
    theirs = nx.to_graph6_bytes(nxg, header=False).decode().strip()
    assert parse_graph6(theirs) == g


def test_graph6_header_and_errors():
    g = generate_named("k33")
    assert parse_graph6(">>graph6<<" + to_graph6(g)) == g
    with pytest.raises(GraphFormatError):
        parse_graph6("")
    with pytest.raises(GraphFormatError, match="trailing garbage"):
        parse_graph6(to_graph6(g) + "!!")
    with pytest.raises(GraphFormatError, match="byte"):
        parse_graph6("D" + chr(20) + "{")
    with pytest.raises(GraphFormatError):
        parse_graph6("D?")  # truncated adjacency bytes


def test_graph6_round_trip_corpus():
    for name in FULL_CORPUS:
        g = generate_named(name)
        assert parse_graph6(to_graph6(g)) == g


def test_graph6_long_form():
    g = Graph.from_edges(70, [(i, i + 1) for i in range(69)])
    s = to_graph6(g)
    assert s.startswith(chr(126))
    assert parse_graph6(s) == g
    nxg = nx.from_graph6_bytes(s.encode())
    assert set(map(tuple, map(sorted, nxg.edges()))) == set(g.edges)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.data())
def test_graph6_round_trip_random(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    g = Graph.from_edges(n, chosen)
    s = to_graph6(g)
    assert parse_graph6(s) == g
    nxg = nx.from_graph6_bytes(s.encode())
    assert set(map(tuple, map(sorted, nxg.edges()))) == set(g.edges)


# ---------------------------------------------------------------------------
# edge lists


def test_edge_list_triangle():
    g = parse_edge_list("0 1\n1 2\n2 0")
    assert g.vertex_count == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_edge_list_header_only():
    g = parse_edge_list("n = 4\n")
    assert g.vertex_count == 4
    assert g.edges == ()


def test_edge_list_k33_is_bipartite():
    text = "\n".join(f"{a} {b}" for a in (0, 1, 2) for b in (3, 4, 5))
    g = parse_edge_list(text)
    assert g.vertex_count == 6 and len(g.edges) == 9
    # 2-color by BFS; every edge must cross the classes
    color = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in color:
                color[w] = 1 - color[v]
                queue.append(w)
    assert all(color[u] != color[v] for u, v in g.edges)


def test_edge_list_errors():
    with pytest.raises(GraphFormatError, match="loop"):
        parse_edge_list("1 1")
    with pytest.raises(GraphFormatError, match="non-integer"):
        parse_edge_list("0 x")
    with pytest.raises(GraphFormatError, match="negative"):
        parse_edge_list("0 -2")
    with pytest.raises(GraphFormatError, match="exceeds"):
        parse_edge_list("n = 2\n0 5")
    g = parse_edge_list("0 1\n1 0\n0 1")  # duplicates collapse
    assert g.edges == ((0, 1),)


# ---------------------------------------------------------------------------
# named generators & structural reports


EXPECTED = {
    # name: (n, m, girth)
    "k33": (6, 9, 4),
    "cube": (8, 12, 4),
    "petersen": (10, 15, 5),
    "heawood": (14, 21, 6),
    "pappus": (18, 27, 6),
    "desargues": (20, 30, 6),
    "moebius_kantor": (16, 24, 6),
    "bridged_gadget": (14, 21, 4),
}


@pytest.mark.parametrize("name", FULL_CORPUS)
def test_named_graphs_structure(name):
    g = generate_named(name)
    n, m, girth = EXPECTED[name]
    assert (g.vertex_count, len(g.edges)) == (n, m)
    rep = structural_report(g)
    assert rep.connected and rep.is_cubic and rep.regular_degree == 3
    assert rep.triangle_free
    assert rep.girth == girth
    expected_bridges = (((12, 13),) if name == "bridged_gadget" else ())
    assert rep.bridges == expected_bridges


def test_unknown_name():
    with pytest.raises(ValueError, match="unknown graph name"):
        generate_named("snark")
    assert "petersen" in NAMED_GRAPHS


@pytest.mark.parametrize("name", FULL_CORPUS)
def test_report_against_bruteforce_oracles(name):
    g = generate_named(name)
    rep = structural_report(g)
    assert rep.connected == bfs_connected_from_everywhere(g)
    assert list(rep.bridges) == bridges_by_removal(g)
    assert rep.girth == girth_by_vertex_bfs(g)


def test_report_edge_cases():
    empty = Graph(0, ())
    rep = structural_report(empty)
    assert not rep.connected and rep.girth is None and rep.triangle_free
    path2 = Graph.from_edges(2, [(0, 1)])
    rep = structural_report(path2)
    assert rep.bridges == ((0, 1),)
    assert rep.girth is None
    two_parts = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not structural_report(two_parts).connected


def test_structural_report_triangle():
    tri = parse_edge_list("0 1\n1 2\n2 0")
    rep = structural_report(tri)
    assert rep.girth == 3 and not rep.triangle_free


# ---------------------------------------------------------------------------
# DOT


def test_dot_k33_edge_statements():
    g = generate_named("k33")
    dot = to_dot(g)
    assert dot.count(" -- ") == 9
    assert dot.startswith("graph G {")


def test_dot_with_decorations():
    g = parse_edge_list("0 1\n1 2")
    colors = {(0, 1): "red", (1, 2): "blue"}
    dot = to_dot(g, edge_color=colors)
    assert dot.count("color=") == 2
    assert 'color="red"' in dot
