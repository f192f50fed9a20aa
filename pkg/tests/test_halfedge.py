"""half-edge construction and its equivalence with the reduced structure."""

import dataclasses

import pytest

from cyclecover.graphs import Graph, generate_named
from cyclecover.halfedge import build_half_edge, contract_pairs, equivalence_check
from cyclecover.reduced import PreconditionError

from conftest import FULL_CORPUS


def test_k33_counts():
    hes = build_half_edge(generate_named("k33"))
    assert len(hes.pairs) == 18  # 6 vertices x 3 pairs
    assert len(hes.crossings) == 9
    assert sum(len(c.connections) for c in hes.crossings) == 36


def test_petersen_counts():
    hes = build_half_edge(generate_named("petersen"))
    assert len(hes.pairs) == 30
    assert sum(len(c.connections) for c in hes.crossings) == 60


def test_rejects_triangles():
    k4 = Graph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    with pytest.raises(PreconditionError):
        build_half_edge(k4)


def test_pair_assignment_shape():
    g = generate_named("cube")
    hes = build_half_edge(g)
    # every pair serves exactly two of its vertex's edges, every edge is
    # served by exactly two pairs at each endpoint
    served_by_pair = {}
    for (v, e), pair_ids in hes.pair_assignment.items():
        assert len(pair_ids) == 2
        for p in pair_ids:
            served_by_pair.setdefault(p, set()).add(e)
    assert all(len(es) == 2 for es in served_by_pair.values())
    for pid, (v, p) in enumerate(hes.pairs):
        attached = {hes.half_edge_attachment[(pid, 0)], hes.half_edge_attachment[(pid, 1)]}
        assert attached == served_by_pair[pid]
        assert all(v in g.edges[e] for e in attached)


def test_contraction_is_four_regular():
    g = generate_named("k33")
    contracted, table = contract_pairs(build_half_edge(g))
    assert contracted.vertex_count == 18
    assert all(contracted.degree(v) == 4 for v in range(18))
    assert len(table) == 9
    for _, cycle4 in table:
        a, b, c, d = cycle4
        for x, y in ((a, b), (b, c), (c, d), (d, a)):
            assert contracted.has_edge(x, y)
        assert not contracted.has_edge(a, c)
        assert not contracted.has_edge(b, d)


@pytest.mark.parametrize("name", FULL_CORPUS)
def test_equivalence_on_corpus(name, corpus_structures):
    g = generate_named(name)
    hes = build_half_edge(g)
    report = equivalence_check(hes, corpus_structures[name])
    assert report.matches, report.detail
    assert len(report.vertex_map) == corpus_structures[name].l2.vertex_count


def test_miswired_crossing_is_detected(corpus_structures):
    g = generate_named("k33")
    hes = build_half_edge(g)
    # swap one crossing's u-side pairs with the pairs of a different edge:
    # contraction no longer matches the reduced structure
    bad_cross = dataclasses.replace(
        hes.crossings[0],
        pairs_u=hes.crossings[1].pairs_u,
        connections=tuple(
            (min(a, b), max(a, b))
            for a in hes.crossings[1].pairs_u
            for b in hes.crossings[0].pairs_v
        ),
    )
    tampered = dataclasses.replace(
        hes, crossings=(bad_cross,) + hes.crossings[1:]
    )
    report = equivalence_check(tampered, corpus_structures["k33"])
    assert not report.matches


def test_wrong_graph_is_detected(corpus_structures):
    hes = build_half_edge(generate_named("cube"))
    report = equivalence_check(hes, corpus_structures["k33"])
    assert not report.matches
    assert "different graphs" in report.detail
