"""Alternative bottom-up construction: half-edge pairs and crossings.

Instead of iterating the line-graph operator, give every vertex of a cubic
graph three pairs of half-edges (each pair serving two of the vertex's three
incident edges, each incident edge served by two pairs) and wire a crossing
of four connection edges across every edge. Contracting each pair to a point
reproduces the reduced structure exactly: pairs become vertices, connections
become edges, crossings become the cliques. ``equivalence_check`` verifies
that identity via the provenance-canonical bijection rather than a generic
isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import Graph, structural_report
from .reduced import PreconditionError, ReducedStructure


@dataclass(frozen=True)
class Crossing:
    """Four connection edges wired across one graph edge (a K2,2 of pairs)."""

    edge_id: int
    #: global pair ids serving the edge at its smaller / larger endpoint
    pairs_u: tuple[int, int]
    pairs_v: tuple[int, int]
    #: the four connection edges, as sorted global-pair-id pairs
    connections: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class HalfEdgeStructure:
    graph: Graph
    #: global pair id -> (vertex, local pair index 0..2); id = 3*vertex + index
    pairs: tuple[tuple[int, int], ...]
    #: (vertex, incident edge id) -> the two global pair ids serving that edge
    pair_assignment: dict[tuple[int, int], tuple[int, int]]
    #: (global pair id, half slot 0|1) -> the edge id that half-edge attaches to
    half_edge_attachment: dict[tuple[int, int], int]
    crossings: tuple[Crossing, ...]
    #: placeholder for a per-vertex rotation sense (+1/-1). Carried as data
    #: only: nothing in this package interprets it, since the interaction
    #: between orientations and crossing labels is an open problem.
    vertex_orientations: Optional[tuple[int, ...]] = None


@dataclass(frozen=True, eq=False)
class EquivalenceReport:
    matches: bool
    detail: str
    #: global pair id -> reduced-structure vertex id
    vertex_map: dict[int, int]


def build_half_edge(g: Graph) -> HalfEdgeStructure:
    """Canonical pair assignment for a connected triangle-free cubic graph.

    At each vertex the incident edges are taken in sorted order; local pair p
    serves local edges p and (p+2) mod 3, so local edge j is served by pairs
    j and (j+1) mod 3.
    """
    report = structural_report(g)
    for predicate, ok in (
        ("connected", report.connected),
        ("cubic", report.is_cubic),
        ("triangle_free", report.triangle_free),
    ):
        if not ok:
            raise PreconditionError(f"input graph is not {predicate}")

    incident: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for idx, (u, v) in enumerate(g.edges):
        incident[u].append(idx)
        incident[v].append(idx)
    local_index = {}
    for v in range(g.vertex_count):
        incident[v].sort()
        for j, e in enumerate(incident[v]):
            local_index[(v, e)] = j

    pairs = tuple((v, p) for v in range(g.vertex_count) for p in range(3))
    pair_assignment = {}
    half_edge_attachment = {}
    for v in range(g.vertex_count):
        for j, e in enumerate(incident[v]):
            pair_assignment[(v, e)] = (3 * v + j, 3 * v + (j + 1) % 3)
        for p in range(3):
            half_edge_attachment[(3 * v + p, 0)] = incident[v][p]
            half_edge_attachment[(3 * v + p, 1)] = incident[v][(p + 2) % 3]

    crossings = []
    for e, (u, v) in enumerate(g.edges):
        pu = pair_assignment[(u, e)]
        pv = pair_assignment[(v, e)]
        connections = tuple(
            (min(a, b), max(a, b)) for a in pu for b in pv
        )
        crossings.append(
            Crossing(edge_id=e, pairs_u=pu, pairs_v=pv, connections=connections)
        )
    return HalfEdgeStructure(
        graph=g,
        pairs=pairs,
        pair_assignment=pair_assignment,
        half_edge_attachment=half_edge_attachment,
        crossings=tuple(crossings),
    )


def contract_pairs(hes: HalfEdgeStructure) -> tuple[Graph, list[tuple[int, tuple[int, int, int, int]]]]:
    """Contract each half-edge pair to a vertex.

    Returns the contracted graph plus a clique table of (edge id, 4-cycle in
    canonical cyclic order alternating u-side / v-side pairs).
    """
    n_pairs = len(hes.pairs)
    edges = []
    table = []
    for cr in hes.crossings:
        edges.extend(cr.connections)
        pu = sorted(cr.pairs_u)
        pv = sorted(cr.pairs_v)
        table.append((cr.edge_id, (pu[0], pv[0], pu[1], pv[1])))
    return Graph.from_edges(n_pairs, edges), table


def equivalence_check(hes: HalfEdgeStructure, rs: ReducedStructure) -> EquivalenceReport:
    """Check that contraction reproduces the reduced structure exactly.

    The bijection is forced by provenance: the pair at v serving edges
    {e, f} corresponds to the reduced vertex standing for the line-graph
    edge {e, f}. With that map fixed, graph equality and clique-table
    equality are checked directly.
    """
    if hes.graph != rs.graph:
        return EquivalenceReport(False, "structures built from different graphs", {})
    by_edge_pair = {frozenset(p): x for x, p in enumerate(rs.provenance)}
    vertex_map: dict[int, int] = {}
    for pid, (v, p) in enumerate(hes.pairs):
        served = frozenset(
            (hes.half_edge_attachment[(pid, 0)], hes.half_edge_attachment[(pid, 1)])
        )
        if served not in by_edge_pair:
            return EquivalenceReport(
                False, f"pair {pid} serves {sorted(served)}, not a line-graph edge", vertex_map
            )
        vertex_map[pid] = by_edge_pair[served]
    if len(set(vertex_map.values())) != rs.l2.vertex_count:
        return EquivalenceReport(False, "pair-to-vertex map is not a bijection", vertex_map)

    contracted, table = contract_pairs(hes)
    mapped_edges = sorted(
        (min(vertex_map[a], vertex_map[b]), max(vertex_map[a], vertex_map[b]))
        for a, b in contracted.edges
    )
    if len(set(mapped_edges)) != len(mapped_edges):
        return EquivalenceReport(False, "contraction produced parallel edges", vertex_map)
    if tuple(mapped_edges) != rs.l2.edges:
        diff = set(mapped_edges) ^ set(rs.l2.edges)
        return EquivalenceReport(
            False, f"edge sets differ in {len(diff)} places, e.g. {sorted(diff)[:3]}", vertex_map
        )

    for edge_id, cycle4 in table:
        cl = rs.cliques[edge_id]
        mapped = [vertex_map[p] for p in cycle4]
        if set(mapped) != set(cl.cycle4):
            return EquivalenceReport(
                False, f"crossing {edge_id} vertices {sorted(mapped)} != clique {sorted(cl.cycle4)}",
                vertex_map,
            )
        ring = {
            (min(a, b), max(a, b))
            for a, b in zip(mapped, mapped[1:] + mapped[:1])
        }
        expected = {
            (min(a, b), max(a, b))
            for a, b in zip(cl.cycle4, cl.cycle4[1:] + cl.cycle4[:1])
        }
        if ring != expected:
            return EquivalenceReport(
                False, f"crossing {edge_id} wiring differs from clique {edge_id}", vertex_map
            )
        if {vertex_map[p] for p in next(c.pairs_u for c in hes.crossings if c.edge_id == edge_id)} != set(cl.side_u):
            return EquivalenceReport(
                False, f"crossing {edge_id} u-side pairs do not map to the clique's u side",
                vertex_map,
            )
    return EquivalenceReport(True, "contracted structure matches", vertex_map)
