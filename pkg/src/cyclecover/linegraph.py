"""Line-graph operator with provenance back to the source graph.

The line graph has one vertex per source edge and one edge per pair of
source edges that share exactly one endpoint. Provenance (which source edge
a vertex came from, which source vertex an adjacency came from) is kept so
that structures built on iterated line graphs can be projected back down.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph


@dataclass(frozen=True, eq=False)
class LineGraphResult:
    lg: Graph
    #: lg-vertex id -> the source edge it stands for (canonical edge order)
    vertex_origin: tuple[tuple[int, int], ...]
    #: lg-edge (a, b) -> the source vertex shared by the two source edges
    edge_origin: dict[tuple[int, int], int]


@dataclass(frozen=True, eq=False)
class TriangleClassification:
    """Triangles of a line graph, split by how they arise in the source.

    ``vertex_induced`` triangles are stars: three source edges meeting at one
    source vertex. ``edge_induced`` triangles are images of source triangles.
    In a simple graph every line-graph triangle is exactly one of the two.
    """

    #: (source vertex, triangle as sorted lg-vertex triple)
    vertex_induced: tuple[tuple[int, tuple[int, int, int]], ...]
    #: (source triangle as sorted vertex triple, lg triangle)
    edge_induced: tuple[tuple[tuple[int, int, int], tuple[int, int, int]], ...]


def line_graph(g: Graph) -> LineGraphResult:
    """Build the line graph; vertices enumerate ``g.edges`` in canonical order."""
    incident: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for idx, (u, v) in enumerate(g.edges):
        incident[u].append(idx)
        incident[v].append(idx)
    edges = []
    origin: dict[tuple[int, int], int] = {}
    for w in range(g.vertex_count):
        for a, b in combinations(incident[w], 2):
            edges.append((a, b))
            origin[(a, b)] = w
    lg = Graph.from_edges(len(g.edges), edges)
    return LineGraphResult(lg=lg, vertex_origin=g.edges, edge_origin=origin)


def enumerate_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles as sorted vertex triples (adjacency intersection per edge)."""
    adj = [set(ns) for ns in g.adjacency]
    triangles = []
    for a, b in g.edges:
        for c in adj[a] & adj[b]:
            if c > b:
                triangles.append((a, b, c))
    return sorted(triangles)


def classify_triangles(lgr: LineGraphResult, source: Graph) -> TriangleClassification:
    """Tag each triangle of ``lgr.lg`` as a source star or a source triangle."""
    vertex_induced = []
    edge_induced = []
    for tri in enumerate_triangles(lgr.lg):
        ea, eb, ec = (set(lgr.vertex_origin[x]) for x in tri)
        common = ea & eb & ec
        if len(common) == 1:
            vertex_induced.append((common.pop(), tri))
            continue
        endpoints = ea | eb | ec
        pairwise_adjacent = ea & eb and ea & ec and eb & ec
        if len(endpoints) == 3 and pairwise_adjacent:
            edge_induced.append((tuple(sorted(endpoints)), tri))
            continue
        raise AssertionError(f"triangle {tri} matches neither star nor source-triangle pattern")
    return TriangleClassification(
        vertex_induced=tuple(vertex_induced), edge_induced=tuple(edge_induced)
    )


def iterated_line_graph(g: Graph, k: int, max_vertices: int = 100_000) -> list[LineGraphResult]:
    """Apply the line-graph operator ``k`` times, keeping every stage."""
    if k < 1:
        raise ValueError("k must be >= 1")
    results = []
    current = g
    for _ in range(k):
        if len(current.edges) > max_vertices:
            raise ValueError(
                f"iterated line graph would have {len(current.edges)} vertices "
                f"(budget {max_vertices})"
            )
        res = line_graph(current)
        results.append(res)
        current = res.lg
    return results
