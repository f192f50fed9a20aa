"""The doubled line graph with its per-edge 4-cliques reduced to 4-cycles.

Starting from a connected triangle-free cubic graph G, the line graph of the
line graph decomposes into K4 cliques, one per edge of G. Deleting the
triangles that are images of line-graph stars removes exactly the two
"same-side" chords of each K4, leaving a 4-cycle per clique. The result is a
4-regular connected graph whose edge set is partitioned by those 4-cycles,
with full provenance back to the edges of G.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .graphs import Graph, structural_report, to_dot, to_graph6
from .linegraph import LineGraphResult, classify_triangles, enumerate_triangles, line_graph


class PreconditionError(ValueError):
    """Input graph fails a required structural predicate."""


class ConsistencyError(RuntimeError):
    """The construction violated one of its own invariants."""


@dataclass(frozen=True)
class ReducedClique:
    """The 4-cycle left of one K4, tied to the source edge that spawned it.

    ``cycle4`` lists the four vertices in canonical cyclic order, alternating
    between the two endpoints of ``source_edge``: (u-side low, v-side low,
    u-side high, v-side high). The two edge classes that a labeling chooses
    between are the opposite pairs of this cycle: class 0 is
    {(cycle4[0], cycle4[1]), (cycle4[2], cycle4[3])}, class 1 the complement.
    """

    id: int
    source_edge: tuple[int, int]
    cycle4: tuple[int, int, int, int]
    side_u: tuple[int, int]
    side_v: tuple[int, int]
    removed_pair: tuple[tuple[int, int], tuple[int, int]]

    def open_edges(self, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """The two (vertex-disjoint) edges opened by choosing ``bit``."""
        a, b, c, d = self.cycle4
        if bit:
            return (b, c), (d, a)
        return (a, b), (c, d)


@dataclass(frozen=True, eq=False)
class AuditCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True, eq=False)
class AuditReport:
    checks: tuple[AuditCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[AuditCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


@dataclass(frozen=True, eq=False)
class ReducedStructure:
    """4-regular reduced graph, its clique partition, and provenance maps."""

    graph: Graph
    lg: LineGraphResult
    l2: Graph
    cliques: tuple[ReducedClique, ...]
    #: l2-vertex -> the two clique ids it belongs to (sorted)
    vertex_cliques: tuple[tuple[int, int], ...]
    #: deleted triangles, as sorted l2-vertex triples
    removed_triangles: tuple[tuple[int, int, int], ...]
    #: l2-vertex -> the line-graph edge it stands for, i.e. a pair of
    #: G-edge ids (clique ids double as G-edge ids)
    provenance: tuple[tuple[int, int], ...]

    @property
    def clique_count(self) -> int:
        return len(self.cliques)

    @cached_property
    def kernel_tables(self):
        """Flat arrays consumed by the labeling kernels (see ``kernels``)."""
        import numpy as np

        c_count = len(self.cliques)
        v_count = self.l2.vertex_count
        cv = np.empty((c_count, 4), dtype=np.int32)
        for cl in self.cliques:
            cv[cl.id] = cl.cycle4
        vc = np.array(self.vertex_cliques, dtype=np.int32).reshape(v_count, 2)
        vp = np.empty((v_count, 2), dtype=np.int32)
        for v in range(v_count):
            for slot in (0, 1):
                vp[v, slot] = self.cliques[vc[v, slot]].cycle4.index(v)
        cv.setflags(write=False)
        vc.setflags(write=False)
        vp.setflags(write=False)
        return cv, vc, vp


def build_reduced(g: Graph, check: bool = True) -> ReducedStructure:
    """Construct the reduced structure for a connected triangle-free cubic graph.

    Bridged inputs are accepted: a bridge only rules out intersection-free
    labelings later, not the construction itself. With ``check`` the full
    audit runs eagerly and raises ``ConsistencyError`` on any failure.
    """
    report = structural_report(g)
    for predicate, ok in (
        ("connected", report.connected),
        ("cubic", report.is_cubic),
        ("triangle_free", report.triangle_free),
    ):
        if not ok:
            raise PreconditionError(f"input graph is not {predicate}")

    lgr = line_graph(g)
    lgr2 = line_graph(lgr.lg)
    llg = lgr2.lg
    lg_edge_index = lgr.lg.edge_index

    # Star triangles of L(G) (one per vertex of G); their images in L(L(G))
    # are the triangles to delete.
    tc = classify_triangles(lgr, g)
    if tc.edge_induced:
        raise ConsistencyError("triangle-free source produced edge-induced triangles")
    removed_edges: set[tuple[int, int]] = set()
    removed_triangles = []
    for _, (q1, q2, q3) in tc.vertex_induced:
        tri_vertices = sorted(
            (lg_edge_index[(q1, q2)], lg_edge_index[(q1, q3)], lg_edge_index[(q2, q3)])
        )
        removed_triangles.append(tuple(tri_vertices))
        a, b, c = tri_vertices
        for e in ((a, b), (a, c), (b, c)):
            if e in removed_edges:
                raise ConsistencyError(f"edge {e} deleted by two triangles")
            removed_edges.add(e)
    for e in removed_edges:
        if e not in llg.edge_index:
            raise ConsistencyError(f"triangle edge {e} missing from the doubled line graph")
    l2 = Graph(llg.vertex_count, tuple(e for e in llg.edges if e not in removed_edges))

    # One clique per G-edge: the l2-vertices are the line-graph edges at that
    # G-edge's line-graph vertex, split by which endpoint of the G-edge the
    # neighboring edge hangs off.
    members: list[list[int]] = [[] for _ in range(len(g.edges))]
    for x, (qa, qb) in enumerate(lgr2.vertex_origin):
        members[qa].append(x)
        members[qb].append(x)
    cliques = []
    for q, (u, v) in enumerate(g.edges):
        side_u, side_v = [], []
        for x in members[q]:
            qa, qb = lgr2.vertex_origin[x]
            other = qb if qa == q else qa
            shared = set(g.edges[q]) & set(g.edges[other])
            if len(shared) != 1:
                raise ConsistencyError(f"edges {q} and {other} share {len(shared)} endpoints")
            (side_u if shared.pop() == u else side_v).append(x)
        if len(side_u) != 2 or len(side_v) != 2:
            raise ConsistencyError(f"clique {q}: side split {len(side_u)}+{len(side_v)} != 2+2")
        side_u.sort()
        side_v.sort()
        cycle4 = (side_u[0], side_v[0], side_u[1], side_v[1])
        cliques.append(
            ReducedClique(
                id=q,
                source_edge=(u, v),
                cycle4=cycle4,
                side_u=tuple(side_u),
                side_v=tuple(side_v),
                removed_pair=(tuple(side_u), tuple(side_v)),
            )
        )

    vertex_cliques = tuple(
        (min(qa, qb), max(qa, qb)) for qa, qb in lgr2.vertex_origin
    )

    rs = ReducedStructure(
        graph=g,
        lg=lgr,
        l2=l2,
        cliques=tuple(cliques),
        vertex_cliques=vertex_cliques,
        removed_triangles=tuple(sorted(removed_triangles)),
        provenance=lgr2.vertex_origin,
    )
    if check:
        audit = audit_reduced(rs)
        if not audit.passed:
            names = ", ".join(c.name for c in audit.failures)
            raise ConsistencyError(f"construction audit failed: {names}")
    return rs


def audit_reduced(rs: ReducedStructure) -> AuditReport:
    """Re-verify every structural invariant from scratch."""
    checks: list[AuditCheck] = []
    g, l2 = rs.graph, rs.l2
    m = len(g.edges)

    def add(name: str, passed: bool, detail: str = ""):
        checks.append(AuditCheck(name, passed, detail))

    add("vertex_count", l2.vertex_count == 2 * m, f"{l2.vertex_count} vs 2m={2 * m}")
    add("edge_count", len(l2.edges) == 4 * m, f"{len(l2.edges)} vs 4m={4 * m}")
    degrees = {l2.degree(v) for v in range(l2.vertex_count)}
    add("four_regular", degrees == {4}, f"degrees {sorted(degrees)}")
    rep = structural_report(l2)
    add("connected", rep.connected)
    add("triangle_free", not enumerate_triangles(l2))

    ok_c4 = True
    detail = ""
    for cl in rs.cliques:
        a, b, c, d = cl.cycle4
        ring = [(a, b), (b, c), (c, d), (d, a)]
        if not all(l2.has_edge(*e) for e in ring):
            ok_c4, detail = False, f"clique {cl.id} missing ring edge"
            break
        if l2.has_edge(a, c) or l2.has_edge(b, d):
            ok_c4, detail = False, f"clique {cl.id} has a diagonal"
            break
        if {a, c} != set(cl.side_u) or {b, d} != set(cl.side_v):
            ok_c4, detail = False, f"clique {cl.id} sides do not alternate"
            break
    add("cliques_are_c4", ok_c4, detail)

    clique_edge_union: dict[tuple[int, int], int] = {}
    disjoint = True
    for cl in rs.cliques:
        a, b, c, d = cl.cycle4
        for e in ((a, b), (b, c), (c, d), (d, a)):
            key = (min(e), max(e))
            if key in clique_edge_union:
                disjoint = False
            clique_edge_union[key] = cl.id
    add("clique_edges_disjoint", disjoint)
    add(
        "clique_edges_cover",
        set(clique_edge_union) == set(l2.edges),
        f"{len(clique_edge_union)} clique edges vs {len(l2.edges)}",
    )

    seen_in: list[list[int]] = [[] for _ in range(l2.vertex_count)]
    for cl in rs.cliques:
        for x in cl.cycle4:
            seen_in[x].append(cl.id)
    add(
        "two_cliques_per_vertex",
        all(len(ids) == 2 for ids in seen_in)
        and all(tuple(sorted(seen_in[x])) == rs.vertex_cliques[x] for x in range(l2.vertex_count)),
    )

    share_ok = True
    vertex_sets = [set(cl.cycle4) for cl in rs.cliques]
    for i in range(len(rs.cliques)):
        for j in range(i + 1, len(rs.cliques)):
            if len(vertex_sets[i] & vertex_sets[j]) > 1:
                share_ok = False
    add("pairwise_share_at_most_one_vertex", share_ok)

    pairings_ok = all(
        not set(cl.open_edges(0)[0]) & set(cl.open_edges(0)[1])
        and not set(cl.open_edges(1)[0]) & set(cl.open_edges(1)[1])
        for cl in rs.cliques
    )
    add("open_pairings_vertex_disjoint", pairings_ok)

    n = g.vertex_count
    llg_edges = len(line_graph(rs.lg.lg).lg.edges)
    add(
        "removed_edge_accounting",
        llg_edges - len(l2.edges) == 3 * n and len(rs.removed_triangles) == n,
        f"{llg_edges} - {len(l2.edges)} vs 3n={3 * n}",
    )
    return AuditReport(tuple(checks))


# ---------------------------------------------------------------------------
# export


def reduced_to_json(rs: ReducedStructure) -> str:
    doc = {
        "graph6": to_graph6(rs.graph),
        "vertex_count": rs.l2.vertex_count,
        "edges": [list(e) for e in rs.l2.edges],
        "cliques": [
            {
                "id": cl.id,
                "source_edge": list(cl.source_edge),
                "cycle4": list(cl.cycle4),
                "side_u": list(cl.side_u),
                "side_v": list(cl.side_v),
                "removed_pair": [list(p) for p in cl.removed_pair],
            }
            for cl in rs.cliques
        ],
        "vertex_cliques": [list(p) for p in rs.vertex_cliques],
        "provenance": [list(p) for p in rs.provenance],
        "removed_triangles": [list(t) for t in rs.removed_triangles],
    }
    return json.dumps(doc, indent=2)


_PALETTE = (
    "red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta",
    "gold", "darkgreen", "navy", "salmon", "turquoise", "olive", "gray",
)


def reduced_to_dot(rs: ReducedStructure) -> str:
    """DOT export of the reduced graph with one color per clique."""
    colors = {}
    labels = {}
    for cl in rs.cliques:
        a, b, c, d = cl.cycle4
        for e in ((a, b), (b, c), (c, d), (d, a)):
            key = (min(e), max(e))
            colors[key] = _PALETTE[cl.id % len(_PALETTE)]
            labels[key] = str(cl.id)
    return to_dot(rs.l2, name="reduced", edge_color=colors, edge_label=labels)
