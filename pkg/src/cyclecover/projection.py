"""Projection of reduced-structure cycles down to the base graph, plus an
independent cycle-double-cover verifier.

Each cycle upstairs visits a sequence of cliques; every clique visit stands
for one traversal of its source edge, and side alternation within the clique
guarantees consecutive source edges are chained through their shared vertex.
This threads every cycle directly into a closed walk in G. Summed over all
walks, every edge of G is traversed exactly twice, for every valid labeling;
with no self-intersections the walks are edge-simple and every edge ends up
on two distinct cycles, i.e. the cover is a cycle double cover.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .graphs import Graph, structural_report, to_graph6
from .labeling import CycleSet, extract_cycles
from .linegraph import TriangleClassification
from .reduced import PreconditionError, ReducedStructure


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """Line-graph edges colored by the id of the covering cycle upstairs."""

    lg: Graph
    color: dict[tuple[int, int], int]


@dataclass(frozen=True, eq=False)
class WalkCover:
    """Closed walks in G; each walk is a cyclic vertex sequence."""

    graph: Graph
    walks: tuple[tuple[int, ...], ...]
    edge_multisets: tuple[Counter, ...]

    def total_edge_counts(self) -> Counter:
        total: Counter = Counter()
        for em in self.edge_multisets:
            total.update(em)
        return total


@dataclass(frozen=True, eq=False)
class CdcCertificate:
    graph: Graph
    cycles: tuple[tuple[int, ...], ...]
    valid_cdc: bool
    violations: tuple[str, ...]
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "graph6": to_graph6(self.graph),
            "cycles": [list(w) for w in self.cycles],
            "verdict": "valid_cdc" if self.valid_cdc else "invalid",
            "violations": list(self.violations),
            "labeling_bits_hex": self.metadata.get("labeling_bits_hex"),
            "seed": self.metadata.get("seed"),
            "stats": self.metadata.get("stats", {}),
        }
        return json.dumps(doc, indent=2)


# ---------------------------------------------------------------------------
# projections


def project_chi(cs: CycleSet, rs: ReducedStructure) -> EdgeColoring:
    """Color every line-graph edge by the cycle covering its stand-in vertex."""
    color = {}
    for x, (qa, qb) in enumerate(rs.provenance):
        color[(min(qa, qb), max(qa, qb))] = cs.vertex_cycle[x]
    return EdgeColoring(lg=rs.lg.lg, color=color)


@dataclass(frozen=True, eq=False)
class EdgeLabelingReport:
    """Triangle conditions on a projected coloring.

    ``violations`` is the validity criterion: at a star triangle corner whose
    two triangle edges share a color, the corner's two non-triangle edges
    must carry that same color. It holds for every projected coloring (two
    same-colored triangle edges at a corner force the corner's clique to
    self-intersect that cycle, which drags the other two edges along).

    ``monochromatic_triangles`` lists star triangles whose three sides all
    share one color. That CAN happen for general labelings; it cannot once
    the labeling is free of self-intersections, which is the regime the
    double-cover projection runs in.
    """

    violations: tuple[str, ...]
    monochromatic_triangles: tuple[tuple[int, int, int], ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def check_valid_edge_labeling(ec: EdgeColoring, tc: TriangleClassification) -> EdgeLabelingReport:
    """Check the triangle pairing condition on a projected coloring."""
    violations = []
    monochromatic = []
    lg = ec.lg
    for _, tri in tc.vertex_induced:
        tri_set = set(tri)
        side_colors = {
            ec.color[(min(a, b), max(a, b))] for a in tri for b in tri if a < b
        }
        if len(side_colors) == 1:
            monochromatic.append(tri)
        for corner in tri:
            others = sorted(tri_set - {corner})
            e1 = (min(corner, others[0]), max(corner, others[0]))
            e2 = (min(corner, others[1]), max(corner, others[1]))
            if ec.color[e1] != ec.color[e2]:
                continue
            outside = [
                (min(corner, w), max(corner, w))
                for w in lg.adjacency[corner]
                if w not in tri_set
            ]
            bad = [e for e in outside if ec.color[e] != ec.color[e1]]
            if bad:
                violations.append(
                    f"corner {corner} of triangle {tri}: triangle edges share color "
                    f"{ec.color[e1]} but outside edges {bad} do not"
                )
    return EdgeLabelingReport(
        violations=tuple(violations),
        monochromatic_triangles=tuple(monochromatic),
    )


def project_pi(cs: CycleSet, rs: ReducedStructure) -> WalkCover:
    """Thread every cycle into a closed walk in G through clique provenance."""
    edge_of_pair: dict[tuple[int, int], int] = {}
    for cl in rs.cliques:
        for bit in (0, 1):
            for e in cl.open_edges(bit):
                edge_of_pair[(min(e), max(e))] = cl.id
    g = rs.graph
    walks = []
    multisets = []
    for cyc in cs.cycles:
        length = len(cyc)
        clique_seq = []
        for i in range(length):
            x, y = cyc[i], cyc[(i + 1) % length]
            clique_seq.append(edge_of_pair[(min(x, y), max(x, y))])
        verts = []
        for i in range(length):
            prev_edge = g.edges[clique_seq[i - 1]]
            cur_edge = g.edges[clique_seq[i]]
            shared = set(prev_edge) & set(cur_edge)
            if len(shared) != 1:
                raise RuntimeError(
                    f"provenance mismatch: edges {prev_edge} and {cur_edge} share {shared}"
                )
            verts.append(shared.pop())
        walk = _canonical_walk(tuple(verts))
        walks.append(walk)
        em = Counter()
        for i in range(len(walk)):
            u, v = walk[i], walk[(i + 1) % len(walk)]
            em[(min(u, v), max(u, v))] += 1
        multisets.append(em)
    return WalkCover(graph=g, walks=tuple(walks), edge_multisets=tuple(multisets))


def _canonical_walk(verts: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically smallest rotation/reflection of a cyclic sequence."""
    n = len(verts)
    best = None
    doubled = verts + verts
    rev = verts[::-1]
    rev_doubled = rev + rev
    for i in range(n):
        for cand_src in (doubled, rev_doubled):
            cand = cand_src[i : i + n]
            if best is None or cand < best:
                best = cand
    return best


# ---------------------------------------------------------------------------
# verifier (independent of the reduced structure)


def verify_cdc(g: Graph, wc: WalkCover) -> CdcCertificate:
    """Check a candidate cover using only the graph and the walks.

    Valid iff every walk is a closed walk along edges of g, no walk repeats
    an edge, and every edge of g lies on exactly two distinct walks. Vertex
    revisits are reported as informational only: a cycle here means an
    edge-simple closed walk.
    """
    violations = []
    walk_edge_sets = []
    vertex_revisits = 0
    for wi, walk in enumerate(wc.walks):
        if len(walk) < 3:
            violations.append(f"walk {wi} has length {len(walk)} < 3")
            walk_edge_sets.append(Counter())
            continue
        em: Counter = Counter()
        ok = True
        for i in range(len(walk)):
            u, v = walk[i], walk[(i + 1) % len(walk)]
            if u == v or not g.has_edge(u, v):
                violations.append(f"walk {wi} step {i}: ({u}, {v}) is not an edge")
                ok = False
                break
            em[(min(u, v), max(u, v))] += 1
        walk_edge_sets.append(em if ok else Counter())
        if not ok:
            continue
        repeats = sorted(e for e, k in em.items() if k > 1)
        if repeats:
            violations.append(f"walk {wi} repeats edges {repeats}")
        if len(set(walk)) != len(walk):
            vertex_revisits += 1
    coverage: Counter = Counter()
    carriers: dict[tuple[int, int], set[int]] = {}
    for wi, em in enumerate(walk_edge_sets):
        for e, k in em.items():
            coverage[e] += k
            carriers.setdefault(e, set()).add(wi)
    for e in g.edges:
        k = coverage.get(e, 0)
        if k != 2:
            violations.append(f"edge {e} covered {k} times, expected 2")
        elif len(carriers.get(e, ())) != 2:
            violations.append(f"edge {e} covered twice by the same walk")
    for e in coverage:
        if e not in g.edge_index:
            violations.append(f"walks cover non-edge {e}")
    return CdcCertificate(
        graph=g,
        cycles=wc.walks,
        valid_cdc=not violations,
        violations=tuple(violations),
        metadata={
            "stats": {
                "walks": len(wc.walks),
                "vertex_revisiting_walks": vertex_revisits,
            }
        },
    )


# ---------------------------------------------------------------------------
# end-to-end pipeline


def pipeline(g: Graph, cfg=None, threads: int = 1) -> CdcCertificate:
    """Full run: validate input, build, search a labeling, project, verify.

    Bridged inputs are allowed through so the failure mode is demonstrated;
    the resulting certificate is invalid and cites the bridge. The search
    outcome (with its trace) rides along in ``metadata["outcome"]``.
    """
    from .dynamics import SearchConfig, search_cdc_labeling

    cfg = cfg or SearchConfig()
    report = structural_report(g)
    for predicate, ok in (
        ("connected", report.connected),
        ("cubic", report.is_cubic),
        ("triangle_free", report.triangle_free),
    ):
        if not ok:
            raise PreconditionError(f"input graph is not {predicate}")

    from .reduced import build_reduced

    rs = build_reduced(g)
    outcome = search_cdc_labeling(rs, cfg, threads=threads)
    stats = {
        "status": outcome.status,
        "flips_applied": outcome.flips_applied,
        "restarts": outcome.restarts,
        "bridges": [list(e) for e in report.bridges],
    }
    if outcome.status != "solved":
        notes = [f"search exhausted its budget ({outcome.status})"]
        if report.bridges:
            notes.append(
                f"graph has bridge(s) {[tuple(e) for e in report.bridges]}: every labeling "
                "carries an irreducible type A self-intersection, so no cover exists"
            )
        return CdcCertificate(
            graph=g,
            cycles=(),
            valid_cdc=False,
            violations=tuple(notes),
            metadata={
                "labeling_bits_hex": outcome.labeling.bits_hex(),
                "seed": cfg.seed,
                "stats": stats,
                "outcome": outcome,
            },
        )
    cs = extract_cycles(outcome.labeling)
    wc = project_pi(cs, rs)
    cert = verify_cdc(g, wc)
    cert.metadata["labeling_bits_hex"] = outcome.labeling.bits_hex()
    cert.metadata["seed"] = cfg.seed
    cert.metadata.setdefault("stats", {}).update(stats)
    cert.metadata["outcome"] = outcome
    return cert
