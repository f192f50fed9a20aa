"""Cycle double covers of cubic graphs via labeled reduced line-graph squares.

The pipeline: take a connected triangle-free cubic graph, build the line
graph of its line graph, strip the triangles inherited from line-graph stars
(leaving a 4-regular graph partitioned into 4-cycles, one per edge), search
the binary per-clique labelings for one whose open edges form cycles with no
self-intersections, and project those cycles back down to closed walks that
cover every edge exactly twice. An independent verifier checks the result.
"""

from .graphs import (
    Graph,
    GraphFormatError,
    NAMED_GRAPHS,
    StructuralReport,
    generate_named,
    parse_edge_list,
    parse_graph6,
    structural_report,
    to_dot,
    to_graph6,
)
from .linegraph import (
    LineGraphResult,
    TriangleClassification,
    classify_triangles,
    iterated_line_graph,
    line_graph,
)
from .reduced import (
    AuditReport,
    ConsistencyError,
    PreconditionError,
    ReducedClique,
    ReducedStructure,
    audit_reduced,
    build_reduced,
)
from .labeling import (
    TYPE_A,
    TYPE_B,
    CliqueRoles,
    CycleAdjacencyGraph,
    CycleSet,
    Joining,
    Labeling,
    SelfIntersection,
    classify_cliques,
    count_intersections,
    cycle_adjacency,
    extract_cycles,
    initial_labeling,
    invert,
)
from .dynamics import (
    BUDGET_EXHAUSTED,
    SOLVED,
    AnnealingConfig,
    CenteredVertexCut,
    CutVertexError,
    SearchConfig,
    SearchOutcome,
    anneal,
    centered_vertex_cut,
    enumerate_labelings,
    join_cycles,
    reduce_type_b,
    resolve_type_a,
    search_cdc_labeling,
)
from .projection import (
    CdcCertificate,
    EdgeColoring,
    WalkCover,
    check_valid_edge_labeling,
    pipeline,
    project_chi,
    project_pi,
    verify_cdc,
)
from .halfedge import HalfEdgeStructure, build_half_edge, contract_pairs, equivalence_check

__version__ = "0.1.0"
