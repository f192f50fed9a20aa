"""Simple undirected graphs: I/O, named generators and structural predicates.

Vertices are dense integers ``0..n-1`` and edges are canonically ordered
``(min, max)`` tuples, so two graphs compare equal iff they are structurally
identical.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence


class GraphFormatError(ValueError):
    """Malformed graph input. ``offset`` is the byte position, if known."""

    def __init__(self, message: str, offset: Optional[int] = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop edge ({u}, {v}) not allowed")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.vertex_count}")
            if u > v:
                raise ValueError(f"edge ({u}, {v}) not canonically ordered")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges not sorted canonically")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph, normalizing edge order and dropping duplicates."""
        canon = {(min(u, v), max(u, v)) for u, v in edges}
        return cls(vertex_count, tuple(sorted(canon)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        """Canonical edge -> position in ``edges``."""
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index


@dataclass(frozen=True)
class StructuralReport:
    """Summary of the predicates the cover pipeline cares about."""

    connected: bool
    regular_degree: Optional[int]
    is_cubic: bool
    triangle_free: bool
    bridges: tuple[tuple[int, int], ...]
    girth: Optional[int]

    def as_dict(self) -> dict:
        return {
            "connected": self.connected,
            "regular_degree": self.regular_degree,
            "is_cubic": self.is_cubic,
            "triangle_free": self.triangle_free,
            "bridges": [list(e) for e in self.bridges],
            "girth": self.girth,
        }


# ---------------------------------------------------------------------------
# graph6


_G6_HEADER = ">>graph6<<"


def _g6_read_order(data: str, pos: int) -> tuple[int, int]:
    """Decode the vertex-count prefix, returning (n, next position)."""
    if pos >= len(data):
        raise GraphFormatError("graph6 string ended before vertex count", pos)
    c = ord(data[pos])
    if not (63 <= c <= 126):
        raise GraphFormatError(f"invalid graph6 character {data[pos]!r}", pos)
    if c != 126:
        return c - 63, pos + 1
    # long form: 126 followed by three 6-bit digits (63 <= n <= 258047)
    if pos + 4 > len(data):
        raise GraphFormatError("truncated long-form vertex count", pos)
    n = 0
    for i in range(1, 4):
        ci = ord(data[pos + i])
        if ci == 126 and i == 1:
            raise GraphFormatError("graphs beyond 258047 vertices not supported", pos)
        if not (63 <= ci <= 126):
            raise GraphFormatError(f"invalid graph6 character {data[pos + i]!r}", pos + i)
        n = (n << 6) | (ci - 63)
    return n, pos + 4


def parse_graph6(text: str) -> Graph:
    """Decode a single-line graph6 string (optional ``>>graph6<<`` header)."""
    data = text.rstrip("\n")
    pos = 0
    if data.startswith(_G6_HEADER):
        pos = len(_G6_HEADER)
    n, pos = _g6_read_order(data, pos)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise GraphFormatError(
            f"need {nbytes} adjacency bytes for n={n}, found {len(data) - pos}", len(data)
        )
    if len(data) - pos > nbytes:
        raise GraphFormatError("trailing garbage after graph6 data", pos + nbytes)
    bits = []
    for i in range(nbytes):
        c = ord(data[pos + i])
        if not (63 <= c <= 126):
            raise GraphFormatError(f"invalid graph6 character {data[pos + i]!r}", pos + i)
        val = c - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    """Encode a graph in graph6 (long form used automatically above 62 vertices)."""
    n = g.vertex_count
    if n > 258047:
        raise ValueError("graph6 encoding supported only up to 258047 vertices")
    if n <= 62:
        head = chr(63 + n)
    else:
        head = chr(126) + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    adj = {e: True for e in g.edges}
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in adj else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(63 + val))
    return head + "".join(chars)


# ---------------------------------------------------------------------------
# edge lists


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` pairs, one per line; optional leading ``n = <count>``."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    declared: Optional[int] = None
    start = 0
    if lines and lines[0].replace(" ", "").startswith("n="):
        try:
            declared = int(lines[0].split("=", 1)[1])
        except ValueError:
            raise GraphFormatError(f"bad vertex-count header: {lines[0]!r}")
        if declared < 0:
            raise GraphFormatError("declared vertex count is negative")
        start = 1
    edges = []
    max_id = -1
    for ln in lines[start:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {ln!r}")
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in {ln!r}")
        if u == v:
            raise GraphFormatError(f"loop edge {ln!r}")
        edges.append((u, v))
        max_id = max(max_id, u, v)
    n = declared if declared is not None else max_id + 1
    if max_id >= n:
        raise GraphFormatError(f"vertex id {max_id} exceeds declared count {n}")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"n = {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# named generators


def _lcf(n: int, pattern: Sequence[int]) -> Graph:
    """Hamiltonian cycle on n vertices plus chords ``i -> i + pattern[i % len]``."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    reps = n // len(pattern)
    jumps = list(pattern) * reps
    for i, jump in enumerate(jumps):
        edges.append((i, (i + jump) % n))
    return Graph.from_edges(n, edges)


def _bridged_gadget() -> Graph:
    # Two K3,3 copies, each with one edge subdivided; the two subdivision
    # vertices are joined by a bridge. Cubic, triangle-free, one bridge.
    edges = []
    for base, sub in ((0, 12), (6, 13)):
        part_a = [base, base + 1, base + 2]
        part_b = [base + 3, base + 4, base + 5]
        for a in part_a:
            for b in part_b:
                edges.append((a, b))
        edges.remove((base, base + 3))
        edges.append((base, sub))
        edges.append((base + 3, sub))
    edges.append((12, 13))
    return Graph.from_edges(14, edges)


_NAMED_BUILDERS = {
    "k33": lambda: Graph.from_edges(6, [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)]),
    "cube": lambda: Graph.from_edges(
        8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    ),
    "petersen": lambda: Graph.from_edges(
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)],
    ),
    "heawood": lambda: _lcf(14, [5, -5]),
    "pappus": lambda: _lcf(18, [5, 7, -7, 7, -7, -5]),
    "desargues": lambda: _lcf(20, [5, -5, 9, -9]),
    "moebius_kantor": lambda: _lcf(16, [5, -5]),
    "bridged_gadget": _bridged_gadget,
}

NAMED_GRAPHS = tuple(sorted(_NAMED_BUILDERS))


def generate_named(name: str) -> Graph:
    """Return one of the built-in test graphs (see ``NAMED_GRAPHS``)."""
    try:
        builder = _NAMED_BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown graph name {name!r}; known: {', '.join(NAMED_GRAPHS)}")
    return builder()


# ---------------------------------------------------------------------------
# structural predicates


def _connected(g: Graph) -> bool:
    n = g.vertex_count
    if n == 0:
        return False  # convention: the empty graph is not connected
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    adj = g.adjacency
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == n


def _bridges(g: Graph) -> list[tuple[int, int]]:
    """All bridges via one iterative DFS with low-link values."""
    n = g.vertex_count
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    bridges = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: list[tuple[int, int, Iterable[int]]] = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridges.append((min(p, v), max(p, v)))
                continue
            if disc[child] == -1:
                disc[child] = low[child] = timer
                timer += 1
                stack.append((child, v, iter(adj[child])))
            elif child != parent:
                low[v] = min(low[v], disc[child])
    return sorted(bridges)


def _girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle: for each edge, shortest path avoiding it."""
    best: Optional[int] = None
    adj = g.adjacency
    for u, v in g.edges:
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            if best is not None and dist[x] + 1 >= best:
                continue
            for y in adj[x]:
                if (x, y) in ((u, v), (v, u)) or y in dist:
                    continue
                dist[y] = dist[x] + 1
                queue.append(y)
        if v in dist:
            cycle_len = dist[v] + 1
            if best is None or cycle_len < best:
                best = cycle_len
    return best


def structural_report(g: Graph) -> StructuralReport:
    degrees = [g.degree(v) for v in range(g.vertex_count)]
    regular = degrees[0] if degrees and len(set(degrees)) == 1 else None
    girth = _girth(g)
    return StructuralReport(
        connected=_connected(g),
        regular_degree=regular,
        is_cubic=regular == 3,
        triangle_free=girth is None or girth >= 4,
        bridges=tuple(_bridges(g)),
        girth=girth,
    )


# ---------------------------------------------------------------------------
# DOT export


def to_dot(
    g: Graph,
    name: str = "G",
    edge_color: Optional[Mapping[tuple[int, int], str]] = None,
    edge_label: Optional[Mapping[tuple[int, int], str]] = None,
) -> str:
    """Render as an undirected DOT document with optional per-edge decorations."""
    lines = [f"graph {name} {{"]
    for v in range(g.vertex_count):
        lines.append(f"  {v};")
    for e in g.edges:
        attrs = []
        if edge_color and e in edge_color:
            attrs.append(f'color="{edge_color[e]}"')
        if edge_label and e in edge_label:
            attrs.append(f'label="{edge_label[e]}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {e[0]} -- {e[1]}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
