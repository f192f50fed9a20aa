"""Search for intersection-free labelings.

Type B self-intersections are cleared greedily (each inversion splits a
cycle, so the cycle count climbs and the loop terminates). Type A
self-intersections cannot be removed by their own inversion; they dissolve
when some other inversion re-partitions their cycle so that their two open
edges land on different cycles. ``resolve_type_a`` runs a bounded best-first
search over such inversion sequences and only accepts outcomes where the
total type A count strictly drops, which makes the outer search loop a
monotone descent. On bridged graphs an irreducible type A intersection
always remains and the search reports budget exhaustion instead.
"""

from __future__ import annotations

import heapq
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import kernels
from ._kernel_py import _splitmix_next
from .graphs import Graph
from .labeling import (
    TYPE_B,
    Labeling,
    SelfIntersection,
    classify_cliques,
    cycle_adjacency,
    extract_cycles,
    initial_labeling,
)
from .linegraph import enumerate_triangles
from .reduced import ReducedStructure

SOLVED = "solved"
BUDGET_EXHAUSTED = "budget_exhausted"


class CutVertexError(RuntimeError):
    """The requested cut center is itself a cut vertex (bridge upstream)."""


@dataclass(frozen=True)
class AnnealingConfig:
    beta_schedule: tuple[tuple[float, int], ...] = (
        (0.2, 40),
        (0.5, 60),
        (1.0, 80),
        (2.0, 120),
        (4.0, 200),
    )
    energy_weights: tuple[float, float] = (10.0, 1.0)

    def __post_init__(self):
        if not self.beta_schedule:
            raise ValueError("beta schedule must be non-empty")
        if any(sweeps <= 0 for _, sweeps in self.beta_schedule):
            raise ValueError("sweep counts must be positive")
        if self.energy_weights[0] <= 0 or self.energy_weights[1] < 0:
            raise ValueError("need w_a > 0 and w_b >= 0")


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_restarts: int = 64
    max_flips_per_attempt: int = 1_000_000
    resolution_depth: int = 8
    enumerate_threshold: int = 24
    anneal: Optional[AnnealingConfig] = None

    def __post_init__(self):
        for name in ("max_restarts", "max_flips_per_attempt", "resolution_depth",
                     "enumerate_threshold"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class TraceRound:
    restart: int
    round: int
    type_a: int
    type_b: int
    cycle_count: int
    flips: int

    def as_dict(self) -> dict:
        return {
            "restart": self.restart,
            "round": self.round,
            "type_a": self.type_a,
            "type_b": self.type_b,
            "cycle_count": self.cycle_count,
            "flips": self.flips,
        }


@dataclass(frozen=True, eq=False)
class SearchOutcome:
    status: str  # SOLVED or BUDGET_EXHAUSTED
    labeling: Labeling
    trace: tuple[TraceRound, ...]
    flips_applied: int
    restarts: int = 0


@dataclass(frozen=True, eq=False)
class CenteredVertexCut:
    center: int
    cut: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# type B reduction


def _classify_arrays(rs: ReducedStructure, bits: int) -> tuple[list[int], list[int], list[int], int]:
    """Light classification: (role, cycle_a, cycle_b) per clique + cycle count.

    Role codes are the kernel's: 0 joining, 1 type A, 2 type B.
    """
    cv, vc, vp = rs.kernel_tables
    arr = np.array([(bits >> i) & 1 for i in range(rs.clique_count)], dtype=np.uint8)
    cycle_id, pos, _, starts = kernels.build_walk(cv, vc, vp, arr)
    role, ca, cb = kernels.classify(cv, vc, vp, arr, cycle_id, pos, starts, simulate=True)
    return role.tolist(), ca.tolist(), cb.tolist(), len(starts) - 1


def reduce_type_b(lab: Labeling) -> Labeling:
    """Invert type B self-intersections (lowest id first) until none remain.

    Every such inversion splits one cycle into two, so the number of flips is
    bounded by the vertex count. The type A count never increases here.
    """
    new_lab, _ = _reduce_type_b_counted(lab)
    return new_lab


def _reduce_type_b_counted(lab: Labeling) -> tuple[Labeling, int]:
    rs = lab.structure
    limit = rs.l2.vertex_count
    flips = 0
    prev_a = None
    bits = lab.bits
    for _ in range(limit + 1):
        role, _, _, _ = _classify_arrays(rs, bits)
        a = role.count(kernels.ROLE_TYPE_A)
        if prev_a is not None and a > prev_a:
            raise RuntimeError("type B reduction increased the type A count")
        prev_a = a
        try:
            lowest_b = role.index(kernels.ROLE_TYPE_B)
        except ValueError:
            return Labeling(rs, bits), flips
        bits ^= 1 << lowest_b
        flips += 1
    raise RuntimeError("type B reduction did not terminate within the flip bound")


# ---------------------------------------------------------------------------
# centered vertex cuts


def _components_without(g: Graph, removed: frozenset[int]) -> list[tuple[int, ...]]:
    seen = set(removed)
    comps = []
    for s in range(g.vertex_count):
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def _is_cut(g: Graph, cut: frozenset[int]) -> bool:
    return len(_components_without(g, cut)) >= 2


def _is_minimal_cut(g: Graph, cut: frozenset[int]) -> bool:
    return _is_cut(g, cut) and all(not _is_cut(g, cut - {x}) for x in cut)


def centered_vertex_cut(lg: Graph, v: int) -> CenteredVertexCut:
    """Smallest minimal vertex cut of ``lg`` that contains ``v``.

    Searches companion sets of size 1 and 2 exhaustively, then falls back to
    neighborhoods N(w) of neighbors of v, then to all size-4 supersets. For
    line graphs of bridgeless cubic graphs the answer has size 2..4 and never
    contains a full triangle; both facts are validated, not assumed.
    """
    n = lg.vertex_count
    if n < 6:
        raise ValueError(f"graph too small for a centered cut search (n={n})")
    if _is_cut(lg, frozenset({v})):
        raise CutVertexError(f"vertex {v} is a cut vertex")
    others = [x for x in range(n) if x != v]
    found: Optional[frozenset[int]] = None
    for size in (1, 2):
        for companions in itertools.combinations(others, size):
            cut = frozenset({v, *companions})
            if _is_minimal_cut(lg, cut):
                found = cut
                break
        if found:
            break
    if found is None:
        for w in lg.adjacency[v]:
            cut = frozenset(lg.adjacency[w])
            if v in cut and _is_minimal_cut(lg, cut):
                found = cut
                break
    if found is None:
        for companions in itertools.combinations(others, 3):
            cut = frozenset({v, *companions})
            if _is_minimal_cut(lg, cut):
                found = cut
                break
    if found is None:
        raise ValueError(f"no minimal vertex cut through {v} of size <= 4 exists")
    for tri in enumerate_triangles(lg):
        if set(tri) <= found:
            raise RuntimeError(f"minimal cut {sorted(found)} contains full triangle {tri}")
    return CenteredVertexCut(
        center=v,
        cut=tuple(sorted(found)),
        components=tuple(sorted(_components_without(lg, found))),
    )


# ---------------------------------------------------------------------------
# joining cycles


def join_cycles(lab: Labeling, cycle_a: int, cycle_b: int) -> Labeling:
    """Merge the cycles along a shortest cycle-adjacency path.

    One joining clique (lowest id) is inverted per path edge; already
    adjacent cycles need zero flips. The inverted cliques all end up as
    type B self-intersections of the merged cycle (asserted per call).
    Other cliques that joined the same pair of cycles become
    self-intersections too and may come out type A; compensating for that
    is the resolution search's job, not this primitive's.
    """
    cs = extract_cycles(lab)
    if cycle_a == cycle_b:
        raise ValueError("cycles must be distinct")
    if not (0 <= cycle_a < cs.count and 0 <= cycle_b < cs.count):
        raise ValueError("unknown cycle id")
    roles = classify_cliques(lab, cs)
    cag = cycle_adjacency(lab, cs, roles)
    if (min(cycle_a, cycle_b), max(cycle_a, cycle_b)) in cag.edge_witnesses:
        return lab  # already adjacent
    # BFS for a shortest path, neighbors in ascending order for determinism
    adj: dict[int, set[int]] = {k: set() for k in cag.nodes}
    for x, y in cag.edges:
        adj[x].add(y)
        adj[y].add(x)
    parent: dict[int, int] = {cycle_a: -1}
    frontier = [cycle_a]
    while frontier and cycle_b not in parent:
        nxt = []
        for x in frontier:
            for y in sorted(adj[x]):
                if y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    if cycle_b not in parent:
        raise RuntimeError("cycle adjacency graph is disconnected: structural anomaly")
    path = [cycle_b]
    while path[-1] != cycle_a:
        path.append(parent[path[-1]])
    path.reverse()
    flipped = []
    for x, y in zip(path, path[1:]):
        key = (min(x, y), max(x, y))
        flipped.append(cag.edge_witnesses[key][0])
    out = lab
    for cid in flipped:
        out = out.invert(cid)
    roles_after = classify_cliques(out, extract_cycles(out))
    for cid in flipped:
        r = roles_after[cid]
        if not (isinstance(r, SelfIntersection) and r.kind == TYPE_B):
            raise RuntimeError(f"joining flip left clique {cid} as {r}, expected type B")
    return out


# ---------------------------------------------------------------------------
# type A resolution


def resolve_type_a(
    lab: Labeling,
    clique_id: int,
    depth: int = 8,
    max_nodes: int = 4096,
) -> Optional[Labeling]:
    """Bounded best-first search for inversions that dissolve one type A clique.

    Accepts only states where the global type A count strictly decreased and
    the target is no longer type A. Returns None when the budget runs out,
    which is the expected outcome on bridged graphs.
    """
    new_lab, _ = _resolve_type_a_counted(lab, clique_id, depth, max_nodes)
    return new_lab


def _resolve_type_a_counted(
    lab: Labeling, clique_id: int, depth: int, max_nodes: int
) -> tuple[Optional[Labeling], int]:
    rs = lab.structure
    role0, _, _, _ = _classify_arrays(rs, lab.bits)
    if role0[clique_id] != kernels.ROLE_TYPE_A:
        raise ValueError(f"clique {clique_id} is not a type A self-intersection")
    a0 = role0.count(kernels.ROLE_TYPE_A)

    # Cliques in or next to a minimal cut through the target localize the
    # useful inversions; order them first.
    priority_cliques: set[int] = set()
    try:
        cut = centered_vertex_cut(rs.lg.lg, clique_id)
        priority_cliques.update(cut.cut)
        for q in cut.cut:
            priority_cliques.update(rs.lg.lg.adjacency[q])
    except (CutVertexError, ValueError):
        pass

    counter = itertools.count()
    heap: list[tuple[tuple[int, int, int], int, int]] = []
    visited = {lab.bits}
    flips_evaluated = 0

    heapq.heappush(heap, ((a0, role0.count(kernels.ROLE_TYPE_B), 0), next(counter), lab.bits))
    nodes = 0
    while heap and nodes < max_nodes:
        (_, _, dist), _, bits = heapq.heappop(heap)
        nodes += 1
        role, ca, cb, _ = _classify_arrays(rs, bits)
        # flips worth trying: any clique whose open edges touch the cycles
        # currently carrying the target's open edges
        watched = {ca[clique_id], cb[clique_id]}
        cands = [c for c in range(rs.clique_count) if ca[c] in watched or cb[c] in watched]
        cands.sort(key=lambda c: (c not in priority_cliques, c))
        for cid in cands:
            child = bits ^ (1 << cid)
            if child in visited:
                continue
            visited.add(child)
            flips_evaluated += 1
            crole, cca, ccb, _ = _classify_arrays(rs, child)
            a = crole.count(kernels.ROLE_TYPE_A)
            if a < a0 and crole[clique_id] != kernels.ROLE_TYPE_A:
                return Labeling(rs, child), flips_evaluated
            if dist + 1 < depth:
                b = crole.count(kernels.ROLE_TYPE_B)
                heapq.heappush(heap, ((a, b, dist + 1), next(counter), child))
    return None, flips_evaluated


# ---------------------------------------------------------------------------
# the full search


def _attempt(rs: ReducedStructure, seed: int, cfg: SearchConfig) -> tuple[bool, Labeling, list, int]:
    """One seeded descent; deterministic given (rs, seed, cfg)."""
    lab = initial_labeling(rs, "random", seed=seed)
    flips = 0
    rounds = []
    lab, nf = _reduce_type_b_counted(lab)
    flips += nf
    prev_a = None
    for rnd in itertools.count():
        role, _, _, ncyc = _classify_arrays(rs, lab.bits)
        a = role.count(kernels.ROLE_TYPE_A)
        b = role.count(kernels.ROLE_TYPE_B)
        rounds.append((rnd, a, b, ncyc, flips))
        if prev_a is not None and a >= prev_a:
            raise RuntimeError("resolution round failed to decrease the type A count")
        prev_a = a
        if a == 0 and b == 0:
            return True, lab, rounds, flips
        if flips >= cfg.max_flips_per_attempt:
            return False, lab, rounds, flips
        target = role.index(kernels.ROLE_TYPE_A)
        resolved, nf = _resolve_type_a_counted(
            lab, target, depth=cfg.resolution_depth, max_nodes=4096
        )
        flips += nf
        if resolved is None:
            return False, lab, rounds, flips
        lab, nf = _reduce_type_b_counted(resolved)
        flips += nf
    raise AssertionError("unreachable")


def search_cdc_labeling(rs: ReducedStructure, cfg: SearchConfig, threads: int = 1) -> SearchOutcome:
    """Randomized-restart monotone descent to an intersection-free labeling.

    Deterministic given ``cfg.seed``; the threaded mode runs restarts on
    independent labeling clones and merges lowest-seed-wins, producing the
    identical outcome.
    """
    seeds = [cfg.seed + i for i in range(cfg.max_restarts)]
    results: dict[int, tuple[bool, Labeling, list, int]] = {}

    def run(seed: int):
        return seed, _attempt(rs, seed, cfg)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for chunk_start in range(0, len(seeds), threads):
                chunk = seeds[chunk_start : chunk_start + threads]
                for seed, res in pool.map(run, chunk):
                    results[seed] = res
                if any(results[s][0] for s in chunk):
                    break
    else:
        for seed in seeds:
            results[seed] = _attempt(rs, seed, cfg)
            if results[seed][0]:
                break

    trace: list[TraceRound] = []
    total_flips = 0
    last: Optional[tuple[bool, Labeling, list, int]] = None
    restarts = 0
    for i, seed in enumerate(seeds):
        if seed not in results:
            break
        solved, lab, rounds, flips = results[seed]
        restarts = i
        total_flips += flips
        for rnd, a, b, ncyc, fl in rounds:
            trace.append(TraceRound(i, rnd, a, b, ncyc, fl))
        last = results[seed]
        if solved:
            return SearchOutcome(
                status=SOLVED,
                labeling=lab,
                trace=tuple(trace),
                flips_applied=total_flips,
                restarts=i,
            )
    assert last is not None
    return SearchOutcome(
        status=BUDGET_EXHAUSTED,
        labeling=last[1],
        trace=tuple(trace),
        flips_applied=total_flips,
        restarts=restarts,
    )


# ---------------------------------------------------------------------------
# exhaustive enumeration


def enumerate_labelings(
    rs: ReducedStructure,
    threshold: int = 24,
    simulate: Optional[bool] = None,
    chunk: int = 1 << 16,
    intersection_free_only: bool = False,
) -> Iterator[tuple[int, int, int]]:
    """Stream (bits, type_a, type_b) over all 2^C labelings in numeric order.

    Uses the interleaving fast path by default, but only after validating it
    against flip simulation on a deterministic labeling sample; any mismatch
    falls back to simulation for the whole run (simulation is the defining
    classification). ``intersection_free_only`` keeps only (bits, 0, 0) rows.
    """
    c_count = rs.clique_count
    if c_count > threshold:
        raise ValueError(f"{c_count} cliques exceeds enumeration threshold {threshold}")
    if c_count > 63:
        raise ValueError("enumeration supports at most 63 cliques")
    if simulate is None:
        from .labeling import validate_fast_path
        import random as _random

        rng = _random.Random(0xC0FFEE)
        sample = list(range(min(256, 1 << c_count)))
        sample += [rng.getrandbits(c_count) for _ in range(256)]
        simulate = bool(validate_fast_path(rs, sample))
    cv, vc, vp = rs.kernel_tables
    total = 1 << c_count
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        arr_a, arr_b = kernels.enumerate_types(cv, vc, vp, lo, hi, simulate=simulate)
        la, lb = arr_a.tolist(), arr_b.tolist()
        for i in range(hi - lo):
            if intersection_free_only and (la[i] or lb[i]):
                continue
            yield lo + i, la[i], lb[i]


# ---------------------------------------------------------------------------
# annealing


def metropolis_accept(delta: float, beta: float, u: float) -> bool:
    """Accept rule: always downhill, uphill with probability exp(-beta*delta)."""
    return delta <= 0.0 or u < math.exp(-beta * delta)


def splitmix_stream(seed: int) -> Iterator[int]:
    """The deterministic 64-bit generator used by the annealing kernels."""
    state = seed & ((1 << 64) - 1)
    while True:
        state, z = _splitmix_next(state)
        yield z


def anneal(rs: ReducedStructure, cfg: AnnealingConfig, seed: int) -> SearchOutcome:
    """Metropolis chain over labelings; solved iff the energy reaches zero."""
    start = initial_labeling(rs, "random", seed=seed)
    cv, vc, vp = rs.kernel_tables
    betas = np.array([b for b, _ in cfg.beta_schedule], dtype=np.float64)
    sweeps = np.array([s for _, s in cfg.beta_schedule], dtype=np.int64)
    wa, wb = cfg.energy_weights
    best_bits, best_a, best_b, solved_step, steps, accepted, trace = kernels.anneal_run(
        cv, vc, vp, start.bits_array, betas, sweeps, wa, wb, seed, record_every=1000
    )
    bits = 0
    for i, bit in enumerate(best_bits.tolist()):
        if bit:
            bits |= 1 << i
    rounds = tuple(
        TraceRound(0, i, int(row[1]), int(row[2]), int(row[3]), int(row[0]))
        for i, row in enumerate(trace.tolist())
    )
    return SearchOutcome(
        status=SOLVED if solved_step >= 0 else BUDGET_EXHAUSTED,
        labeling=Labeling(rs, bits),
        trace=rounds,
        flips_applied=int(steps),
        restarts=0,
    )
