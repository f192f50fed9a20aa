"""Binary edge labelings of a reduced structure and their induced cycles.

A labeling opens one of the two opposite edge pairs of every reduced clique,
so it is one bit per clique and is valid by construction: every vertex ends
up with exactly two open and two closed incident edges. The open subgraph is
then 2-regular, i.e. a disjoint union of cycles covering all vertices.

Each clique contributes two open edges. If they lie on different cycles the
clique *joins* them; if they lie on the same cycle it is a *self-intersection*
of that cycle, of type B when inverting the clique's bit splits the cycle in
two and type A when the inversion re-forms a single cycle.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from . import kernels
from .reduced import ReducedStructure

TYPE_A = "type_a"
TYPE_B = "type_b"


@dataclass(frozen=True, eq=False)
class Labeling:
    """One bit per clique; bit i chooses clique i's open edge class."""

    structure: ReducedStructure
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.structure.clique_count):
            raise ValueError("bit vector out of range for clique count")

    def bit(self, clique_id: int) -> int:
        return (self.bits >> clique_id) & 1

    def invert(self, clique_id: int) -> "Labeling":
        if not 0 <= clique_id < self.structure.clique_count:
            raise KeyError(f"unknown clique id {clique_id}")
        return Labeling(self.structure, self.bits ^ (1 << clique_id))

    @cached_property
    def bits_array(self) -> np.ndarray:
        arr = np.array(
            [(self.bits >> i) & 1 for i in range(self.structure.clique_count)],
            dtype=np.uint8,
        )
        arr.setflags(write=False)
        return arr

    def bits_hex(self) -> str:
        width = (self.structure.clique_count + 3) // 4
        return format(self.bits, f"0{width}x")

    @classmethod
    def from_hex(cls, structure: ReducedStructure, hex_bits: str) -> "Labeling":
        return cls(structure, int(hex_bits, 16))


@dataclass(frozen=True, eq=False)
class CycleSet:
    """The disjoint open-edge cycles, in canonical order (see kernels)."""

    cycles: tuple[tuple[int, ...], ...]
    vertex_cycle: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class Joining:
    cycle_a: int
    cycle_b: int


@dataclass(frozen=True)
class SelfIntersection:
    cycle: int
    kind: str  # TYPE_A or TYPE_B


Role = Union[Joining, SelfIntersection]


@dataclass(frozen=True, eq=False)
class CliqueRoles:
    roles: tuple[Role, ...]

    def __getitem__(self, clique_id: int) -> Role:
        return self.roles[clique_id]

    def counts(self) -> tuple[int, int]:
        a = sum(1 for r in self.roles if isinstance(r, SelfIntersection) and r.kind == TYPE_A)
        b = sum(1 for r in self.roles if isinstance(r, SelfIntersection) and r.kind == TYPE_B)
        return a, b

    def self_intersections(self, kind: str | None = None) -> tuple[int, ...]:
        return tuple(
            i
            for i, r in enumerate(self.roles)
            if isinstance(r, SelfIntersection) and (kind is None or r.kind == kind)
        )

    def joinings(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if isinstance(r, Joining))


@dataclass(frozen=True, eq=False)
class CycleAdjacencyGraph:
    """Cycles as nodes; an edge where some clique joins two distinct cycles,
    a loop where some clique self-intersects one."""

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    loops: tuple[int, ...]
    edge_witnesses: dict[tuple[int, int], tuple[int, ...]]
    loop_witnesses: dict[int, tuple[int, ...]]

    def is_connected(self) -> bool:
        if not self.nodes:
            return False
        adj: dict[int, set[int]] = {v: set() for v in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)


# ---------------------------------------------------------------------------
# operations


def initial_labeling(rs: ReducedStructure, policy: str = "all_zero", seed: int | None = None) -> Labeling:
    """``all_zero`` or a reproducible ``random`` labeling (seed required)."""
    if policy == "all_zero":
        return Labeling(rs, 0)
    if policy in ("random", "seeded_random"):
        if seed is None:
            raise ValueError("random policy needs a seed")
        return Labeling(rs, random.Random(seed).getrandbits(rs.clique_count))
    raise ValueError(f"unknown policy {policy!r}")


def extract_cycles(lab: Labeling) -> CycleSet:
    """Walk every open-edge cycle; output is canonical and iteration-order free."""
    cv, vc, vp = lab.structure.kernel_tables
    cycle_id, _, order, starts = kernels.build_walk(cv, vc, vp, lab.bits_array)
    ol = order.tolist()
    sl = starts.tolist()
    cycles = tuple(tuple(ol[sl[k] : sl[k + 1]]) for k in range(len(sl) - 1))
    return CycleSet(cycles=cycles, vertex_cycle=tuple(cycle_id.tolist()))


def classify_cliques(lab: Labeling, cs: CycleSet, fast: bool = False) -> CliqueRoles:
    """Role of every clique; type A/B decided by flip simulation.

    ``cs`` must be ``extract_cycles(lab)``; its canonical order supplies the
    per-vertex walk data. ``fast`` switches to the interleaving shortcut,
    which must agree with the simulation (the test suite verifies this;
    simulation is the definition).
    """
    cv, vc, vp = lab.structure.kernel_tables
    v_count = lab.structure.l2.vertex_count
    pos_l = [0] * v_count
    starts_l = [0]
    for cyc in cs.cycles:
        for i, v in enumerate(cyc):
            pos_l[v] = i
        starts_l.append(starts_l[-1] + len(cyc))
    cycle_id = np.array(cs.vertex_cycle, dtype=np.int32)
    pos = np.array(pos_l, dtype=np.int32)
    starts = np.array(starts_l, dtype=np.int32)
    role, ca, cb = kernels.classify(
        cv, vc, vp, lab.bits_array, cycle_id, pos, starts, simulate=not fast
    )
    roles: list[Role] = []
    for c in range(lab.structure.clique_count):
        if role[c] == kernels.ROLE_JOINING:
            roles.append(Joining(int(ca[c]), int(cb[c])))
        else:
            kind = TYPE_A if role[c] == kernels.ROLE_TYPE_A else TYPE_B
            roles.append(SelfIntersection(int(ca[c]), kind))
    return CliqueRoles(tuple(roles))


def invert(lab: Labeling, clique_id: int) -> Labeling:
    """Toggle one clique's open edge class; the result is again valid."""
    return lab.invert(clique_id)


def cycle_adjacency(lab: Labeling, cs: CycleSet, roles: CliqueRoles) -> CycleAdjacencyGraph:
    edge_wit: dict[tuple[int, int], list[int]] = {}
    loop_wit: dict[int, list[int]] = {}
    for cid, r in enumerate(roles.roles):
        if isinstance(r, Joining):
            edge_wit.setdefault((r.cycle_a, r.cycle_b), []).append(cid)
        else:
            loop_wit.setdefault(r.cycle, []).append(cid)
    return CycleAdjacencyGraph(
        nodes=tuple(range(cs.count)),
        edges=tuple(sorted(edge_wit)),
        loops=tuple(sorted(loop_wit)),
        edge_witnesses={e: tuple(ws) for e, ws in sorted(edge_wit.items())},
        loop_witnesses={v: tuple(ws) for v, ws in sorted(loop_wit.items())},
    )


def count_intersections(roles: CliqueRoles) -> tuple[int, int]:
    """(number of type A, number of type B) self-intersections."""
    return roles.counts()


def open_degrees(lab: Labeling) -> list[int]:
    """Per-vertex count of open incident edges (always 2 for valid labelings)."""
    rs = lab.structure
    deg = [0] * rs.l2.vertex_count
    for cl in rs.cliques:
        for e in cl.open_edges(lab.bit(cl.id)):
            deg[e[0]] += 1
            deg[e[1]] += 1
    return deg


def validate_fast_path(rs: ReducedStructure, bit_vectors: Iterable[int]) -> list[tuple[int, int]]:
    """Compare interleaving classification against flip simulation.

    Returns (bits, clique_id) pairs where the two disagree; expected empty.
    """
    cv, vc, vp = rs.kernel_tables
    mismatches = []
    for bits in bit_vectors:
        arr = np.array([(bits >> i) & 1 for i in range(rs.clique_count)], dtype=np.uint8)
        cycle_id, pos, _, starts = kernels.build_walk(cv, vc, vp, arr)
        slow, _, _ = kernels.classify(cv, vc, vp, arr, cycle_id, pos, starts, simulate=True)
        fast, _, _ = kernels.classify(cv, vc, vp, arr, cycle_id, pos, starts, simulate=False)
        for c in range(rs.clique_count):
            if slow[c] != fast[c]:
                mismatches.append((bits, c))
    return mismatches


# ---------------------------------------------------------------------------
# serialization


def labeling_to_json(lab: Labeling) -> str:
    return json.dumps(
        {"clique_count": lab.structure.clique_count, "bits_hex": lab.bits_hex()}
    )


def labeling_from_json(rs: ReducedStructure, text: str) -> Labeling:
    doc = json.loads(text)
    if doc["clique_count"] != rs.clique_count:
        raise ValueError(
            f"labeling is for {doc['clique_count']} cliques, structure has {rs.clique_count}"
        )
    return Labeling.from_hex(rs, doc["bits_hex"])


def cycles_to_json(cs: CycleSet) -> str:
    return json.dumps({"cycles": [list(c) for c in cs.cycles]})
