"""Pure-Python labeling kernels.

Reference implementation of the hot loops: walking the open-edge cycles of a
labeled reduced structure, classifying cliques, batch enumeration of bit
vectors and the annealing chain. The compiled extension ``_kernel_c`` mirrors
this module function-for-function; the test suite checks that both produce
bit-identical output.

Array conventions (see ``ReducedStructure.kernel_tables``):
  cv  (C, 4) int32  clique id -> its four vertices in canonical cyclic order
  vc  (V, 2) int32  vertex id -> its two clique ids (sorted)
  vp  (V, 2) int32  vertex id -> position of the vertex inside each clique
bits are one byte per clique (0/1 selecting the open edge class). Bit 0
opens the (0,1)/(2,3) position pairs of ``cv``, bit 1 the (1,2)/(3,0) pairs;
hence the open neighbor of the vertex at position p is at p^1 or p^3.
"""

from __future__ import annotations

import math

import numpy as np

ROLE_JOINING = 0
ROLE_TYPE_A = 1
ROLE_TYPE_B = 2

_MASK64 = (1 << 64) - 1
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


def _splitmix_next(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return state, z


def build_walk(cv, vc, vp, bits):
    """Trace the open-edge cycles of a valid labeling.

    Returns (cycle_id, pos, order, starts) as int32 arrays: per-vertex cycle
    id and position, vertices in traversal order, and cycle offsets into
    ``order``. Canonical form: each cycle starts at its minimum vertex and
    runs toward the smaller of the two open neighbors; cycles are listed in
    order of their minimum vertex.
    """
    cvl = cv.tolist()
    vcl = vc.tolist()
    vpl = vp.tolist()
    bl = bits.tolist()
    v_count = len(vcl)
    cycle_id = [-1] * v_count
    pos = [0] * v_count
    order: list[int] = []
    starts = [0]
    for v0 in range(v_count):
        if cycle_id[v0] >= 0:
            continue
        k = len(starts) - 1
        nbrs = []
        for slot in (0, 1):
            c = vcl[v0][slot]
            mask = 3 if bl[c] else 1
            nbrs.append(cvl[c][vpl[v0][slot] ^ mask])
        s = 0 if nbrs[0] <= nbrs[1] else 1
        v = v0
        p = 0
        while True:
            cycle_id[v] = k
            pos[v] = p
            order.append(v)
            c = vcl[v][s]
            mask = 3 if bl[c] else 1
            w = cvl[c][vpl[v][s] ^ mask]
            if w == v0:
                break
            s = 1 if vcl[w][0] == c else 0
            v = w
            p += 1
        starts.append(len(order))
    return (
        np.array(cycle_id, dtype=np.int32),
        np.array(pos, dtype=np.int32),
        np.array(order, dtype=np.int32),
        np.array(starts, dtype=np.int32),
    )


def _flip_kind(cvl, vcl, vpl, bl, c: int) -> int:
    """Classify self-intersection ``c`` by simulating its label inversion.

    Walk the cycle through cv[c][0] with c's bit flipped: if the diagonal
    partner cv[c][2] is still on that cycle the inversion re-formed a single
    cycle (type A); otherwise it split (type B).
    """
    x0 = cvl[c][0]
    x2 = cvl[c][2]
    bflip = 1 - bl[c]
    s = 0 if vcl[x0][0] == c else 1
    v = x0
    seen = False
    while True:
        c_cur = vcl[v][s]
        b_cur = bflip if c_cur == c else bl[c_cur]
        mask = 3 if b_cur else 1
        w = cvl[c_cur][vpl[v][s] ^ mask]
        if w == x0:
            break
        if w == x2:
            seen = True
        s = 1 if vcl[w][0] == c_cur else 0
        v = w
    return ROLE_TYPE_A if seen else ROLE_TYPE_B


def classify(cv, vc, vp, bits, cycle_id, pos, starts, simulate=True):
    """Role of every clique under the labeling that produced the walk data.

    Returns (role, ca, cb): role is 0 joining / 1 type A / 2 type B, and
    ca <= cb are the ids of the cycle(s) carrying the clique's open edges.
    ``simulate`` selects flip simulation (the defining check) over the
    interleaving fast path, which reads the two crossing directions off the
    cycle order and calls them type B iff they agree.
    """
    cvl = cv.tolist()
    vcl = vc.tolist()
    vpl = vp.tolist()
    bl = bits.tolist()
    cid = cycle_id.tolist()
    posl = pos.tolist()
    startsl = starts.tolist()
    c_count = len(cvl)
    role = np.empty(c_count, dtype=np.uint8)
    ca = np.empty(c_count, dtype=np.int32)
    cb = np.empty(c_count, dtype=np.int32)
    for c in range(c_count):
        x0, x1, x2, x3 = cvl[c]
        if bl[c]:
            u1, w1, u2, w2 = x1, x2, x3, x0
        else:
            u1, w1, u2, w2 = x0, x1, x2, x3
        k1 = cid[u1]
        k2 = cid[u2]
        if k1 != k2:
            role[c] = ROLE_JOINING
            ca[c] = k1 if k1 < k2 else k2
            cb[c] = k2 if k1 < k2 else k1
            continue
        ca[c] = cb[c] = k1
        if simulate:
            role[c] = _flip_kind(cvl, vcl, vpl, bl, c)
        else:
            length = startsl[k1 + 1] - startsl[k1]
            d1 = (posl[w1] - posl[u1]) % length == 1
            d2 = (posl[w2] - posl[u2]) % length == 1
            role[c] = ROLE_TYPE_B if d1 == d2 else ROLE_TYPE_A
    return role, ca, cb


def count_types(cv, vc, vp, bits, simulate=True):
    """(type_a, type_b, cycle_count) for one labeling."""
    cycle_id, pos, _, starts = build_walk(cv, vc, vp, bits)
    role, _, _ = classify(cv, vc, vp, bits, cycle_id, pos, starts, simulate)
    rl = role.tolist()
    return rl.count(ROLE_TYPE_A), rl.count(ROLE_TYPE_B), len(starts) - 1


class _Tables:
    """Plain-list view of the kernel tables plus reusable walk scratch."""

    __slots__ = ("cvl", "vcl", "vpl", "v_count", "c_count", "cid", "posv", "stamp", "lens")

    def __init__(self, cv, vc, vp):
        self.cvl = [tuple(r) for r in cv.tolist()]
        self.vcl = [tuple(r) for r in vc.tolist()]
        self.vpl = [tuple(r) for r in vp.tolist()]
        self.v_count = len(self.vcl)
        self.c_count = len(self.cvl)
        self.cid = [0] * self.v_count
        self.posv = [0] * self.v_count
        self.stamp = [-1] * self.v_count
        self.lens = [0] * (self.v_count // 4 + 1)


def _counts_int(t: _Tables, bits_int: int, gen: int, simulate: bool) -> tuple[int, int, int]:
    """Count (type_a, type_b, cycles) for a labeling given as a bit integer."""
    cvl, vcl, vpl = t.cvl, t.vcl, t.vpl
    cid, posv, stamp, lens = t.cid, t.posv, t.stamp, t.lens
    ncyc = 0
    for v0 in range(t.v_count):
        if stamp[v0] == gen:
            continue
        k = ncyc
        ncyc += 1
        c = vcl[v0][0]
        n0 = cvl[c][vpl[v0][0] ^ (3 if (bits_int >> c) & 1 else 1)]
        c = vcl[v0][1]
        n1 = cvl[c][vpl[v0][1] ^ (3 if (bits_int >> c) & 1 else 1)]
        s = 0 if n0 <= n1 else 1
        v = v0
        p = 0
        while True:
            stamp[v] = gen
            cid[v] = k
            posv[v] = p
            c = vcl[v][s]
            w = cvl[c][vpl[v][s] ^ (3 if (bits_int >> c) & 1 else 1)]
            if w == v0:
                break
            s = 1 if vcl[w][0] == c else 0
            v = w
            p += 1
        lens[k] = p + 1
    type_a = 0
    type_b = 0
    for c in range(t.c_count):
        x0, x1, x2, x3 = cvl[c]
        if (bits_int >> c) & 1:
            u1, w1, u2, w2 = x1, x2, x3, x0
        else:
            u1, w1, u2, w2 = x0, x1, x2, x3
        k1 = cid[u1]
        if k1 != cid[u2]:
            continue
        if simulate:
            flipped = bits_int ^ (1 << c)
            x0c = cvl[c][0]
            x2c = cvl[c][2]
            s = 0 if vcl[x0c][0] == c else 1
            v = x0c
            seen = False
            while True:
                cc = vcl[v][s]
                w = cvl[cc][vpl[v][s] ^ (3 if (flipped >> cc) & 1 else 1)]
                if w == x0c:
                    break
                if w == x2c:
                    seen = True
                s = 1 if vcl[w][0] == cc else 0
                v = w
            if seen:
                type_a += 1
            else:
                type_b += 1
        else:
            length = lens[k1]
            d1 = (posv[w1] - posv[u1]) % length == 1
            d2 = (posv[w2] - posv[u2]) % length == 1
            if d1 == d2:
                type_b += 1
            else:
                type_a += 1
    return type_a, type_b, ncyc


def enumerate_types(cv, vc, vp, lo: int, hi: int, simulate=True):
    """Classify every bit vector in [lo, hi); returns uint8 (type_a, type_b) arrays."""
    t = _Tables(cv, vc, vp)
    n = hi - lo
    out_a = np.empty(n, dtype=np.uint8)
    out_b = np.empty(n, dtype=np.uint8)
    for i in range(n):
        a, b, _ = _counts_int(t, lo + i, i, simulate)
        out_a[i] = a
        out_b[i] = b
    return out_a, out_b


def anneal_run(cv, vc, vp, bits0, betas, sweeps, wa, wb, seed, record_every, simulate=True):
    """Metropolis chain over labelings with energy wa*type_a + wb*type_b.

    One sweep is C proposals of a uniformly random clique flip. Stops early
    once the energy hits zero. Returns (best_bits, best_a, best_b,
    solved_step, steps, accepted, trace) where trace rows are
    (step, type_a, type_b, cycle_count, accepted_so_far).
    """
    t = _Tables(cv, vc, vp)
    c_count = t.c_count
    betas_l = [float(x) for x in betas]
    sweeps_l = [int(x) for x in sweeps]
    state = int(seed) & _MASK64
    bits_int = 0
    for i, b in enumerate(bits0.tolist()):
        if b:
            bits_int |= 1 << i
    gen = 0
    a, b, ncyc = _counts_int(t, bits_int, gen, simulate)
    cur_e = wa * a + wb * b
    best_int, best_a, best_b = bits_int, a, b
    best_e = cur_e
    solved_step = 0 if cur_e == 0.0 else -1
    trace = [(0, a, b, ncyc, 0)]
    step = 0
    accepted = 0
    if solved_step < 0:
        done = False
        for beta, nsweeps in zip(betas_l, sweeps_l):
            if done:
                break
            for _ in range(nsweeps * c_count):
                step += 1
                state, z = _splitmix_next(state)
                c = z % c_count
                cand = bits_int ^ (1 << c)
                gen += 1
                a2, b2, nc2 = _counts_int(t, cand, gen, simulate)
                e2 = wa * a2 + wb * b2
                de = e2 - cur_e
                if de <= 0.0:
                    ok = True
                else:
                    state, z = _splitmix_next(state)
                    ok = (z >> 11) * _INV53 < math.exp(-beta * de)
                if ok:
                    accepted += 1
                    bits_int = cand
                    cur_e = e2
                    a, b, ncyc = a2, b2, nc2
                    if e2 < best_e:
                        best_e = e2
                        best_int, best_a, best_b = cand, a2, b2
                    if e2 == 0.0:
                        solved_step = step
                        done = True
                        break
                if record_every and step % record_every == 0:
                    trace.append((step, a, b, ncyc, accepted))
    trace.append((step, a, b, ncyc, accepted))
    best_bits = np.array([(best_int >> i) & 1 for i in range(c_count)], dtype=np.uint8)
    return (
        best_bits,
        best_a,
        best_b,
        solved_step,
        step,
        accepted,
        np.array(trace, dtype=np.int64).reshape(len(trace), 5),
    )
