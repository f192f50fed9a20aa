# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled labeling kernels.

Function-for-function mirror of ``_kernel_py`` (see that module for the array
conventions); outputs must be bit-identical to the pure-Python versions.
"""

from libc.math cimport exp
from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t

import numpy as np

ROLE_JOINING = 0
ROLE_TYPE_A = 1
ROLE_TYPE_B = 2

DEF C_ROLE_JOINING = 0
DEF C_ROLE_TYPE_A = 1
DEF C_ROLE_TYPE_B = 2

cdef double _INV53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _sm_next(uint64_t* state) nogil:
    state[0] = state[0] + <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef int _walk(const int32_t[:, :] cv, const int32_t[:, :] vc, const int32_t[:, :] vp,
               const uint8_t[:] bits, int32_t[:] cycle_id, int32_t[:] pos,
               int32_t[:] order, int32_t[:] starts) nogil:
    """Core cycle walk; returns the number of cycles."""
    cdef int v_count = vc.shape[0]
    cdef int v0, v, w, p, s, c, k, mask, n0, n1, filled
    cdef int ncyc = 0
    filled = 0
    for v0 in range(v_count):
        cycle_id[v0] = -1
    starts[0] = 0
    for v0 in range(v_count):
        if cycle_id[v0] >= 0:
            continue
        k = ncyc
        ncyc += 1
        c = vc[v0, 0]
        mask = 3 if bits[c] else 1
        n0 = cv[c, vp[v0, 0] ^ mask]
        c = vc[v0, 1]
        mask = 3 if bits[c] else 1
        n1 = cv[c, vp[v0, 1] ^ mask]
        s = 0 if n0 <= n1 else 1
        v = v0
        p = 0
        while True:
            cycle_id[v] = k
            pos[v] = p
            order[filled] = v
            filled += 1
            c = vc[v, s]
            mask = 3 if bits[c] else 1
            w = cv[c, vp[v, s] ^ mask]
            if w == v0:
                break
            s = 1 if vc[w, 0] == c else 0
            v = w
            p += 1
        starts[ncyc] = filled
    return ncyc


def build_walk(cv, vc, vp, bits):
    """See ``_kernel_py.build_walk``."""
    cdef const int32_t[:, :] cvm = cv
    cdef const int32_t[:, :] vcm = vc
    cdef const int32_t[:, :] vpm = vp
    cdef const uint8_t[:] bm = bits
    cdef int v_count = vcm.shape[0]
    cycle_id = np.empty(v_count, dtype=np.int32)
    pos = np.empty(v_count, dtype=np.int32)
    order = np.empty(v_count, dtype=np.int32)
    starts = np.empty(v_count + 1, dtype=np.int32)
    cdef int32_t[:] cid = cycle_id
    cdef int32_t[:] posm = pos
    cdef int32_t[:] orderm = order
    cdef int32_t[:] startsm = starts
    cdef int ncyc = _walk(cvm, vcm, vpm, bm, cid, posm, orderm, startsm)
    return cycle_id, pos, order, starts[: ncyc + 1].copy()


cdef int _flip_kind(const int32_t[:, :] cv, const int32_t[:, :] vc, const int32_t[:, :] vp,
                    const uint8_t[:] bits, int c) nogil:
    cdef int x0 = cv[c, 0]
    cdef int x2 = cv[c, 2]
    cdef int bflip = 0 if bits[c] else 1
    cdef int s = 0 if vc[x0, 0] == c else 1
    cdef int v = x0
    cdef int seen = 0
    cdef int c_cur, b_cur, mask, w
    while True:
        c_cur = vc[v, s]
        b_cur = bflip if c_cur == c else bits[c_cur]
        mask = 3 if b_cur else 1
        w = cv[c_cur, vp[v, s] ^ mask]
        if w == x0:
            break
        if w == x2:
            seen = 1
        s = 1 if vc[w, 0] == c_cur else 0
        v = w
    return C_ROLE_TYPE_A if seen else C_ROLE_TYPE_B


def classify(cv, vc, vp, bits, cycle_id, pos, starts, simulate=True):
    """See ``_kernel_py.classify``."""
    cdef const int32_t[:, :] cvm = cv
    cdef const int32_t[:, :] vcm = vc
    cdef const int32_t[:, :] vpm = vp
    cdef const uint8_t[:] bm = bits
    cdef const int32_t[:] cid = cycle_id
    cdef const int32_t[:] posm = pos
    cdef const int32_t[:] startsm = starts
    cdef int c_count = cvm.shape[0]
    cdef bint sim = simulate
    role_np = np.empty(c_count, dtype=np.uint8)
    ca_np = np.empty(c_count, dtype=np.int32)
    cb_np = np.empty(c_count, dtype=np.int32)
    cdef uint8_t[:] role = role_np
    cdef int32_t[:] ca = ca_np
    cdef int32_t[:] cb = cb_np
    cdef int c, u1, w1, u2, w2, k1, k2, length, d1, d2
    for c in range(c_count):
        if bm[c]:
            u1 = cvm[c, 1]; w1 = cvm[c, 2]; u2 = cvm[c, 3]; w2 = cvm[c, 0]
        else:
            u1 = cvm[c, 0]; w1 = cvm[c, 1]; u2 = cvm[c, 2]; w2 = cvm[c, 3]
        k1 = cid[u1]
        k2 = cid[u2]
        if k1 != k2:
            role[c] = C_ROLE_JOINING
            ca[c] = k1 if k1 < k2 else k2
            cb[c] = k2 if k1 < k2 else k1
            continue
        ca[c] = k1
        cb[c] = k1
        if sim:
            role[c] = <uint8_t>_flip_kind(cvm, vcm, vpm, bm, c)
        else:
            length = startsm[k1 + 1] - startsm[k1]
            d1 = 1 if (posm[w1] - posm[u1] + length) % length == 1 else 0
            d2 = 1 if (posm[w2] - posm[u2] + length) % length == 1 else 0
            role[c] = C_ROLE_TYPE_B if d1 == d2 else C_ROLE_TYPE_A
    return role_np, ca_np, cb_np


def count_types(cv, vc, vp, bits, simulate=True):
    """See ``_kernel_py.count_types``."""
    cycle_id, pos, _, starts = build_walk(cv, vc, vp, bits)
    role, _, _ = classify(cv, vc, vp, bits, cycle_id, pos, starts, simulate)
    counts = np.bincount(role, minlength=3)
    return int(counts[C_ROLE_TYPE_A]), int(counts[C_ROLE_TYPE_B]), starts.shape[0] - 1


cdef void _counts_bits(const int32_t[:, :] cv, const int32_t[:, :] vc, const int32_t[:, :] vp,
                       uint64_t bits, int gen, bint simulate,
                       int32_t[:] cid, int32_t[:] posv, int32_t[:] stamp, int32_t[:] lens,
                       int* out_a, int* out_b, int* out_ncyc) nogil:
    """Count roles for a labeling given as a bit integer (scratch-stamped)."""
    cdef int v_count = vc.shape[0]
    cdef int c_count = cv.shape[0]
    cdef int v0, v, w, p, s, c, k, mask, n0, n1
    cdef int ncyc = 0
    cdef int type_a = 0, type_b = 0
    cdef int x0, x2, u1, w1, u2, w2, k1, length, d1, d2, seen, cc
    cdef uint64_t flipped
    for v0 in range(v_count):
        if stamp[v0] == gen:
            continue
        k = ncyc
        ncyc += 1
        c = vc[v0, 0]
        mask = 3 if (bits >> c) & 1 else 1
        n0 = cv[c, vp[v0, 0] ^ mask]
        c = vc[v0, 1]
        mask = 3 if (bits >> c) & 1 else 1
        n1 = cv[c, vp[v0, 1] ^ mask]
        s = 0 if n0 <= n1 else 1
        v = v0
        p = 0
        while True:
            stamp[v] = gen
            cid[v] = k
            posv[v] = p
            c = vc[v, s]
            mask = 3 if (bits >> c) & 1 else 1
            w = cv[c, vp[v, s] ^ mask]
            if w == v0:
                break
            s = 1 if vc[w, 0] == c else 0
            v = w
            p += 1
        lens[k] = p + 1
    for c in range(c_count):
        if (bits >> c) & 1:
            u1 = cv[c, 1]; w1 = cv[c, 2]; u2 = cv[c, 3]; w2 = cv[c, 0]
        else:
            u1 = cv[c, 0]; w1 = cv[c, 1]; u2 = cv[c, 2]; w2 = cv[c, 3]
        k1 = cid[u1]
        if k1 != cid[u2]:
            continue
        if simulate:
            flipped = bits ^ ((<uint64_t>1) << c)
            x0 = cv[c, 0]
            x2 = cv[c, 2]
            s = 0 if vc[x0, 0] == c else 1
            v = x0
            seen = 0
            while True:
                cc = vc[v, s]
                mask = 3 if (flipped >> cc) & 1 else 1
                w = cv[cc, vp[v, s] ^ mask]
                if w == x0:
                    break
                if w == x2:
                    seen = 1
                s = 1 if vc[w, 0] == cc else 0
                v = w
            if seen:
                type_a += 1
            else:
                type_b += 1
        else:
            length = lens[k1]
            d1 = 1 if (posv[w1] - posv[u1] + length) % length == 1 else 0
            d2 = 1 if (posv[w2] - posv[u2] + length) % length == 1 else 0
            if d1 == d2:
                type_b += 1
            else:
                type_a += 1
    out_a[0] = type_a
    out_b[0] = type_b
    out_ncyc[0] = ncyc


def enumerate_types(cv, vc, vp, lo, hi, simulate=True):
    """See ``_kernel_py.enumerate_types``."""
    cdef const int32_t[:, :] cvm = cv
    cdef const int32_t[:, :] vcm = vc
    cdef const int32_t[:, :] vpm = vp
    cdef uint64_t c_lo = lo
    cdef uint64_t c_hi = hi
    cdef bint sim = simulate
    cdef int v_count = vcm.shape[0]
    cdef Py_ssize_t n = <Py_ssize_t>(c_hi - c_lo)
    out_a_np = np.empty(n, dtype=np.uint8)
    out_b_np = np.empty(n, dtype=np.uint8)
    cdef uint8_t[:] out_a = out_a_np
    cdef uint8_t[:] out_b = out_b_np
    cid_np = np.empty(v_count, dtype=np.int32)
    pos_np = np.empty(v_count, dtype=np.int32)
    stamp_np = np.full(v_count, -1, dtype=np.int32)
    lens_np = np.empty(v_count + 1, dtype=np.int32)
    cdef int32_t[:] cid = cid_np
    cdef int32_t[:] posv = pos_np
    cdef int32_t[:] stamp = stamp_np
    cdef int32_t[:] lens = lens_np
    cdef Py_ssize_t i
    cdef int a = 0, b = 0, ncyc = 0
    with nogil:
        for i in range(n):
            _counts_bits(cvm, vcm, vpm, c_lo + <uint64_t>i, <int>i, sim,
                         cid, posv, stamp, lens, &a, &b, &ncyc)
            out_a[i] = <uint8_t>a
            out_b[i] = <uint8_t>b
    return out_a_np, out_b_np


def anneal_run(cv, vc, vp, bits0, betas, sweeps, wa, wb, seed, record_every, simulate=True):
    """See ``_kernel_py.anneal_run``."""
    cdef const int32_t[:, :] cvm = cv
    cdef const int32_t[:, :] vcm = vc
    cdef const int32_t[:, :] vpm = vp
    cdef int v_count = vcm.shape[0]
    cdef int c_count = cvm.shape[0]
    cdef const double[:] betas_m = np.ascontiguousarray(betas, dtype=np.float64)
    cdef const int64_t[:] sweeps_m = np.ascontiguousarray(sweeps, dtype=np.int64)
    cdef double c_wa = wa
    cdef double c_wb = wb
    cdef uint64_t state = <uint64_t>seed
    cdef int64_t rec_every = record_every
    cdef bint sim = simulate

    cdef uint64_t bits_int = 0
    cdef int i
    bl = bits0.tolist()
    for i in range(c_count):
        if bl[i]:
            bits_int |= (<uint64_t>1) << i

    cid_np = np.empty(v_count, dtype=np.int32)
    pos_np = np.empty(v_count, dtype=np.int32)
    stamp_np = np.full(v_count, -1, dtype=np.int32)
    lens_np = np.empty(v_count + 1, dtype=np.int32)
    cdef int32_t[:] cid = cid_np
    cdef int32_t[:] posv = pos_np
    cdef int32_t[:] stamp = stamp_np
    cdef int32_t[:] lens = lens_np

    cdef int gen = 0
    cdef int a = 0, b = 0, ncyc = 0
    _counts_bits(cvm, vcm, vpm, bits_int, gen, sim, cid, posv, stamp, lens, &a, &b, &ncyc)
    cdef double cur_e = c_wa * a + c_wb * b
    cdef uint64_t best_int = bits_int
    cdef int best_a = a, best_b = b
    cdef double best_e = cur_e
    cdef int64_t solved_step = 0 if cur_e == 0.0 else -1
    trace = [(0, a, b, ncyc, 0)]
    cdef int64_t step = 0
    cdef int64_t accepted = 0
    cdef Py_ssize_t stage
    cdef int64_t j, nprop
    cdef uint64_t z, cand
    cdef int c, a2 = 0, b2 = 0, nc2 = 0
    cdef double e2, de, beta
    cdef bint ok, done = False
    if solved_step < 0:
        for stage in range(betas_m.shape[0]):
            if done:
                break
            beta = betas_m[stage]
            nprop = sweeps_m[stage] * c_count
            for j in range(nprop):
                step += 1
                z = _sm_next(&state)
                c = <int>(z % <uint64_t>c_count)
                cand = bits_int ^ ((<uint64_t>1) << c)
                gen += 1
                _counts_bits(cvm, vcm, vpm, cand, gen, sim, cid, posv, stamp, lens, &a2, &b2, &nc2)
                e2 = c_wa * a2 + c_wb * b2
                de = e2 - cur_e
                if de <= 0.0:
                    ok = True
                else:
                    z = _sm_next(&state)
                    ok = (z >> 11) * _INV53 < exp(-beta * de)
                if ok:
                    accepted += 1
                    bits_int = cand
                    cur_e = e2
                    a = a2; b = b2; ncyc = nc2
                    if e2 < best_e:
                        best_e = e2
                        best_int = cand
                        best_a = a2; best_b = b2
                    if e2 == 0.0:
                        solved_step = step
                        done = True
                        break
                if rec_every and step % rec_every == 0:
                    trace.append((step, a, b, ncyc, accepted))
    trace.append((step, a, b, ncyc, accepted))
    best_bits = np.array([(best_int >> i) & 1 for i in range(c_count)], dtype=np.uint8)
    return (
        best_bits,
        best_a,
        best_b,
        int(solved_step),
        int(step),
        int(accepted),
        np.array(trace, dtype=np.int64).reshape(len(trace), 5),
    )
