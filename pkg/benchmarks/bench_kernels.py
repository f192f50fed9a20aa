#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--full]

Times the three hot paths (single-labeling classification, batch
enumeration, annealing) on corpus graphs and prints one table row per
(task, implementation). ``--full`` also runs the 2^21 bridged-gadget
enumeration on the compiled kernel.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from cyclecover.graphs import generate_named
from cyclecover.kernels import implementations
from cyclecover.reduced import build_reduced


def timeit(fn, repeat: int = 1) -> float:
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def bench_classify(impl, rs, n_labelings: int = 2000) -> float:
    cv, vc, vp = rs.kernel_tables
    rng = random.Random(7)
    arrs = [
        np.array(
            [(bits >> i) & 1 for i in range(rs.clique_count)], dtype=np.uint8
        )
        for bits in (rng.getrandbits(rs.clique_count) for _ in range(n_labelings))
    ]

    def run():
        for arr in arrs:
            cid, pos, _, starts = impl.build_walk(cv, vc, vp, arr)
            impl.classify(cv, vc, vp, arr, cid, pos, starts, True)

    dt = timeit(run)
    return n_labelings / dt


def bench_enumerate(impl, rs, hi: int, simulate: bool) -> float:
    cv, vc, vp = rs.kernel_tables
    dt = timeit(lambda: impl.enumerate_types(cv, vc, vp, 0, hi, simulate))
    return hi / dt


def bench_anneal(impl, rs, proposals_hint: int = 20000) -> float:
    # rs must be bridged: its chains never reach zero energy, so the whole
    # schedule runs and the timing is stable
    cv, vc, vp = rs.kernel_tables
    bits0 = np.zeros(rs.clique_count, dtype=np.uint8)
    betas = np.array([1.0], dtype=np.float64)
    sweeps = np.array([proposals_hint // rs.clique_count], dtype=np.int64)

    def run():
        impl.anneal_run(cv, vc, vp, bits0, betas, sweeps, 10.0, 1.0, 11, 0)

    steps = int(sweeps[0]) * rs.clique_count
    dt = timeit(run)
    return steps / dt


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true", help="include the 2^21 enumeration")
    args = parser.parse_args()

    impls = implementations()
    print(f"available implementations: {', '.join(sorted(impls))}")
    print(f"{'task':44s} {'impl':4s} {'rate':>16s}")

    rs_pet = build_reduced(generate_named("petersen"))
    rs_des = build_reduced(generate_named("desargues"))

    for name, rs in (("petersen", rs_pet), ("desargues", rs_des)):
        for key, impl in sorted(impls.items()):
            rate = bench_classify(impl, rs)
            print(f"classify ({name}, flip-sim){'':14s} {key:4s} {rate:>12,.0f}/s")

    for key, impl in sorted(impls.items()):
        hi = 1 << 15
        for simulate in (True, False):
            mode = "flip-sim" if simulate else "interleave"
            rate = bench_enumerate(impl, rs_pet, hi, simulate)
            print(f"enumerate 2^15 (petersen, {mode}){'':9s} {key:4s} {rate:>12,.0f}/s")

    rs_bridged = build_reduced(generate_named("bridged_gadget"))
    for key, impl in sorted(impls.items()):
        rate = bench_anneal(impl, rs_bridged)
        print(f"anneal proposals (bridged_gadget){'':11s} {key:4s} {rate:>12,.0f}/s")

    if args.full and "c" in impls:
        rs = build_reduced(generate_named("bridged_gadget"))
        cv, vc, vp = rs.kernel_tables
        t0 = time.perf_counter()
        a, b = impls["c"].enumerate_types(cv, vc, vp, 0, 1 << 21, False)
        dt = time.perf_counter() - t0
        free = int(((a == 0) & (b == 0)).sum())
        print(
            f"full 2^21 bridged enumeration (c, interleave): {dt:.2f}s, "
            f"{free} intersection-free"
        )


if __name__ == "__main__":
    main()
