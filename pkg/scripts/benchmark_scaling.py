#!/usr/bin/env python3
"""Benchmark rigid_set scaling and the full decision on random caterpillars.

Prints one line per size with the measured wall time, then the fitted
log-log slope; optionally times a single end-to-end decide.

Example:
    python3 scripts/benchmark_scaling.py --sizes 500 1000 2000 4000 --decide 5000
"""

from __future__ import annotations

import argparse
import math
import random
import time

from kpvcr import CaterpillarForest, TokenSet, is_ts_reachable, partition, rigid_set


def random_caterpillar(spine: int, seed: int, prob: float) -> CaterpillarForest:
    rng = random.Random(seed)
    leaves = {
        i: rng.randint(1, 2) for i in range(1, spine + 1) if rng.random() < prob
    }
    return CaterpillarForest.from_counts(spine, leaves)


def graph_with_n(target: int, seed: int, prob: float) -> CaterpillarForest:
    spine = target // 2
    G = random_caterpillar(spine, seed, prob)
    while G.n < target:
        spine += max(1, (target - G.n) * 2 // 5)
        G = random_caterpillar(spine, seed, prob)
    return G


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000, 4000])
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--leaf-prob", type=float, default=0.4)
    ap.add_argument("--decide", type=int, default=None, metavar="N",
                    help="also time one is_ts_reachable call at this size")
    args = ap.parse_args()

    points: list[tuple[int, float]] = []
    for target in args.sizes:
        G = graph_with_n(target, args.seed, args.leaf_prob)
        comp = G.components[0]
        cover = TokenSet.of(args.k, partition(G, args.k, comp.spine[0]).representatives)
        t0 = time.perf_counter()
        report = rigid_set(G, cover)
        dt = time.perf_counter() - t0
        points.append((G.n, dt))
        print(f"n={G.n:6d} tokens={len(cover):5d} rigid={len(report.rigid):5d} "
              f"rigid_set {dt:8.2f}s")

    if len(points) >= 2:
        xs = [math.log(n) for n, _ in points]
        ys = [math.log(max(t, 1e-9)) for _, t in points]
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum(
            (x - mx) ** 2 for x in xs
        )
        print(f"log-log slope: {slope:.2f}")

    if args.decide:
        G = graph_with_n(args.decide, args.seed, args.leaf_prob)
        comp = G.components[0]
        I = TokenSet.of(args.k, partition(G, args.k, comp.spine[0]).representatives)
        J = TokenSet.of(args.k, partition(G, args.k, comp.spine[-1]).representatives)
        t0 = time.perf_counter()
        verdict = is_ts_reachable(G, I, J)
        print(f"decide n={G.n}: {'YES' if verdict else 'NO'} "
              f"in {time.perf_counter() - t0:.2f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
