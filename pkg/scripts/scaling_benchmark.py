"""Time generate_walks against total work k*m*n on random graphs of fixed
mean degree."""

import argparse
import time

import numpy as np

from hetn2v import BiasParams, HetMultigraph, Uniform, WalkConfig, generate_walks


def random_graph(n, mean_degree, rng):
    m = n * mean_degree // 2
    src = rng.integers(0, n, m)
    dst = (src + rng.integers(1, n, m)) % n
    return HetMultigraph.from_edges(src, dst, rng.integers(0, 3, m), rng.uniform(0.5, 2, m),
                                    rng.integers(0, 3, n))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mean-degree", type=int, default=8)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    params = BiasParams(0.5, 2.0, Uniform(0.5), Uniform(2.0))
    generate_walks(random_graph(100, 4, rng), params, WalkConfig(5, 1))

    print(f"{'n':>7} {'m':>3} {'k':>4} {'k*m*n':>10} {'seconds':>9} {'ns/step':>8}")
    for n, m, k in [(1000, 2, 20), (2000, 2, 20), (2000, 4, 20), (2000, 4, 40),
                    (4000, 4, 40), (8000, 4, 40), (8000, 8, 80)]:
        g = random_graph(n, args.mean_degree, rng)
        cfg = WalkConfig(k, m, seed=1, threads=args.threads)
        best = np.inf
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            generate_walks(g, params, cfg)
            best = min(best, time.perf_counter() - t0)
        work = k * m * n
        print(f"{n:7d} {m:3d} {k:4d} {work:10d} {best:9.4f} {1e9 * best / work:8.1f}")


if __name__ == "__main__":
    main()
