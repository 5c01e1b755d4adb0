"""Sweep the node switching value on the demo graph and report how much of
the corpus lands on disease nodes, for uniform and special-set switching."""

import argparse

from hetn2v import (BiasParams, SpecialSet, Uniform, WalkConfig, demo_paths, generate_walks,
                    load_graph, walk_stats)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--values", type=float, nargs="+", default=[4, 2, 1, 0.5, 0.25, 0.1, 0.05])
    ap.add_argument("--walk-length", type=int, default=80)
    ap.add_argument("--num-walks", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = load_graph(*demo_paths())
    disease = g.node_type_names.index("disease")
    cfg = WalkConfig(args.walk_length, args.num_walks, args.seed)
    print(f"{'s':>6} {'uniform':>10} {'switch':>8} {'special':>10} {'switch':>8}")
    for s in args.values:
        row = [f"{s:6g}"]
        for model in (Uniform(s), SpecialSet({disease}, to_special=s, from_special=1.0)):
            r = walk_stats(generate_walks(g, BiasParams(node_switch=model), cfg), g)
            row += [f"{r.node_type_fractions['disease']:10.4f}", f"{r.node_switch_rate:8.4f}"]
        print(" ".join(row))


if __name__ == "__main__":
    main()
