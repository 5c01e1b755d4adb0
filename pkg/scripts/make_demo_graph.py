"""Regenerate the bundled two-type demo graph (genes and diseases)."""

import argparse
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "hetn2v" / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=OUT)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    genes = [f"G{i:02d}" for i in range(80)]
    diseases = [f"D{i:02d}" for i in range(20)]
    edges = []
    # ring keeps the gene layer connected
    for i in range(len(genes)):
        edges.append((genes[i], genes[(i + 1) % len(genes)], "interacts", 1.0))
    for i in range(len(genes)):
        for j in range(i + 2, len(genes)):
            if rng.random() < 0.08:
                edges.append((genes[i], genes[j], "interacts", 1.0))
                if rng.random() < 0.25:
                    edges.append((genes[i], genes[j], "coexpressed", 0.5))
    for d in diseases:
        for g in rng.choice(genes, size=2, replace=False):
            edges.append((d, str(g), "associated", 1.0))
    for i in range(len(diseases)):
        for j in range(i + 1, len(diseases)):
            if rng.random() < 0.05:
                edges.append((diseases[i], diseases[j], "similar", 1.0))

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "demo_edges.tsv", "w") as fh:
        fh.write("src\tdst\tedge_type\tweight\n")
        for a, b, t, w in edges:
            fh.write(f"{a}\t{b}\t{t}\t{w}\n")
    with open(args.out / "demo_node_types.tsv", "w") as fh:
        fh.write("node\tnode_type\n")
        for g in genes:
            fh.write(f"{g}\tgene\n")
        for d in diseases:
            fh.write(f"{d}\tdisease\n")
    print(f"{len(edges)} edges, {len(genes) + len(diseases)} nodes -> {args.out}")


if __name__ == "__main__":
    main()
