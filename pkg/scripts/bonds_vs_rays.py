"""Compare bonds with the extreme rays of the cut cone, graph by graph."""
import argparse
import random

from cuthilbert.verify import bonds_match_rays, connected_graphs_upto_iso, random_connected_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6, help="exhaustive up to this many vertices")
    ap.add_argument("--random", type=int, default=50, help="random graphs on max-n + 1 vertices")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for n in range(2, args.max_n + 1):
        graphs = connected_graphs_upto_iso(n)
        bad = sum(not bonds_match_rays(g) for g in graphs)
        print(f"n={n}: {len(graphs)} graphs, {bad} mismatches")
    rng = random.Random(args.seed)
    bad = sum(not bonds_match_rays(random_connected_graph(args.max_n + 1, rng)) for _ in range(args.random))
    print(f"n={args.max_n + 1}: {args.random} random graphs, {bad} mismatches")


if __name__ == "__main__":
    main()
