"""Random lattice-endpoint probes on K5perp at its distinguished edge.

Prints how many endpoints were zero, in the lattice, or violations, and the
first few violating vectors if any turn up.  Evidence only: a clean run does
not prove the property.
"""
import argparse
from collections import Counter
from dataclasses import dataclass

from cuthilbert.graph import named_graph
from cuthilbert.hilbert import lep_probe


@dataclass
class ProbeConfig:
    graph: str = "K5perp"
    edge: tuple = ("5", "6")
    trials: int = 500
    seed: int = 0
    show: int = 3


def main():
    cfg = ProbeConfig()
    ap = argparse.ArgumentParser(description="lattice endpoint probes")
    ap.add_argument("--graph", default=cfg.graph)
    ap.add_argument("--edge", nargs=2, default=cfg.edge)
    ap.add_argument("--trials", type=int, default=cfg.trials)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    args = ap.parse_args()
    cfg = ProbeConfig(args.graph, tuple(args.edge), args.trials, args.seed)

    g = named_graph(cfg.graph)
    f = g.edge_index(*cfg.edge)
    res = lep_probe(g, f, trials=cfg.trials, seed=cfg.seed)
    tags = Counter(tag for _, tag in res.endpoints_checked)
    print(f"{cfg.graph}, edge {cfg.edge}: {res.trials} probes, {res.skipped} skipped")
    print("endpoints: " + ", ".join(f"{k}={tags[k]}" for k in ("zero", "in_lattice", "violation")))
    for x, gamma in res.violations[:cfg.show]:
        print(f"  gamma={gamma}  x={' '.join(str(v) for v in x)}")


if __name__ == "__main__":
    main()
