"""Classify the catalog graphs and show which rule decided each one."""
import argparse
import time

from cuthilbert.config import Budgets
from cuthilbert.graph import named_graph
from cuthilbert.hclass import Classifier

DEFAULT = ["K4", "W4", "W5", "Prism", "K3,3", "K5", "K5minusE", "K5perp", "K6", "K6minusE",
           "H10", "H10minus", "H11", "Dodecahedron", "Petersen"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=DEFAULT)
    ap.add_argument("--direct-edges", type=int, default=Budgets().direct_edges)
    args = ap.parse_args()

    clf = Classifier(Budgets(direct_edges=args.direct_edges))
    for name in args.names:
        g = named_graph(name)
        t = time.perf_counter()
        v = clf.classify(g)
        print(f"{name:13s} n={g.n:2d} m={g.m:2d}  {v.status:7s} {' > '.join(v.provenance):28s}"
              f" {time.perf_counter() - t:6.1f}s")


if __name__ == "__main__":
    main()
