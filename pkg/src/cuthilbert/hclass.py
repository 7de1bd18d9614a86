"""Deciding whether the cuts of a graph form a Hilbert basis.

Rules are tried in order and the first conclusive one wins:

1. normalise (drop parallel copies and isolated vertices)
2. a K6-minus-edge minor excludes the graph
3. K5-minor-free graphs, and K5 itself, are members
4. K5perp-minor-free graphs are members
5. graphs isomorphic to a catalogued non-member are excluded, with the
   stored vector revalidated
6. clique sums over at most three vertices of members are members
7. the 2-sum rule (members on both sides, with and without the shared
   edge, plus the lattice endpoint property on one side)
8. direct Hilbert basis computation within budget
9. otherwise unknown
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .certificates import matching_builtin
from .config import Budgets
from .errors import BudgetExceeded, PreconditionFailed
from .graph import (
    Graph,
    build_graph,
    components,
    connectivity_report,
    delete_edge,
    induced_subgraph,
    named_graph,
    separators,
    simplify,
)
from .hilbert import NO, YES, HilbertReport, is_hilbert_basis, validate_certificate
from .iso import IsoCache, are_isomorphic
from .minors import MinorModel, has_minor

IN, OUT, UNKNOWN = "IN", "OUT", "UNKNOWN"

# rule tags and the result each one rests on
RULES = {
    "normalize": "parallel edges and isolated vertices do not change the answer",
    "k6e-minor": "a K6-minus-edge minor forces non-membership",
    "k5-minor-free": "K5-minor-free graphs are members (Seymour)",
    "k5": "K5 is a member",
    "k5perp-minor-free": "K5perp-minor-free graphs are members",
    "catalog": "catalogued non-member with a stored certificate vector",
    "clique-sum": "clique sums along at most 3 vertices preserve membership",
    "two-sum": "2-sum of members whose edge deletions are members, one side with the lattice endpoint property",
    "direct": "minimal Hilbert basis computed directly",
    "unknown": "no rule was conclusive within budget",
}

CATALOG_OUT = ("K6", "K6minusE", "H10minus", "H11")
RULE_ORDER = ("k6e-minor", "k5-minor-free", "k5perp-minor-free", "catalog", "clique-sum", "two-sum", "direct")


@dataclass
class Verdict:
    status: str
    provenance: list[str] = field(default_factory=list)
    certificate: Any = None
    parts: list["Verdict"] = field(default_factory=list)

    def to_json(self) -> dict:
        cert = self.certificate
        if isinstance(cert, MinorModel):
            cert = {"minor_model": cert.to_json()}
        elif isinstance(cert, HilbertReport):
            cert = {"minimal_basis": [list(v) for v in cert.minimal_basis],
                    "quasi_elements": [list(v) for v in cert.quasi_elements]}
        elif isinstance(cert, tuple):
            cert = {"vector": [str(v) for v in cert]}
        out = {"status": self.status, "rules": list(self.provenance), "certificate": cert}
        if self.parts:
            out["parts"] = [p.to_json() for p in self.parts]
        return out


# --------------------------------------------------------------------------
# decomposition along small separators


@dataclass
class SumNode:
    """A decomposition tree node; leaves have ``kind == "leaf"``.

    ``kind`` is one of leaf, 0-sum, 1-sum, clique-sum (separator of 2 or 3
    mutually adjacent vertices, edges kept in every part) or 2-sum
    (non-adjacent pair, ``virtual`` edge added to both parts).
    """

    graph: Graph
    kind: str = "leaf"
    separator: tuple[str, ...] = ()
    virtual: tuple[str, str] | None = None
    children: list["SumNode"] = field(default_factory=list)

    def leaves(self) -> list[Graph]:
        if self.kind == "leaf":
            return [self.graph]
        return [x for c in self.children for x in c.leaves()]

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "vertices": list(self.graph.vertices),
                     "edges": [list(e) for e in self.graph.edges]}
        if self.kind != "leaf":
            out["separator"] = list(self.separator)
            if self.virtual:
                out["virtual_edge"] = list(self.virtual)
            out["children"] = [c.to_json() for c in self.children]
        return out


def _is_cycle(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(g.degree(v) == 2 for v in g.vertices) and len(components(g)) == 1


def _part(g: Graph, side, sep, extra=()) -> Graph:
    h = induced_subgraph(g, set(side) | set(sep))
    if extra:
        h = build_graph(list(h.edges) + list(extra), h.vertices)
    return h


def split_once(g: Graph, three_cliques: bool = True, kinds=None) -> SumNode | None:
    """The first split in the fixed order 0-sum, 1-sum, 2-separations, triangles.

    Within one kind the lexicographically least separator is used; the first
    component of g minus the separator (in vertex order) becomes the first
    part, everything else the second.  ``kinds`` restricts the split types.
    """
    kinds = set(kinds) if kinds is not None else {"0-sum", "1-sum", "clique-sum", "2-sum"}
    comps = components(g)
    if len(comps) > 1:
        if "0-sum" not in kinds:
            return None
        return SumNode(g, "0-sum", (), None, [SumNode(induced_subgraph(g, c)) for c in comps])
    if g.n <= 3 or _is_cycle(g):
        return None
    sizes = (1, 2, 3) if three_cliques else (1, 2)
    for size in sizes:
        for sep in separators(g, size):
            if size == 1:
                kind, extra = "1-sum", ()
            elif size == 2 and not g.has_edge(*sep):
                kind, extra = "2-sum", (sep,)
            elif size == 3 and not all(g.has_edge(a, b) for i, a in enumerate(sep) for b in sep[i + 1:]):
                continue
            else:
                kind, extra = "clique-sum", ()  # separator edges land in both induced parts
            if kind not in kinds:
                continue
            rest = components(g, removed_vertices=sep)
            first = rest[0]
            second = [v for c in rest[1:] for v in c]
            parts = [_part(g, first, sep, extra), _part(g, second, sep, extra)]
            virtual = tuple(sep) if kind == "2-sum" else None
            return SumNode(g, kind, tuple(sep), virtual, [SumNode(p) for p in parts])
    return None


def decompose_sums(g: Graph, three_cliques: bool = True) -> SumNode:
    """Recursive splitting until every leaf is 3-connected, a cycle or tiny."""
    node = split_once(g, three_cliques)
    if node is None:
        return SumNode(g)
    node.children = [decompose_sums(c.graph, three_cliques) for c in node.children]
    return node


# --------------------------------------------------------------------------
# the classifier


class Classifier:
    def __init__(self, budgets: Budgets | None = None, order: tuple[str, ...] = RULE_ORDER):
        self.budgets = budgets or Budgets()
        self.order = order
        self.cache = IsoCache()
        self._catalog = [(name, named_graph(name)) for name in CATALOG_OUT]

    def _minor(self, g: Graph, pattern: str):
        return has_minor(g, pattern, self.budgets.minor_nodes)

    def lep_credential(self, g: Graph) -> str | None:
        """A proven lattice-endpoint-property class containing g, if any."""
        try:
            if not self._minor(g, "K5").present:
                return "k5-minor-free"
        except BudgetExceeded:
            return None
        if are_isomorphic(g, named_graph("K5")):
            return "k5"
        return None

    def classify(self, g: Graph) -> Verdict:
        h = simplify(g)
        prov = ["normalize"] if h != g else []
        cached = self.cache.get(h)
        if cached is not None:
            return Verdict(cached.status, prov + cached.provenance, cached.certificate, cached.parts)
        v = self._classify(h)
        self.cache.put(h, v)
        return Verdict(v.status, prov + v.provenance, v.certificate, v.parts)

    def _classify(self, g: Graph) -> Verdict:
        if g.m == 0:
            return Verdict(IN, ["direct"])
        self._skipped: list[str] = []
        for rule in self.order:
            v = getattr(self, "_rule_" + rule.replace("-", "_"))(g)
            if v is not None:
                return v
        return Verdict(UNKNOWN, ["unknown"] + self._skipped)

    def _guarded(self, tag, fn):
        try:
            return fn()
        except BudgetExceeded:
            self._skipped.append(tag)
            return None

    def _rule_k6e_minor(self, g):
        found = self._guarded("k6e-minor", lambda: self._minor(g, "K6minusE"))
        if found is not None and found.present:
            return Verdict(OUT, ["k6e-minor"], found.model)

    def _rule_k5_minor_free(self, g):
        found = self._guarded("k5-minor-free", lambda: self._minor(g, "K5"))
        if found is None:
            return None
        if not found.present:
            return Verdict(IN, ["k5-minor-free"])
        if are_isomorphic(g, named_graph("K5")):
            return Verdict(IN, ["k5"])

    def _rule_k5perp_minor_free(self, g):
        found = self._guarded("k5perp-minor-free", lambda: self._minor(g, "K5perp"))
        if found is not None and not found.present:
            return Verdict(IN, ["k5perp-minor-free"])

    def _rule_catalog(self, g):
        for name, host in self._catalog:
            if not are_isomorphic(g, host):
                continue
            if name in ("K6", "K6minusE"):
                found = self._minor(g, "K6minusE")
                return Verdict(OUT, ["catalog", "k6e-minor"], found.model)
            hit = matching_builtin(g)
            if hit is None or not validate_certificate(g, hit[1], self.budgets.intcone_nodes):
                raise AssertionError(f"catalog certificate for {name} failed revalidation")
            return Verdict(OUT, ["catalog"], hit[1])

    def _rule_clique_sum(self, g):
        node = split_once(g, self.budgets.three_clique_sums, ("0-sum", "1-sum", "clique-sum"))
        if node is None:
            return None
        parts = [self.classify(c.graph) for c in node.children]
        if all(p.status == IN for p in parts):
            return Verdict(IN, ["clique-sum"], {"kind": node.kind, "separator": list(node.separator)}, parts)

    def _rule_two_sum(self, g):
        node = split_once(g, self.budgets.three_clique_sums, ("2-sum",))
        if node is None:
            return None
        g1, g2 = (c.graph for c in node.children)
        try:
            check = self.two_sum_rule_check(g1, g2, node.virtual)
        except PreconditionFailed:
            return None
        if check.applies:
            return Verdict(IN, ["two-sum"], {"separator": list(node.separator)}, check.parts)

    def _rule_direct(self, g):
        if g.m > self.budgets.direct_edges:
            return None
        res = is_hilbert_basis(g, self.budgets.intcone_nodes, max_dim=self.budgets.hilbert_dim)
        if res.verdict == YES:
            return Verdict(IN, ["direct"], res.report)
        if res.verdict == NO:
            if not validate_certificate(g, res.certificate, self.budgets.intcone_nodes):
                raise AssertionError("quasi-Hilbert element failed revalidation")
            return Verdict(OUT, ["direct"], res.certificate)

    def two_sum_rule_check(self, g1: Graph, g2: Graph, f) -> "TwoSumCheck":
        u, v = f
        for g in (g1, g2):
            if not g.has_edge(u, v):
                raise PreconditionFailed(f"edge {u}-{v} missing from a summand")
            if not connectivity_report(g).two_connected:
                raise PreconditionFailed("summands of the 2-sum rule must be 2-connected")
        first = self._orientation(g1, g2, f)
        if first.applies:
            return first
        second = self._orientation(g2, g1, f)
        if second.applies:
            return second
        return first

    def _orientation(self, a: Graph, b: Graph, f) -> "TwoSumCheck":
        ia, ib = a.edge_index(*f), b.edge_index(*f)
        checks = [("G1", a), ("G2", b), ("G1-f", delete_edge(a, ia)), ("G2-f", delete_edge(b, ib))]
        parts = []
        for tag, g in checks:
            verdict = self.classify(g)
            parts.append(verdict)
            if verdict.status != IN:
                return TwoSumCheck(False, tag, parts)
        if self.lep_credential(a) is None:
            return TwoSumCheck(False, "lep-G1", parts)
        return TwoSumCheck(True, None, parts)


@dataclass
class TwoSumCheck:
    applies: bool
    failed_hypothesis: str | None = None
    parts: list[Verdict] = field(default_factory=list)


def classify(g: Graph, budgets: Budgets | None = None) -> Verdict:
    return Classifier(budgets).classify(g)


def two_sum_rule_check(g1: Graph, g2: Graph, f, budgets: Budgets | None = None) -> TwoSumCheck:
    return Classifier(budgets).two_sum_rule_check(g1, g2, f)
