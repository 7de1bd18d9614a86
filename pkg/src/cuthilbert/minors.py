"""Minor containment for a small closed catalog of patterns.

For a connected host G and a pattern H on k vertices, H is a minor of G iff
V(G) splits into k connected parts whose quotient graph contains H as a
spanning subgraph (unused vertices can always be absorbed by a neighbouring
part).  The search contracts edges until k vertices remain.

Pruning:

* a vertex whose degree is below the minimum degree of H cannot be a part
  on its own, so it must be merged with a neighbour (forced branching);
* otherwise the chosen vertex is either frozen as a singleton part or
  merged with a neighbour;
* every contraction removes at least one edge, so m - (n - k) >= |E(H)|;
* frozen vertices keep degree >= min degree of H.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import BudgetExceeded, UnknownName
from .graph import Graph, components, label_key, named_graph, sort_labels

PATTERNS = ("K4", "K5", "K5perp", "K6", "K6minusE")
DEFAULT_MINOR_BUDGET = 2_000_000


@dataclass
class MinorModel:
    branch_sets: dict[str, frozenset[str]]
    edges: dict[tuple[str, str], int]  # pattern edge -> host edge index

    def to_json(self) -> dict:
        return {
            "branch_sets": {k: sort_labels(v) for k, v in self.branch_sets.items()},
            "edges": [[a, b, i] for (a, b), i in self.edges.items()],
        }


@dataclass
class MinorResult:
    present: bool
    model: MinorModel | None = None
    nodes: int = 0

    def __bool__(self):
        return self.present


def pattern_graph(name: str) -> Graph:
    if name not in PATTERNS:
        raise UnknownName(f"unknown minor pattern {name!r}; choose from {', '.join(PATTERNS)}")
    return named_graph(name)


def validate_model(host: Graph, pattern: Graph, model: MinorModel) -> bool:
    """Disjoint connected branch sets, each pattern edge realised by a host edge."""
    sets = model.branch_sets
    if set(sets) != set(pattern.vertices):
        return False
    seen: set[str] = set()
    for part in sets.values():
        if not part or seen & part or not part <= set(host.vertices):
            return False
        seen |= part
        start = next(iter(part))
        reach, stack = {start}, [start]
        while stack:
            u = stack.pop()
            for w in host.neighbors(u):
                if w in part and w not in reach:
                    reach.add(w)
                    stack.append(w)
        if reach != part:
            return False
    for a, b in pattern.edges:
        key = (a, b) if (a, b) in model.edges else (b, a)
        if key not in model.edges:
            return False
        u, v = host.edges[model.edges[key]]
        if not ((u in sets[a] and v in sets[b]) or (u in sets[b] and v in sets[a])):
            return False
    return True


def _spanning_embedding(adj: dict[str, set[str]], pattern: Graph) -> dict[str, str] | None:
    """Bijection pattern -> quotient vertices mapping pattern edges to edges."""
    verts = sort_labels(adj)
    pv = pattern.vertices
    pedges = [(a, b) for a, b in pattern.edges]
    for perm in permutations(verts):
        phi = dict(zip(pv, perm))
        if all(phi[b] in adj[phi[a]] for a, b in pedges):
            return phi
    return None


class _Search:
    def __init__(self, pattern: Graph, budget: int):
        self.pattern = pattern
        self.k = pattern.n
        self.e = pattern.m
        self.delta = min(pattern.degree(v) for v in pattern.vertices)
        self.budget = budget
        self.nodes = 0
        self.failed: set = set()

    def run(self, adj: dict[str, set[str]], parts: dict[str, frozenset[str]], frozen: frozenset[str]):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"minor search exceeded {self.budget} nodes")
        n = len(adj)
        m = sum(len(s) for s in adj.values()) // 2
        if n < self.k or m - (n - self.k) < self.e:
            return None
        if any(len(adj[v]) < self.delta for v in frozen):
            return None
        if n == self.k:
            phi = _spanning_embedding(adj, self.pattern)
            return (phi, parts) if phi is not None else None
        if len(frozen) >= self.k:
            return None
        key = (frozenset(frozenset((u, w)) for u in adj for w in adj[u]), frozen)
        if key in self.failed:
            return None
        free = [v for v in adj if v not in frozen]
        v = min(free, key=lambda u: (len(adj[u]), label_key(u)))
        targets = sorted((w for w in adj[v] if w not in frozen), key=label_key)
        forced = len(adj[v]) < self.delta
        if forced and len(adj[v]) == 2 and len(targets) == 2:
            targets = targets[:1]  # suppressing a degree-2 vertex gives the same graph either way
        for w in targets:
            new_adj, new_parts = _contract(adj, parts, v, w)
            hit = self.run(new_adj, new_parts, frozen)
            if hit:
                return hit
        if not forced:
            hit = self.run(adj, parts, frozen | {v})
            if hit:
                return hit
        self.failed.add(key)
        return None


def _contract(adj, parts, v, w):
    keep, gone = (v, w) if label_key(v) < label_key(w) else (w, v)
    new = {u: set(s) for u, s in adj.items() if u != gone}
    for u in adj[gone]:
        if u == keep:
            continue
        new[u].discard(gone)
        new[u].add(keep)
        new[keep].add(u)
    new[keep].discard(gone)
    new_parts = dict(parts)
    new_parts[keep] = parts[keep] | parts[gone]
    del new_parts[gone]
    return new, new_parts


def has_minor(host: Graph, pattern: str, budget: int = DEFAULT_MINOR_BUDGET) -> MinorResult:
    """Exact H-minor test; the returned model is validated before returning."""
    pat = pattern_graph(pattern)
    if pattern == "K5perp" and is_minor_free(host, "K5", budget):
        # K5perp / K5 = K5, so a K5-free host cannot hold K5perp; the K5
        # search is much cheaper thanks to the degree-4 forcing rule
        return MinorResult(False)
    search = _Search(pat, budget)
    for comp in components(host):
        comp = set(comp)
        adj = {v: {w for w in host.neighbors(v) if w in comp} for v in comp}
        parts = {v: frozenset([v]) for v in comp}
        hit = search.run(adj, parts, frozenset())
        if hit:
            phi, parts = hit
            sets = {p: parts[phi[p]] for p in pat.vertices}
            owner = {x: p for p, s in sets.items() for x in s}
            edges = {}
            for a, b in pat.edges:
                for i, (u, v) in enumerate(host.edges):
                    if {owner.get(u), owner.get(v)} == {a, b}:
                        edges[(a, b)] = i
                        break
            model = MinorModel(sets, edges)
            if not validate_model(host, pat, model):
                raise AssertionError("minor search produced an invalid model")
            return MinorResult(True, model, search.nodes)
    return MinorResult(False, None, search.nodes)


def is_minor_free(host: Graph, pattern: str, budget: int = DEFAULT_MINOR_BUDGET) -> bool:
    return not has_minor(host, pattern, budget).present
