"""Labeled multigraphs, edit operations, sums, and cut/bond/circuit enumeration.

Edge order is significant everywhere: edge ``i`` is coordinate ``i`` of every
edge vector bound to the graph.  Cut incidences are also kept as integer
bitmasks (bit ``i`` = edge ``i``) because enumeration is XOR-heavy.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadCount,
    BadIndex,
    BudgetExceeded,
    LoopRejected,
    NotAClique,
    SizeMismatch,
    UnknownName,
)

DEFAULT_CUT_BUDGET = 20


def label_key(label: str):
    """Natural sort key: numeric labels by value, then everything else."""
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


def sort_labels(labels: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(labels, key=label_key))


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        for u, v in self.edges:
            if u == v:
                raise LoopRejected(f"loop at {u!r}")
            if u not in known or v not in known:
                raise ValueError(f"edge ({u}, {v}) uses an unlisted vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def stars(self) -> tuple[int, ...]:
        """Edge bitmask of delta({v}) for each vertex, in vertex order."""
        out = [0] * self.n
        for i, (u, v) in enumerate(self.edges):
            out[self.index[u]] |= 1 << i
            out[self.index[v]] |= 1 << i
        return tuple(out)

    @cached_property
    def adjacency(self) -> dict[str, list[tuple[str, int]]]:
        adj: dict[str, list[tuple[str, int]]] = {v: [] for v in self.vertices}
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return adj

    def neighbors(self, v: str) -> set[str]:
        return {w for w, _ in self.adjacency[v]}

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = frozenset((u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def has_edge(self, u: str, v: str) -> bool:
        return any(w == v for w, _ in self.adjacency[u])

    def edge_index(self, u: str, v: str) -> int:
        """Index of the first edge joining u and v."""
        for i, (a, b) in enumerate(self.edges):
            if {a, b} == {u, v}:
                return i
        raise BadIndex(f"no edge between {u!r} and {v!r}")

    def edge_mask(self, edges: Iterable[int]) -> int:
        mask = 0
        for i in edges:
            mask |= 1 << i
        return mask

    def __str__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, order=True)
class Cut:
    """A cut delta(S); ``generator`` is the canonical side, ``incidence`` 0/1."""

    incidence: tuple[int, ...]
    generator: tuple[str, ...]

    @property
    def mask(self) -> int:
        return sum(1 << i for i, b in enumerate(self.incidence) if b)

    @property
    def size(self) -> int:
        return sum(self.incidence)

    def __len__(self):
        return len(self.incidence)


@dataclass(frozen=True)
class Circuit:
    edges: tuple[int, ...]

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    two_connected: bool
    three_connected: bool


# --------------------------------------------------------------------------
# construction


def build_graph(edge_list: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> Graph:
    """Graph with vertices in first-appearance order (explicit ``vertices`` first)."""
    order: dict[str, None] = {}
    for v in vertices:
        order[str(v)] = None
    edges = []
    for pair in edge_list:
        u, v = (str(pair[0]), str(pair[1]))
        if u == v:
            raise LoopRejected(f"loop at {u!r}")
        order.setdefault(u, None)
        order.setdefault(v, None)
        edges.append((u, v))
    return Graph(tuple(order), tuple(edges))


def _pairs(labels):
    return list(itertools.combinations(labels, 2))


def _labels(k, start=1):
    return [str(i) for i in range(start, start + k)]


def complete_graph(k: int) -> Graph:
    return build_graph(_pairs(_labels(k)), _labels(k))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise BadCount("cycles need at least 3 vertices")
    vs = _labels(k)
    return build_graph([(vs[i], vs[i + 1]) for i in range(k - 1)] + [(vs[-1], vs[0])])


def path_graph(k: int) -> Graph:
    vs = _labels(k)
    return build_graph([(vs[i], vs[i + 1]) for i in range(k - 1)], vs)


def wheel_graph(k: int) -> Graph:
    """Rim cycle 1..k, hub k+1; edges: rim in order, then spokes."""
    rim = cycle_graph(k)
    hub = str(k + 1)
    return build_graph(list(rim.edges) + [(v, hub) for v in rim.vertices])


def complete_bipartite(a: int, b: int) -> Graph:
    left, right = _labels(a), _labels(b, a + 1)
    return build_graph([(u, v) for u in left for v in right])


K5PERP_EDGES = [
    ("1", "2"), ("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"), ("3", "4"),
    ("1", "5"), ("2", "5"), ("3", "6"), ("4", "6"), ("5", "6"),
]

PETERSEN_EDGES = [
    ("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1"),
    ("1", "6"), ("2", "7"), ("3", "8"), ("4", "9"), ("5", "10"),
    ("6", "8"), ("8", "10"), ("10", "7"), ("7", "9"), ("9", "6"),
]


def _dodecahedron() -> Graph:
    # outer 5-cycle, middle 10-cycle, inner 5-cycle
    edges = []
    outer = [str(i) for i in range(1, 6)]
    middle = [str(i) for i in range(6, 16)]
    inner = [str(i) for i in range(16, 21)]
    for i in range(5):
        edges.append((outer[i], outer[(i + 1) % 5]))
    for i in range(10):
        edges.append((middle[i], middle[(i + 1) % 10]))
    for i in range(5):
        edges.append((inner[i], inner[(i + 1) % 5]))
    for i in range(5):
        edges.append((outer[i], middle[2 * i]))
        edges.append((middle[2 * i + 1], inner[i]))
    return build_graph(edges)


def _prism() -> Graph:
    return build_graph([("1", "2"), ("2", "3"), ("1", "3"),
                        ("4", "5"), ("5", "6"), ("4", "6"),
                        ("1", "4"), ("2", "5"), ("3", "6")])


def _k5perp_twins(mode: str) -> Graph:
    g = named_graph("K5perp")
    return compose(g, g, {"5": "5", "6": "6"}, mode)


def named_graph(name: str) -> Graph:
    """Catalog of named graphs with fixed labels.

    ``K5perp``: K4 on 1..4, vertex 5 joined to 1,2, vertex 6 joined to 3,4,
    distinguished edge (5,6) last.  ``H10``/``H10minus`` glue two copies
    along (5,6); the second copy's K4 is 7..10.  ``H11`` subdivides (5,6)
    of H10 with new vertex 11, the two new edges appended at the end.
    """
    key = name.strip()
    simple = {
        "K5perp": lambda: build_graph(K5PERP_EDGES),
        "H10": lambda: _k5perp_twins("clique_sum"),
        "H10minus": lambda: _k5perp_twins("n_sum"),
        "H11": lambda: subdivide_edge(named_graph("H10"), named_graph("H10").edge_index("5", "6"), 1,
                                      new_labels=["11"]),
        "K6minusE": lambda: delete_edge(complete_graph(6), complete_graph(6).edge_index("5", "6")),
        "K5minusE": lambda: delete_edge(complete_graph(5), complete_graph(5).edge_index("4", "5")),
        "Petersen": lambda: build_graph(PETERSEN_EDGES),
        "Dodecahedron": _dodecahedron,
        "Prism": _prism,
    }
    if key in simple:
        return simple[key]()
    head, digits = key[:1], key[1:]
    if key.startswith("K") and "," in key:
        a, b = key[1:].split(",", 1)
        if a.isdigit() and b.isdigit():
            return complete_bipartite(int(a), int(b))
    if key in ("K33", "K3,3"):
        return complete_bipartite(3, 3)
    if digits.isdigit():
        k = int(digits)
        if head == "K" and k >= 1:
            return complete_graph(k)
        if head == "C" and k >= 3:
            return cycle_graph(k)
        if head == "W" and k >= 3:
            return wheel_graph(k)
        if head == "P" and k >= 1:
            return path_graph(k)
    raise UnknownName(name)


CATALOG_NAMES = ("Kn", "Cn", "Wn", "Pn", "Ka,b", "K5perp", "H10", "H10minus", "H11",
                 "K6minusE", "K5minusE", "Petersen", "Dodecahedron", "Prism")


# --------------------------------------------------------------------------
# edits


def _check_index(g: Graph, e: int):
    if not isinstance(e, int) or not 0 <= e < g.m:
        raise BadIndex(f"edge index {e!r} out of range for {g.m} edges")


def delete_edge(g: Graph, e: int) -> Graph:
    _check_index(g, e)
    return Graph(g.vertices, g.edges[:e] + g.edges[e + 1:])


def delete_vertices(g: Graph, drop: Iterable[str]) -> Graph:
    drop = set(drop)
    return Graph(tuple(v for v in g.vertices if v not in drop),
                 tuple((u, v) for u, v in g.edges if u not in drop and v not in drop))


def induced_subgraph(g: Graph, keep: Iterable[str]) -> Graph:
    keep = set(keep)
    return delete_vertices(g, [v for v in g.vertices if v not in keep])


def add_edge(g: Graph, u: str, v: str) -> Graph:
    return build_graph(list(g.edges) + [(u, v)], g.vertices)


def simplify(g: Graph, drop_isolated: bool = True) -> Graph:
    """Remove parallel duplicates (first copy kept) and, optionally, isolated vertices."""
    seen = set()
    edges = []
    for u, v in g.edges:
        key = frozenset((u, v))
        if key not in seen:
            seen.add(key)
            edges.append((u, v))
    used = {x for e in edges for x in e}
    verts = tuple(v for v in g.vertices if v in used or not drop_isolated)
    return Graph(verts, tuple(edges))


def contract_edge(g: Graph, e: int, simplify_result: bool = False) -> Graph:
    """Merge the endpoints of edge ``e`` into the smaller label.

    Loops created by the merge (the edge itself and its parallels) are always
    dropped, since graphs never carry loops.
    """
    _check_index(g, e)
    a, b = g.edges[e]
    keep, gone = sorted((a, b), key=label_key)
    edges = []
    for i, (u, v) in enumerate(g.edges):
        u = keep if u == gone else u
        v = keep if v == gone else v
        if u != v:
            edges.append((u, v))
    h = Graph(tuple(v for v in g.vertices if v != gone), tuple(edges))
    return simplify(h) if simplify_result else h


def fresh_labels(g: Graph, count: int) -> list[str]:
    nums = [int(v) for v in g.vertices if v.isdigit()]
    start = max(nums, default=0) + 1
    out = []
    k = start
    taken = set(g.vertices)
    while len(out) < count:
        if str(k) not in taken:
            out.append(str(k))
        k += 1
    return out


def subdivide_edge(g: Graph, e: int, k: int = 1, new_labels: Sequence[str] | None = None) -> Graph:
    """Replace edge ``e`` by a path through ``k`` new vertices; path edges go last."""
    _check_index(g, e)
    if not isinstance(k, int) or k < 1:
        raise BadCount(f"subdivision count must be >= 1, got {k!r}")
    labels = list(new_labels) if new_labels is not None else fresh_labels(g, k)
    if len(labels) != k or set(labels) & set(g.vertices):
        raise BadCount("new labels must be k fresh labels")
    u, v = g.edges[e]
    chain = [u] + labels + [v]
    path = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    return Graph(g.vertices + tuple(labels), g.edges[:e] + g.edges[e + 1:] + tuple(path))


def _is_clique(g: Graph, vs: Sequence[str]) -> bool:
    return all(g.has_edge(a, b) for a, b in itertools.combinations(vs, 2))


def compose(g1: Graph, g2: Graph, shared: Mapping[str, str], mode: str = "clique_sum",
            relabel: Mapping[str, str] | None = None) -> Graph:
    """Glue ``g2`` onto ``g1`` along a clique.

    ``shared`` maps g1 labels to g2 labels.  ``clique_sum`` keeps g1's copy of
    the clique edges, ``n_sum`` deletes the clique edges of both copies.
    Non-shared g2 vertices keep their label unless it clashes with g1, in
    which case they get fresh numeric labels (or ``relabel`` if given).
    """
    if mode not in ("clique_sum", "n_sum"):
        raise ValueError(f"unknown mode {mode!r}")
    k1, k2 = list(shared.keys()), list(shared.values())
    if len(set(k2)) != len(k2):
        raise SizeMismatch("shared map is not injective")
    if len(k1) > 3:
        raise SizeMismatch("sums are only defined along cliques of size <= 3")
    for v in k1:
        if v not in g1.index:
            raise NotAClique(f"{v!r} not in first graph")
    for v in k2:
        if v not in g2.index:
            raise NotAClique(f"{v!r} not in second graph")
    if not _is_clique(g1, k1) or not _is_clique(g2, k2):
        raise NotAClique("shared vertices must induce a clique in both graphs")

    back = {b: a for a, b in shared.items()}
    others = [v for v in g2.vertices if v not in back]
    rename = dict(relabel or {})
    clash = [v for v in others if v not in rename and v in g1.index]
    if clash:
        fresh = iter(fresh_labels(g1, len(others)))
        for v in others:
            if v not in rename:
                rename[v] = next(fresh)
    for v in others:
        rename.setdefault(v, v)
    rename.update(back)

    s1 = set(k1)
    edges = []
    for u, v in g1.edges:
        if mode == "n_sum" and u in s1 and v in s1:
            continue
        edges.append((u, v))
    for u, v in g2.edges:
        a, b = rename[u], rename[v]
        if a in s1 and b in s1:
            continue
        edges.append((a, b))
    verts = list(g1.vertices) + [rename[v] for v in others]
    return Graph(tuple(verts), tuple(edges))


def two_sum(g1: Graph, g2: Graph, f1: int, f2: int, flip: bool = False) -> Graph:
    """g1 +_f g2 identifying edge f1 of g1 with edge f2 of g2."""
    a, b = g1.edges[f1]
    c, d = g2.edges[f2]
    if flip:
        c, d = d, c
    return compose(g1, g2, {a: c, b: d}, "n_sum")


# --------------------------------------------------------------------------
# connectivity


def components(g: Graph, removed_edges: int = 0, removed_vertices: Iterable[str] = ()) -> list[list[str]]:
    gone = set(removed_vertices)
    seen: set[str] = set()
    out = []
    for s in g.vertices:
        if s in seen or s in gone:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, i in g.adjacency[u]:
                if w in seen or w in gone or (removed_edges >> i) & 1:
                    continue
                seen.add(w)
                comp.append(w)
                queue.append(w)
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def separators(g: Graph, size: int) -> list[tuple[str, ...]]:
    """All vertex sets of the given size whose removal disconnects g."""
    out = []
    for sep in itertools.combinations(sort_labels(g.vertices), size):
        if g.n - size >= 2 and len(components(g, removed_vertices=sep)) > 1:
            out.append(sep)
    return out


def connectivity_report(g: Graph) -> ConnectivityReport:
    connected = is_connected(g)
    two = connected and g.n >= 3 and not separators(g, 1)
    three = two and g.n >= 4 and not separators(g, 2)
    return ConnectivityReport(connected, two, three)


# --------------------------------------------------------------------------
# cuts, bonds, circuits


def _canonical_side(g: Graph, side: Iterable[str]) -> tuple[str, ...]:
    s = set(side)
    a = sort_labels(s)
    b = sort_labels(v for v in g.vertices if v not in s)
    ka = [label_key(x) for x in a]
    kb = [label_key(x) for x in b]
    return a if ka <= kb else b


def mask_to_incidence(mask: int, m: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(m))


def cut_of(g: Graph, side: Iterable[str]) -> Cut:
    side = set(side)
    mask = 0
    for v in side:
        mask ^= g.stars[g.index[v]]
    return Cut(mask_to_incidence(mask, g.m), _canonical_side(g, side))


def _cut_masks(g: Graph, budget: int) -> dict[int, tuple[str, ...]]:
    """Distinct cut masks -> canonical generator, by Gray-code walk."""
    if g.n > budget:
        raise BudgetExceeded(f"{g.n} vertices exceeds cut-enumeration budget {budget}")
    found: dict[int, tuple[str, ...]] = {}
    if g.n == 0:
        return {0: ()}
    free = g.n - 1  # last vertex stays outside S; complements cover the rest
    stars = g.stars
    mask = 0
    side = 0
    for k in range(1 << free):
        if k:
            bit = (k & -k).bit_length() - 1
            mask ^= stars[bit]
            side ^= 1 << bit
        if mask not in found:
            found[mask] = side
        else:
            pass
    out = {}
    for mask, side in found.items():
        members = [g.vertices[i] for i in range(g.n) if (side >> i) & 1]
        out[mask] = _canonical_side(g, members)
    return out


def _mask_key(mask: int, m: int) -> tuple[int, ...]:
    return mask_to_incidence(mask, m)


def enumerate_cuts(g: Graph, budget: int = DEFAULT_CUT_BUDGET) -> list[Cut]:
    """All distinct cuts (zero cut included), sorted by incidence vector."""
    masks = _cut_masks(g, budget)
    cuts = [Cut(mask_to_incidence(mk, g.m), gen) for mk, gen in masks.items()]
    cuts.sort()
    return cuts


def is_bond_mask(g: Graph, mask: int, base_components: int | None = None) -> bool:
    if mask == 0:
        return False
    if base_components is None:
        base_components = len(components(g))
    return len(components(g, removed_edges=mask)) == base_components + 1


def enumerate_bonds(g: Graph, budget: int = DEFAULT_CUT_BUDGET) -> list[Cut]:
    """Inclusion-minimal nonzero cuts, in canonical cut order."""
    base = len(components(g))
    return [c for c in enumerate_cuts(g, budget) if is_bond_mask(g, c.mask, base)]


def spanning_forest(g: Graph) -> tuple[dict[str, tuple[str, int] | None], list[int]]:
    """BFS forest: parent map (vertex -> (parent, edge)) and the tree edge list."""
    parent: dict[str, tuple[str, int] | None] = {}
    tree = []
    for s in g.vertices:
        if s in parent:
            continue
        parent[s] = None
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, i in g.adjacency[u]:
                if w not in parent:
                    parent[w] = (u, i)
                    tree.append(i)
                    queue.append(w)
    return parent, tree


def _root_path(parent, v) -> list[tuple[str, int]]:
    out = []
    while parent[v] is not None:
        p, i = parent[v]
        out.append((v, i))
        v = p
    return out


def tree_path_edges(parent, u: str, v: str) -> set[int]:
    pu = {i for _, i in _root_path(parent, u)}
    pv = {i for _, i in _root_path(parent, v)}
    return pu ^ pv


def is_circuit(g: Graph, edges: Iterable[int]) -> bool:
    """True when the edge set is the edge set of a single cycle."""
    edges = list(edges)
    if not edges or len(set(edges)) != len(edges):
        return False
    deg: dict[str, int] = {}
    for i in edges:
        for x in g.edges[i]:
            deg[x] = deg.get(x, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    sub = Graph(tuple(deg), tuple(g.edges[i] for i in edges))
    return is_connected(sub)


def cycle_basis(g: Graph) -> list[Circuit]:
    """Fundamental circuits of a BFS spanning forest, one per non-tree edge."""
    parent, tree = spanning_forest(g)
    in_tree = set(tree)
    basis = []
    for i, (u, v) in enumerate(g.edges):
        if i in in_tree:
            continue
        circ = tree_path_edges(parent, u, v) | {i}
        basis.append(Circuit(tuple(sorted(circ))))
    return basis


def enumerate_circuits(g: Graph, max_circuits: int = 200_000) -> list[Circuit]:
    """Every circuit of g (parallel pairs included), sorted by (length, edges)."""
    order = {v: k for k, v in enumerate(g.vertices)}
    found: set[frozenset[int]] = set()

    def extend(start, u, used_v, used_e):
        for w, i in g.adjacency[u]:
            if i in used_e:
                continue
            if w == start and len(used_e) >= 1:
                cyc = frozenset(used_e | {i})
                if len(cyc) >= 2 and cyc not in found:
                    found.add(cyc)
                    if len(found) > max_circuits:
                        raise BudgetExceeded("too many circuits")
                continue
            if order[w] <= order[start] or w in used_v:
                continue
            extend(start, w, used_v | {w}, used_e | {i})

    for s in g.vertices:
        extend(s, s, {s}, frozenset())
    circuits = [Circuit(tuple(sorted(c))) for c in found]
    circuits.sort(key=lambda c: (len(c.edges), c.edges))
    return circuits


def edge_endpoints_set(g: Graph, edges: Iterable[int]) -> set[str]:
    return {x for i in edges for x in g.edges[i]}
