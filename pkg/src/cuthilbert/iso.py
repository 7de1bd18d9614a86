"""Exact isomorphism for small multigraphs: colour refinement plus backtracking."""

from __future__ import annotations

from collections import Counter

from .graph import Graph


def _multiplicity(g: Graph) -> dict[tuple[str, str], int]:
    mult: Counter = Counter()
    for u, v in g.edges:
        mult[(u, v)] += 1
        mult[(v, u)] += 1
    return mult


def refine(g: Graph) -> dict[str, int]:
    """Stable colouring (1-WL) with colours canonically numbered."""
    mult = _multiplicity(g)
    colour = {v: g.degree(v) for v in g.vertices}
    while True:
        sig = {}
        for v in g.vertices:
            nb = sorted((colour[w], mult[(v, w)]) for w in g.neighbors(v))
            sig[v] = (colour[v], tuple(nb))
        palette = {s: k for k, s in enumerate(sorted(set(sig.values())))}
        new = {v: palette[sig[v]] for v in g.vertices}
        if len(set(new.values())) == len(set(colour.values())):
            return new
        colour = new


def invariant(g: Graph) -> tuple:
    """Isomorphism invariant (not complete); equal for isomorphic graphs."""
    mult = _multiplicity(g)
    colour = {v: g.degree(v) for v in g.vertices}
    for _ in range(g.n):
        sig = {}
        for v in g.vertices:
            nb = sorted((colour[w], mult[(v, w)]) for w in g.neighbors(v))
            sig[v] = (colour[v], tuple(nb))
        palette = {s: k for k, s in enumerate(sorted(set(sig.values())))}
        new = {v: palette[sig[v]] for v in g.vertices}
        stable = len(set(new.values())) == len(set(colour.values()))
        colour = {v: sig[v] for v in g.vertices} if stable else new
        if stable:
            break
    return (g.n, g.m, tuple(sorted(Counter(map(repr, colour.values())).items())))


def find_isomorphism(g: Graph, h: Graph) -> dict[str, str] | None:
    """A vertex bijection g -> h preserving edge multiplicities, or None."""
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return None
    # joint refinement so colours are comparable across the two graphs
    joint_vertices = tuple(("g", v) for v in g.vertices) + tuple(("h", v) for v in h.vertices)
    mg, mh = _multiplicity(g), _multiplicity(h)

    def nbrs(x):
        side, v = x
        src = g if side == "g" else h
        return [(side, w) for w in src.neighbors(v)]

    def mult(x, y):
        return (mg if x[0] == "g" else mh)[(x[1], y[1])]

    colour = {x: (g if x[0] == "g" else h).degree(x[1]) for x in joint_vertices}
    while True:
        sig = {x: (colour[x], tuple(sorted((colour[y], mult(x, y)) for y in nbrs(x))))
               for x in joint_vertices}
        palette = {s: k for k, s in enumerate(sorted(set(sig.values())))}
        new = {x: palette[sig[x]] for x in joint_vertices}
        done = len(set(new.values())) == len(set(colour.values()))
        colour = new
        if done:
            break
    cg = Counter(colour[("g", v)] for v in g.vertices)
    ch = Counter(colour[("h", v)] for v in h.vertices)
    if cg != ch:
        return None

    order = sorted(g.vertices, key=lambda v: (cg[colour[("g", v)]], -g.degree(v)))
    by_colour: dict[int, list[str]] = {}
    for v in h.vertices:
        by_colour.setdefault(colour[("h", v)], []).append(v)
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v, w):
        for u, x in mapping.items():
            if mg[(v, u)] != mh[(w, x)]:
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for w in by_colour[colour[("g", v)]]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if search(0) else None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


class IsoCache:
    """Dictionary keyed by graphs up to isomorphism."""

    def __init__(self):
        self._buckets: dict[tuple, list[tuple[Graph, object]]] = {}

    def get(self, g: Graph, default=None):
        for h, value in self._buckets.get(invariant(g), []):
            if h == g or are_isomorphic(g, h):
                return value
        return default

    def put(self, g: Graph, value):
        self._buckets.setdefault(invariant(g), []).append((g, value))

    def __contains__(self, g: Graph):
        sentinel = object()
        return self.get(g, sentinel) is not sentinel
