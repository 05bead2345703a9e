"""Graphs, DAGs, patterns of Markov equivalence classes and characteristic imsets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

import numpy as np

from .core_algebra import VariableTable
from .errors import BudgetExceeded, NotATree, PatternError
from .toric_oracle import MonomialMap

MAX_BRUTE_FORCE_EDGES = 20


def _edge(u, v) -> tuple:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple graph; ``edges`` holds pairs (u, v) with u < v."""

    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        edges = frozenset(_edge(u, v) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in verts or v not in verts:
                raise ValueError(f"edge {(u, v)} has an endpoint outside the vertex set")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> UndirectedGraph:
        edges = [tuple(e) for e in edges]
        if n is None:
            verts = {x for e in edges for x in e}
        else:
            verts = set(range(1, n + 1))
        return cls(tuple(verts), frozenset(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def _adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def neighbors(self, v) -> tuple:
        return self._adjacency[v]

    def degree(self, v) -> int:
        return len(self._adjacency[v])

    def adjacent(self, u, v) -> bool:
        return _edge(u, v) in self.edges

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return len(self.component(self.vertices[0])) == self.n

    def is_tree(self) -> bool:
        return self.n >= 1 and len(self.edges) == self.n - 1 and self.is_connected()

    def is_star(self) -> bool:
        return self.is_tree() and (self.n <= 2 or any(self.degree(v) == self.n - 1 for v in self.vertices))

    def component(self, start, removed_edge=None) -> frozenset:
        """Vertices reachable from ``start``, optionally ignoring one edge."""
        removed = _edge(*removed_edge) if removed_edge else None
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self._adjacency[x]:
                if y not in seen and _edge(x, y) != removed:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def induced(self, vertices) -> UndirectedGraph:
        vs = set(vertices)
        return UndirectedGraph(tuple(vs), frozenset(e for e in self.edges if e[0] in vs and e[1] in vs))

    def to_json(self) -> dict:
        if self.vertices == tuple(range(1, self.n + 1)):
            return {"n": self.n, "edges": [list(e) for e in self.sorted_edges]}
        return {"n": self.n, "vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges]}

    @classmethod
    def from_json(cls, data: dict) -> UndirectedGraph:
        edges = frozenset(tuple(e) for e in data["edges"])
        if any(len(e) != 2 for e in edges):
            raise ValueError("edges must be pairs")
        if "vertices" in data:
            return cls(tuple(data["vertices"]), edges)
        return cls(tuple(range(1, int(data["n"]) + 1)), edges)


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges([(i, i + 1) for i in range(1, n)], n)


def star_graph(leaves: int) -> UndirectedGraph:
    """K_{1,leaves} with center 1."""
    return UndirectedGraph.from_edges([(1, i) for i in range(2, leaves + 2)], leaves + 1)


def cycle_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges([(i, i + 1) for i in range(1, n)] + [(1, n)], n)


def quartet_tree() -> UndirectedGraph:
    """Two cherries {1,2} and {5,6} hanging off the inner edge 3-4."""
    return UndirectedGraph.from_edges([(1, 3), (2, 3), (3, 4), (4, 5), (4, 6)], 6)


@dataclass(frozen=True)
class Dag:
    vertices: tuple
    arcs: frozenset

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        arcs = frozenset(tuple(a) for a in self.arcs)
        for u, v in arcs:
            if u == v or u not in verts or v not in verts:
                raise ValueError(f"bad arc {(u, v)}")
            if (v, u) in arcs:
                raise ValueError(f"edge {u}-{v} carries both orientations")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arcs", arcs)
        if not _acyclic(verts, arcs):
            raise ValueError("directed cycle in DAG")

    @classmethod
    def from_arcs(cls, arcs, n: int | None = None) -> Dag:
        arcs = [tuple(a) for a in arcs]
        verts = set(range(1, n + 1)) if n is not None else {x for a in arcs for x in a}
        return cls(tuple(verts), frozenset(arcs))

    @cached_property
    def _parents(self) -> dict:
        pa = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            pa[v].append(u)
        return {v: tuple(sorted(p)) for v, p in pa.items()}

    def parents(self, v) -> tuple:
        return self._parents[v]

    def skeleton(self) -> UndirectedGraph:
        return UndirectedGraph(self.vertices, frozenset(self.arcs))


def _acyclic(vertices, arcs) -> bool:
    indeg = {v: 0 for v in vertices}
    out = {v: [] for v in vertices}
    for u, v in arcs:
        indeg[v] += 1
        out[u].append(v)
    stack = [v for v in vertices if indeg[v] == 0]
    seen = 0
    while stack:
        x = stack.pop()
        seen += 1
        for y in out[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    return seen == len(vertices)


def _label(vertices) -> str:
    vs = sorted(vertices)
    if all(isinstance(v, int) and 0 <= v < 10 for v in vs):
        return "".join(str(v) for v in vs)
    return ",".join(str(v) for v in vs)


@dataclass(frozen=True)
class Pattern:
    """Skeleton plus the arcs that belong to v-structures."""

    skeleton: UndirectedGraph
    directed: frozenset

    def __post_init__(self):
        arcs = frozenset(tuple(a) for a in self.directed)
        for u, v in arcs:
            if not self.skeleton.adjacent(u, v):
                raise PatternError(f"arc {u}->{v} is not a skeleton edge")
            if (v, u) in arcs:
                raise PatternError(f"edge {u}-{v} carries both orientations")
        for u, v in arcs:
            if not any(w != u and not self.skeleton.adjacent(u, w) for w, x in arcs if x == v):
                raise PatternError(f"arc {u}->{v} is not part of a v-structure")
        object.__setattr__(self, "directed", arcs)

    @cached_property
    def sort_key(self) -> tuple:
        return (self.skeleton.sorted_edges, tuple(sorted(self.directed)))

    def __lt__(self, other: Pattern) -> bool:
        return self.sort_key < other.sort_key

    def in_set(self, v) -> tuple:
        return tuple(sorted(u for u, x in self.directed if x == v))

    @property
    def centers(self) -> tuple:
        return tuple(sorted({v for _, v in self.directed}))

    def v_structures(self) -> set:
        out = set()
        for c in self.centers:
            for i, j in combinations(self.in_set(c), 2):
                if not self.skeleton.adjacent(i, j):
                    out.add((i, c, j))
        return out

    def name(self) -> str:
        """Short label: the centers, with the in-set appended when it is not every neighbor."""
        if not self.directed:
            return "∅"
        parts = []
        for c in self.centers:
            ins = self.in_set(c)
            if len(ins) == self.skeleton.degree(c):
                parts.append(_label([c]))
            else:
                parts.append(f"{_label([c])}[{_label(ins)}]")
        if all("[" not in p for p in parts):
            return _label(self.centers)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"skeleton": self.skeleton.to_json(), "directed": [list(a) for a in sorted(self.directed)]}

    @classmethod
    def from_json(cls, data: dict) -> Pattern:
        return cls(UndirectedGraph.from_json(data["skeleton"]), frozenset(tuple(a) for a in data["directed"]))

    def __repr__(self) -> str:
        return f"Pattern({self.name()})"


@dataclass(frozen=True)
class Imset:
    """0/1 function on subsets of size >= 2, stored by its support (sorted tuples)."""

    n: int
    support: frozenset

    def __post_init__(self):
        support = frozenset(tuple(sorted(s)) for s in self.support)
        if any(len(s) < 2 for s in support):
            raise ValueError("imset support sets must have at least two elements")
        object.__setattr__(self, "support", support)

    def sorted_support(self) -> list:
        return sorted(self.support, key=lambda s: (len(s), s))

    def to_json(self) -> list:
        return [list(s) for s in self.sorted_support()]


def v_structures(d: Dag) -> set:
    """Triples (i, k, j) with i -> k <- j, i < j, and i, j non-adjacent."""
    out = set()
    for k in d.vertices:
        for i, j in combinations(d.parents(k), 2):
            if (i, j) not in d.arcs and (j, i) not in d.arcs:
                out.add((i, k, j))
    return out


def pattern_of(d: Dag) -> Pattern:
    arcs = set()
    for i, k, j in v_structures(d):
        arcs.add((i, k))
        arcs.add((j, k))
    return Pattern(d.skeleton(), frozenset(arcs))


def enumerate_meq(g: UndirectedGraph, max_edges: int = MAX_BRUTE_FORCE_EDGES) -> list[Pattern]:
    """Patterns of all DAGs with skeleton ``g``, by brute force over orientations."""
    edges = g.sorted_edges
    if len(edges) > max_edges:
        raise BudgetExceeded("orientation enumeration (edges)", len(edges), max_edges)
    seen = set()
    for flips in product((False, True), repeat=len(edges)):
        arcs = frozenset((v, u) if f else (u, v) for (u, v), f in zip(edges, flips))
        if not _acyclic(g.vertices, arcs):
            continue
        seen.add(pattern_of(Dag(g.vertices, arcs)))
    return sorted(seen)


def _has_two_centers(t: UndirectedGraph, claimed: set, centers: set) -> bool:
    # each component of the unclaimed edges must hold at most one center
    parent = {v: v for v in t.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in t.edges:
        if e not in claimed:
            parent[find(e[0])] = find(e[1])
    roots = [find(c) for c in centers]
    return len(roots) != len(set(roots))


def enumerate_meq_tree(t: UndirectedGraph) -> list[Pattern]:
    """Patterns on a tree built from per-vertex in-sets of size 0 or at least 2."""
    if not t.is_tree():
        raise NotATree("enumerate_meq_tree needs a tree")
    verts = t.vertices
    options = []
    for v in verts:
        nb = t.neighbors(v)
        opts = [()]
        for k in range(2, len(nb) + 1):
            opts.extend(combinations(nb, k))
        options.append(opts)

    out = []

    def rec(i: int, claimed: set, arcs: list, centers: set):
        if i == len(verts):
            if not _has_two_centers(t, claimed, centers):
                out.append(Pattern(t, frozenset(arcs)))
            return
        v = verts[i]
        for ins in options[i]:
            edges = [_edge(u, v) for u in ins]
            if any(e in claimed for e in edges):
                continue
            rec(i + 1, claimed | set(edges), arcs + [(u, v) for u in ins],
                centers | {v} if ins else centers)

    rec(0, set(), [], set())
    return sorted(out)


def characteristic_imset(d: Dag) -> Imset:
    """Sets S = {i} + T with T a nonempty subset of pa(i)."""
    support = set()
    for i in d.vertices:
        pa = d.parents(i)
        for k in range(1, len(pa) + 1):
            for t in combinations(pa, k):
                support.add(tuple(sorted((i,) + t)))
    return Imset(len(d.vertices), frozenset(support))


def extend_pattern(p: Pattern) -> Dag:
    """A DAG in the class of ``p``, by repeatedly removing a sink whose undirected
    neighbors are adjacent to all its other neighbors and directing those edges into it."""
    g = p.skeleton
    remaining = set(g.vertices)
    directed = set(p.directed)
    undirected = {e for e in g.edges if e not in directed and (e[1], e[0]) not in directed}
    arcs = set(directed)
    while remaining:
        for x in sorted(remaining):
            if any(u == x and v in remaining for u, v in directed):
                continue
            und = [y for y in g.neighbors(x) if y in remaining and _edge(x, y) in undirected]
            adj = [y for y in g.neighbors(x) if y in remaining]
            if all(g.adjacent(y, z) for y in und for z in adj if z != y):
                for y in und:
                    arcs.add((y, x))
                    undirected.discard(_edge(x, y))
                    directed.add((y, x))
                remaining.discard(x)
                break
        else:
            raise PatternError(f"{p!r} has no consistent extension")
    dag = Dag(g.vertices, frozenset(arcs))
    if pattern_of(dag) != p:
        raise PatternError(f"{p!r} is not the pattern of any DAG")
    return dag


def imset_of_pattern(p: Pattern) -> Imset:
    return characteristic_imset(extend_pattern(p))


def meq(g: UndirectedGraph, max_edges: int = MAX_BRUTE_FORCE_EDGES) -> list[Pattern]:
    """meq(g) by the tree construction when possible, brute force otherwise."""
    if g.is_tree():
        return enumerate_meq_tree(g)
    return enumerate_meq(g, max_edges)


def psi_map(g: UndirectedGraph, max_edges: int = MAX_BRUTE_FORCE_EDGES) -> MonomialMap:
    """z_P -> t^{c_P}: one column per pattern, one row per subset in some imset."""
    patterns = meq(g, max_edges)
    imsets = [imset_of_pattern(p) for p in patterns]
    params = sorted(set().union(*(i.support for i in imsets)), key=lambda s: (len(s), s))
    row = {s: r for r, s in enumerate(params)}
    mat = np.zeros((len(params), len(patterns)), dtype=np.int64)
    for c, im in enumerate(imsets):
        for s in im.support:
            mat[row[s], c] = 1
    return MonomialMap(VariableTable(patterns), VariableTable(params), mat)
