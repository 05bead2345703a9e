"""Groebner bases of characteristic imset ideals of trees by recursive gluing."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core_algebra import GroebnerBasis, VariableTable, WeightOrder
from ..errors import NotATree, PatternError
from ..graphs_dags import Pattern, UndirectedGraph, _edge, enumerate_meq_tree, psi_map
from ..qig_engine import is_strongly_Q_homogeneous, qig_groebner
from ..quasi_independence import GluingRule
from ..toric_oracle import CertificationReport, certify_gb_of_kernel

EDGE_STRATEGIES = ("balanced", "first", "last")


@dataclass(frozen=True)
class PartingResult:
    left: Pattern
    right: Pattern


def split_tree(t: UndirectedGraph, e) -> tuple[UndirectedGraph, UndirectedGraph]:
    """(T_u, T_v): the two sides of edge e = (u, v), each keeping e."""
    u, v = e
    if not t.is_tree():
        raise NotATree("parting needs a tree")
    if not t.adjacent(u, v):
        raise ValueError(f"{u}-{v} is not an edge")
    if t.degree(u) < 2 or t.degree(v) < 2:
        raise ValueError(f"{u}-{v} is a leaf edge")
    side_u = t.component(u, removed_edge=(u, v))
    side_v = t.component(v, removed_edge=(u, v))
    return t.induced(side_u | {v}), t.induced(side_v | {u})


def _restrict(p: Pattern, sub: UndirectedGraph, leaf) -> Pattern:
    # arcs inside sub, except an arc pointing into the shared leaf
    arcs = frozenset(a for a in p.directed if sub.adjacent(*a) and a[1] != leaf)
    return Pattern(sub, arcs)


def parting(p: Pattern, e) -> PartingResult:
    """Split ``p`` at the non-leaf edge e = (u, v).

    The arc on e survives only on the side where its head is interior:
    u -> v stays in T_v, v -> u stays in T_u, an undirected e stays undirected.
    """
    u, v = e
    tu, tv = split_tree(p.skeleton, e)
    try:
        return PartingResult(_restrict(p, tu, v), _restrict(p, tv, u))
    except PatternError as exc:
        raise PatternError(f"{p!r} is not a valid pattern on the tree") from exc


def tree_gluing_rule(t: UndirectedGraph, e) -> GluingRule:
    """Rows meq(T_u), columns meq(T_v), one pair per pattern of T (in meq(T) order)."""
    tu, tv = split_tree(t, e)
    rows, cols = enumerate_meq_tree(tu), enumerate_meq_tree(tv)
    ri = {p: i for i, p in enumerate(rows)}
    ci = {p: i for i, p in enumerate(cols)}
    pats = enumerate_meq_tree(t)
    pairs = []
    for p in pats:
        part = parting(p, e)
        pairs.append((ri[part.left], ci[part.right]))
    if len(set(pairs)) != len(pairs):
        raise AssertionError(f"parting at {e} is not injective")
    return GluingRule(len(rows), len(cols), tuple(pairs), tuple(rows), tuple(cols), tuple(pats))


def non_leaf_edges(t: UndirectedGraph) -> list[tuple]:
    return [e for e in t.sorted_edges if t.degree(e[0]) >= 2 and t.degree(e[1]) >= 2]


def is_base_case(t: UndirectedGraph) -> bool:
    return t.is_star() or t.n <= 4


def choose_edge(t: UndirectedGraph, strategy: str = "balanced") -> tuple:
    edges = non_leaf_edges(t)
    if not edges:
        raise ValueError("tree has no non-leaf edge")
    if strategy == "first":
        return edges[0]
    if strategy == "last":
        return edges[-1]
    if strategy != "balanced":
        raise ValueError(f"unknown edge strategy {strategy!r}")

    def imbalance(e):
        tu, tv = split_tree(t, e)
        return abs(len(enumerate_meq_tree(tu)) - len(enumerate_meq_tree(tv)))

    return min(edges, key=lambda e: (imbalance(e), e))


def edge_type(p: Pattern, near, far) -> int:
    """How the shared edge near-far sits in the essential graph of a side pattern.

    0: compelled near -> far (the undirected part of p around the edge holds a
    center, whose orientation propagates out to far), 1: undirected,
    2: far -> near inside a v-structure at near.
    """
    if far in p.in_set(near):
        return 2
    if (near, far) in p.directed or (far, near) in p.directed:
        return 1
    centers = set(p.centers)
    seen, stack = {near}, [near]
    while stack:
        x = stack.pop()
        if x in centers:
            return 0
        for y in p.skeleton.neighbors(x):
            if y not in seen and (x, y) not in p.directed and (y, x) not in p.directed:
                seen.add(y)
                stack.append(y)
    return 1


def ladder_ranks(q: GluingRule, e) -> tuple[list[int], list[int]]:
    """Row and column positions that turn the rule into a ladder.

    Rows and columns are both ordered by edge type 0, 1, 2 (each relative to
    its own side).  The only excluded type pairs are (0, 0) and (2, 2), which
    sit in opposite corners, so allowed cells are closed under completing
    north-west/south-east corners.
    """
    u, v = e
    rows = sorted(range(q.r), key=lambda j: (edge_type(q.row_labels[j], u, v), j))
    cols = sorted(range(q.s), key=lambda k: (edge_type(q.col_labels[k], v, u), k))
    row_rank, col_rank = [0] * q.r, [0] * q.s
    for i, j in enumerate(rows):
        row_rank[j] = i
    for i, k in enumerate(cols):
        col_rank[k] = i
    return row_rank, col_rank


def ladder_weight(q: GluingRule, e) -> list[int]:
    """Diagonal weight: for a < c and b < d it ranks z_ab z_cd above z_ad z_cb.

    2x2 minors of a ladder form a Groebner basis under any diagonal order,
    which is what makes the cycle binomials of the rule a Groebner basis.
    """
    row_rank, col_rank = ladder_ranks(q, e)
    return [row_rank[j] * col_rank[k] for j, k in q.pairs]


def _glue(t: UndirectedGraph, strategy: str, edge=None):
    pats = enumerate_meq_tree(t)
    if is_base_case(t) and edge is None:
        return GroebnerBasis(WeightOrder(len(pats)), (), True, VariableTable(pats)), (), []
    e = _edge(*edge) if edge is not None else choose_edge(t, strategy)
    if edge is not None and e not in non_leaf_edges(t):
        raise ValueError(f"{e} is not a non-leaf edge")
    tu, tv = split_tree(t, e)
    F, edges_u, weak_u = _glue(tu, strategy)
    G, edges_v, weak_v = _glue(tv, strategy)
    q = tree_gluing_rule(t, e)
    weak_only = list(weak_u) + list(weak_v)
    for basis, side, sub in ((F, "row", tu), (G, "col", tv)):
        for b in basis.elements:
            if not is_strongly_Q_homogeneous(b, q, side):
                # qig_groebner still requires (and checks) the weak version
                weak_only.append((sub, e, b))
    H = qig_groebner(F, G, q, hq_weight=ladder_weight(q, e))
    if not H.certified:
        raise AssertionError(f"glued basis at {e} failed the S-pair check")
    return GroebnerBasis(H.order, H.elements, True, VariableTable(pats)), ((e,) + edges_u + edges_v), weak_only


@dataclass
class TreeResult:
    basis: GroebnerBasis
    patterns: tuple
    edges: tuple
    report: CertificationReport | None
    weak_only: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.basis.certified and (self.report is None or self.report.certified)

    def name(self, i: int) -> str:
        return self.patterns[i].name()


def tree_gb(t: UndirectedGraph, edge=None, strategy: str = "balanced", certify_degree: int | None = 3,
            budget: int | None = None) -> TreeResult:
    """Glued Groebner basis of I_T, variables indexed by meq(T).

    ``edge`` fixes the top-level gluing edge; deeper edges follow
    ``strategy``.  With ``certify_degree`` set, the result is checked
    against the brute-force kernel of psi_T up to that degree.
    """
    if not t.is_tree():
        raise NotATree("tree_gb needs a tree")
    if strategy not in EDGE_STRATEGIES:
        raise ValueError(f"unknown edge strategy {strategy!r}")
    basis, edges, weak_only = _glue(t, strategy, edge)
    report = None
    if certify_degree is not None:
        kwargs = {} if budget is None else {"budget": budget}
        report = certify_gb_of_kernel(psi_map(t), basis, certify_degree, **kwargs)
        basis = GroebnerBasis(basis.order, basis.elements, report.certified, basis.table)
    return TreeResult(basis, tuple(basis.table), edges, report, weak_only)
