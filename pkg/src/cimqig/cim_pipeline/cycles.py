"""Cycles C_N as gluings of two paths, and the search for a liftable basis of I_{P_n}.

C_N with N = n + m - 4 is covered by the path P_n = 1 - 2 - ... - n and the
path P'_m = (n-1) - n - (n+1) - ... - N - 1 - 2, which overlap in the edges
{1, 2} and {n-1, n}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core_algebra import Binomial, GroebnerBasis, WeightOrder, buchberger, default_degree_cap
from ..errors import DegreeCapExceeded, HomogeneityViolation
from ..graphs_dags import Pattern, UndirectedGraph, cycle_graph, enumerate_meq, enumerate_meq_tree, path_graph, psi_map
from ..qig_engine import is_weakly_Q_homogeneous, qig_groebner
from ..quasi_independence import GluingRule
from ..toric_oracle import CertificationReport, certify_gb_of_kernel, factors_through
from .cones import WeightCone, find_weight, weak_homogeneity_cone
from .trees import tree_gb

DEFAULT_CYCLE_DEGREE = 4


def outer_path(m: int, n: int) -> UndirectedGraph:
    """P'_m labelled n-1, n, n+1, ..., n+m-4, 1, 2."""
    labels = [n - 1, n] + list(range(n + 1, n + m - 3)) + [1, 2]
    return UndirectedGraph.from_edges(list(zip(labels, labels[1:])))


def _cyclically_consecutive(a: int, b: int, size: int) -> bool:
    return (a - b) % size in (1, size - 1)


def cycle_pattern(centers, size: int) -> Pattern:
    """Pattern on C_size with a v-structure at each given center."""
    arcs = []
    for c in centers:
        arcs.append((c % size + 1, c))
        arcs.append(((c - 2) % size + 1, c))
    return Pattern(cycle_graph(size), frozenset(arcs))


def cycle_gluing_rule(m: int, n: int) -> GluingRule:
    """Rows meq(P'_m), columns meq(P_n); pairs whose centers are pairwise
    non-consecutive on C_{n+m-4} and not all absent.  Pairs are ordered like
    meq(C_{n+m-4}) and labelled by the glued cycle pattern."""
    if m < 4 or n < 4:
        raise ValueError("cycle gluing needs m, n >= 4")
    size = n + m - 4
    rows = enumerate_meq_tree(outer_path(m, n))
    cols = enumerate_meq_tree(path_graph(n))
    found = []
    for j, a in enumerate(rows):
        for k, b in enumerate(cols):
            centers = sorted(set(a.centers) | set(b.centers))
            if not centers:
                continue
            if any(_cyclically_consecutive(x, y, size) for i, x in enumerate(centers) for y in centers[i + 1:]):
                continue
            found.append((cycle_pattern(centers, size), (j, k)))
    found.sort(key=lambda item: item[0].sort_key)
    return GluingRule(len(rows), len(cols), tuple(p for _, p in found), tuple(rows), tuple(cols),
                      tuple(c for c, _ in found))


def verify_cycle_factorization(m: int, n: int, squared=None) -> bool:
    """psi_{C_N}(z_{P',P}) = psi_{P'}(x_{P'}) psi_{P}(y_P) after squaring the two shared edges,
    and the pairs of the rule correspond one-to-one with meq(C_N)."""
    size = n + m - 4
    q = cycle_gluing_rule(m, n)
    if list(q.pair_labels) != enumerate_meq(cycle_graph(size)):
        return False
    squared = {(1, 2), (n - 1, n)} if squared is None else set(squared)
    return factors_through(psi_map(cycle_graph(size)), q, psi_map(outer_path(m, n)), psi_map(path_graph(n)), squared)


@dataclass
class CycleReport:
    n: int
    status: str
    basis: list = field(default_factory=list)
    obstructions: list = field(default_factory=list)
    weight: list | None = None
    rounds: int = 0
    degree: int = DEFAULT_CYCLE_DEGREE
    certification: CertificationReport | None = None
    rule: GluingRule | None = None
    path_basis: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    order: WeightOrder | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _obstruction(b: Binomial, witnesses, q: GluingRule) -> dict:
    return {"binomial": b, "witness_tuple": [tuple(q.row_labels[i] for i in w) for w in witnesses]}


def cycle_generating_set_attempt(n: int, force_iterated: bool = False, max_rounds: int = 20,
                                 degree: int = DEFAULT_CYCLE_DEGREE, degree_cap: int | None = None,
                                 budget: int | None = None) -> CycleReport:
    """Look for a Groebner basis of I_{P_n} that lifts along Q_{4,n}, then glue it.

    Each round builds the cone of weights orienting every current element
    liftably, picks a point, recomputes the Groebner basis under that weight
    and checks the new elements.  ``force_iterated`` skips the search and
    tests the basis produced by iterated tree gluing as it stands.
    """
    if n < 5:
        raise ValueError("cycle search needs n >= 5")
    q = cycle_gluing_rule(4, n)
    start = tree_gb(path_graph(n), strategy="last" if force_iterated else "balanced", certify_degree=None)
    report = CycleReport(n, "obstructed", degree=degree, rule=q)
    F = start.basis
    if force_iterated:
        for b in F.elements:
            check = is_weakly_Q_homogeneous(b, q, "col")
            if not check:
                report.obstructions.append(_obstruction(b, check.witnesses, q))
        report.path_basis = list(F.elements)
        if report.obstructions:
            return report
        return _glue_cycle(report, F, q, n, degree, budget)

    cap = degree_cap if degree_cap is not None else default_degree_cap(F.elements)
    seen: dict = {}
    gens = list(F.elements)
    for rnd in range(1, max_rounds + 1):
        report.rounds = rnd
        for b in gens:
            seen.setdefault(b.unsigned(), Binomial(*b.unsigned()))
        cone_info = weak_homogeneity_cone(seen.values(), q, "col")
        current = {b.unsigned() for b in gens}
        blocking = [o for o in cone_info.obstructions if o.binomial.unsigned() in current]
        if blocking:
            report.obstructions = [_obstruction(o.binomial, o.witnesses, q) for o in blocking]
            report.trace.append({"round": rnd, "event": "no liftable orientation"})
            return report
        w = find_weight(cone_info.cone)
        if w is None:
            report.trace.append({"round": rnd, "event": "cone infeasible", "constraints": len(cone_info.forced)})
            report.obstructions = [_obstruction(b, is_weakly_Q_homogeneous(b.swapped(), q, "col").witnesses, q)
                                   for b in cone_info.forced]
            return report
        order = WeightOrder(q.s, [w])
        try:
            G = buchberger(gens, order, degree_cap=cap)
        except DegreeCapExceeded as exc:
            report.status = "degree_cap"
            report.trace.append({"round": rnd, "event": str(exc)})
            return report
        report.weight = list(w)
        bad = [b for b in G.elements if not is_weakly_Q_homogeneous(b, q, "col")]
        report.trace.append({"round": rnd, "weight": list(w), "basis_size": len(G.elements), "not_liftable": len(bad)})
        if not bad:
            report.path_basis = list(G.elements)
            return _glue_cycle(report, G, q, n, degree, budget)
        gens = list(G.elements)
    report.obstructions = [_obstruction(b, is_weakly_Q_homogeneous(b, q, "col").witnesses, q) for b in bad]
    return report


def _glue_cycle(report: CycleReport, F: GroebnerBasis, q: GluingRule, n: int, degree: int, budget) -> CycleReport:
    rows = GroebnerBasis(WeightOrder(q.r), (), True)
    try:
        H = qig_groebner(rows, F, q)
    except HomogeneityViolation as exc:
        report.obstructions = [{"binomial": exc.binomial, "witness_tuple": [exc.witness]}]
        return report
    kwargs = {} if budget is None else {"budget": budget}
    cert = certify_gb_of_kernel(psi_map(cycle_graph(n)), H, degree, **kwargs)
    report.certification = cert
    report.basis = list(H.elements)
    report.order = H.order
    report.status = "certified" if cert.certified else "failed"
    return report
