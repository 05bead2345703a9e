"""Lifting binomials along a gluing rule and assembling glued Groebner bases.

A monomial x_{j_1}...x_{j_d} on the row side lifts to z_{j_1 k_1}...z_{j_d k_d}
for every tuple k with all (j_l, k_l) in Q; column-side monomials lift the
same way with the roles swapped.  A lift is recorded by the multiset of
attached opposite-side indices, since reordering equal factors gives the
same monomial.

Homogeneity is tested one multiset at a time: the lead of a binomial must
be liftable by every multiset the trail is, and vice versa for strong
homogeneity.  This is what makes ``lead_k - trail_k`` a kernel element for
each lead lift.  The stricter single-permutation test is available as
``weakly_homogeneous_by_matching`` for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product, zip_longest

import numpy as np

from .core_algebra import (Binomial, GroebnerBasis, VariableTable, WeightOrder, canonical_basis,
                           is_groebner, orient)
from .errors import DimensionMismatch, HomogeneityViolation
from .quasi_independence import GluingRule, universal_gb
from .toric_oracle import MonomialMap, certify_gb_of_kernel


def _factor_sets(q: GluingRule, side: str):
    if side == "row":
        return q.row_sets, lambda j, k: q.pair_index[(j, k)]
    if side == "col":
        return q.col_sets, lambda k, j: q.pair_index[(j, k)]
    raise ValueError(f"side must be 'row' or 'col', not {side!r}")


def lift_indices(m: tuple, q: GluingRule, side: str = "row") -> list[tuple]:
    """Distinct lifts of ``m`` as (index tuple, lifted monomial), sorted by index tuple.

    The index tuple lists the opposite-side index attached to each factor of
    ``m`` in order; among tuples giving the same monomial the smallest is kept.
    """
    sets, pair = _factor_sets(q, side)
    nmax = len(sets)
    if any(v < 0 or v >= nmax for v in m):
        raise DimensionMismatch(f"monomial {m} has a variable outside the {side} side of Q")
    seen: dict[tuple, tuple] = {}
    for ks in product(*(sorted(sets[v]) for v in m)):
        lifted = tuple(sorted(pair(v, k) for v, k in zip(m, ks)))
        if lifted not in seen:
            seen[lifted] = ks
    return sorted((ks, lifted) for lifted, ks in seen.items())


def lift_multisets(m: tuple, q: GluingRule, side: str = "row") -> set:
    """Multisets (sorted tuples) of opposite-side indices by which ``m`` lifts."""
    sets, _ = _factor_sets(q, side)
    return {tuple(sorted(ks)) for ks in product(*(sorted(sets[v]) for v in m))}


@dataclass(frozen=True)
class HomogeneityCheck:
    ok: bool
    lead_lifts: frozenset
    trail_lifts: frozenset
    witnesses: tuple = ()

    def __bool__(self) -> bool:
        return self.ok

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


def _check(b: Binomial, q: GluingRule, side: str, strong: bool) -> HomogeneityCheck:
    lead = frozenset(lift_multisets(b.lead, q, side))
    trail = frozenset(lift_multisets(b.trail, q, side))
    missing = sorted(lead - trail)
    if strong:
        missing += sorted(trail - lead)
    return HomogeneityCheck(not missing, lead, trail, tuple(missing))


def is_weakly_Q_homogeneous(b: Binomial, q: GluingRule, side: str = "row") -> HomogeneityCheck:
    """Every lift multiset of the lead is also one of the trail; witnesses list the failures."""
    return _check(b, q, side, strong=False)


def is_strongly_Q_homogeneous(b: Binomial, q: GluingRule, side: str = "row") -> HomogeneityCheck:
    return _check(b, q, side, strong=True)


def weakly_homogeneous_by_matching(b: Binomial, q: GluingRule, side: str = "row") -> bool:
    """Single permutation test: one factor matching sigma working for every lift tuple.

    Brute force over permutations; for degree-bounded inputs only.
    """
    sets, _ = _factor_sets(q, side)
    lead = [sets[v] for v in b.lead]
    trail = [sets[v] for v in b.trail]
    if any(not s for s in lead):
        return True
    return any(all(a <= trail[p] for a, p in zip(lead, perm)) for perm in permutations(range(len(trail))))


def lift_binomial(b: Binomial, q: GluingRule, side: str = "row") -> list[Binomial]:
    """One lifted binomial per distinct lift of the lead.

    The trail is lifted by the same multiset of indices, choosing the
    smallest admissible assignment.  Raises HomogeneityViolation when some
    lead lift has no matching trail lift.
    """
    check = is_weakly_Q_homogeneous(b, q, side)
    if not check:
        raise HomogeneityViolation(b, check.witness)
    trail_by_multiset: dict[tuple, tuple] = {}
    for ks, lifted in lift_indices(b.trail, q, side):
        trail_by_multiset.setdefault(tuple(sorted(ks)), lifted)
    out = set()
    for ks, lifted in lift_indices(b.lead, q, side):
        out.add(Binomial(lifted, trail_by_multiset[tuple(sorted(ks))]))
    return sorted(out, key=Binomial.sort_key)


def _pull_back(q: GluingRule, wx, wy) -> list[int]:
    return [(wx[j] if wx is not None else 0) + (wy[k] if wy is not None else 0) for j, k in q.pairs]


def composite_order(F: GroebnerBasis, G: GroebnerBasis, q: GluingRule, hq_weight=None) -> WeightOrder:
    """Order on the pair variables that keeps every lifted lead leading.

    Levels: the two input cascades pulled back level by level, then the
    pull-back of single weights realizing each input order on its basis,
    then ``hq_weight`` if given; the tie-break settles the rest.
    """
    if F.order.nvars != q.r or G.order.nvars != q.s:
        raise DimensionMismatch("input orders do not match the gluing rule's shape")
    levels = [_pull_back(q, wx, wy) for wx, wy in zip_longest(F.order.levels, G.order.levels)]
    levels.append(_pull_back(q, F.order.realizing_weight(F.elements), G.order.realizing_weight(G.elements)))
    if hq_weight is not None:
        levels.append(list(hq_weight))
    return WeightOrder(len(q.pairs), levels)


def qig_groebner(F: GroebnerBasis, G: GroebnerBasis, q: GluingRule, hq_weight=None,
                 glued_map: MonomialMap | None = None, certify_degree: int = 3) -> GroebnerBasis:
    """Lifts of F (row side) and G (column side) together with the cycle binomials of Q."""
    lifts = []
    for basis, side in ((F, "row"), (G, "col")):
        for b in basis.elements:
            check = is_weakly_Q_homogeneous(b, q, side)
            if not check:
                raise HomogeneityViolation(b, check.witness)
            lifts.extend(lift_binomial(b, q, side))
    order = composite_order(F, G, q, hq_weight)
    for b in lifts:
        if orient(b, order).lead != b.lead:
            raise AssertionError(f"lifted lead of {b} is not leading under the composite order")
    elements = canonical_basis(lifts + universal_gb(q), order)
    table = q.pair_table()
    certified = is_groebner(elements)
    if certified and glued_map is not None:
        certified = certify_gb_of_kernel(glued_map, GroebnerBasis(order, elements), certify_degree).certified
    return GroebnerBasis(order, elements, certified, table)


def glued_matrix(A: MonomialMap, A2: MonomialMap, q: GluingRule) -> MonomialMap:
    """Columns (a_j; a'_k) for (j, k) in Q with the two parameter lists stacked."""
    if A.nvars != q.r or A2.nvars != q.s:
        raise DimensionMismatch(f"maps with {A.nvars} and {A2.nvars} columns for a {q.r} x {q.s} rule")
    p1, p2 = list(A.parameter_table), list(A2.parameter_table)
    if set(p1) & set(p2):
        p1, p2 = [(0, p) for p in p1], [(1, p) for p in p2]
    cols = [np.concatenate([A.matrix[:, j], A2.matrix[:, k]]) for j, k in q.pairs]
    mat = np.array(cols, dtype=np.int64).T if cols else np.zeros((len(p1) + len(p2), 0), dtype=np.int64)
    return MonomialMap(q.pair_table(), VariableTable(p1 + p2), mat)
