import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cimqig.core_algebra import (Binomial, GroebnerBasis, VariableTable, WeightOrder, buchberger, canonical_basis,
                                 compare, divides, first_unreduced_spair, is_groebner, mono_div, mono_gcd, mono_lcm,
                                 mono_mul, monomial, orient, reduce, s_pair)
from cimqig.errors import DegreeCapExceeded, DimensionMismatch
from cimqig.toric_oracle import MonomialMap, in_kernel, kernel_binomials_up_to_degree

NV = 5
monos = st.lists(st.integers(0, NV - 1), min_size=0, max_size=4).map(monomial)
levels = st.lists(st.lists(st.integers(-3, 3), min_size=NV, max_size=NV), max_size=2)


def test_variable_table_roundtrip():
    t = VariableTable(["a", "b"])
    assert t.add("c") == 2
    with pytest.raises(ValueError):
        t.add("a")
    assert t.index("b") == 1 and t[2] == "c" and len(t) == 3 and "c" in t


def test_monomial_helpers():
    a, b = monomial([0, 0, 2]), monomial([0, 1])
    assert mono_mul(a, b) == (0, 0, 0, 1, 2)
    assert mono_lcm(a, b) == (0, 0, 1, 2)
    assert mono_gcd(a, b) == (0,)
    assert divides((0, 2), a) and not divides((1,), a)
    assert mono_div(a, (0,)) == (0, 2)


def test_binomial_validation():
    with pytest.raises(ValueError):
        Binomial((0,), (0,))
    with pytest.raises(ValueError):
        Binomial((0,), (1, 2))
    assert Binomial((2, 1), (0, 3)).lead == (1, 2)


def test_order_rejects_foreign_variable():
    with pytest.raises(DimensionMismatch):
        WeightOrder(2).key((3,))


def test_rational_levels_scale_to_integers():
    from fractions import Fraction
    o = WeightOrder(2, [(Fraction(1, 2), Fraction(1, 3))])
    assert o.levels == ((3, 2),)


@given(levels, monos, monos, monos)
def test_order_is_total_and_multiplicative(lv, a, b, c):
    o = WeightOrder(NV, lv)
    assert compare(o, a, b) == -compare(o, b, a)
    assert (compare(o, a, b) == 0) == (a == b)
    if compare(o, a, b) > 0:
        assert compare(o, mono_mul(a, c), mono_mul(b, c)) > 0


@given(levels, monos, monos, monos)
def test_order_transitive(lv, a, b, c):
    o = WeightOrder(NV, lv)
    if compare(o, a, b) > 0 and compare(o, b, c) > 0:
        assert compare(o, a, c) > 0


def segre_map():
    # z_jk -> x_j y_k, 2 x 3
    cols = [[1 if p == j else 0 for p in range(2)] + [1 if p == k else 0 for p in range(3)]
            for j in range(2) for k in range(3)]
    import numpy as np
    return MonomialMap(VariableTable(range(6)), VariableTable(range(5)), np.array(cols).T)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=6, max_size=6), max_size=1))
def test_buchberger_gives_groebner_basis_of_kernel(lv):
    fmap = segre_map()
    order = WeightOrder(6, lv)
    gens = kernel_binomials_up_to_degree(fmap, 2)
    g = buchberger(gens, order)
    assert is_groebner(g) and first_unreduced_spair(g) is None
    assert all(in_kernel(fmap, b) for b in g.elements)
    # every kernel binomial of degree <= 3 reduces to zero
    for b in kernel_binomials_up_to_degree(fmap, 3):
        assert reduce(b, g) is None
    # canonical basis is idempotent
    assert canonical_basis(g.elements, order) == g.elements


def test_s_pair_cancels_leads():
    f, g = Binomial((0, 1), (2, 3)), Binomial((1, 4), (2, 2))
    assert s_pair(f, g) == Binomial((2, 3, 4), (0, 2, 2))
    assert s_pair(f, f) is None


def test_degree_cap():
    # twisted cubic style: cap 1 cannot hold quadrics
    fmap = segre_map()
    with pytest.raises(DegreeCapExceeded):
        buchberger(kernel_binomials_up_to_degree(fmap, 2), WeightOrder(6), degree_cap=1)


@given(levels, st.lists(st.tuples(monos, monos), min_size=1, max_size=6))
def test_realizing_weight_agrees_with_order(lv, pairs):
    o = WeightOrder(NV, lv)
    bs = []
    for a, b in pairs:
        if a != b and len(a) == len(b) and a:
            bs.append(orient(Binomial(a, b), o))
    w = o.realizing_weight(bs)
    for b in bs:
        assert sum(w[i] for i in b.lead) > sum(w[i] for i in b.trail)


def test_orient_picks_larger_monomial():
    o = WeightOrder(3, [(0, 0, 1)])
    b = orient(Binomial((0, 1), (2, 2)), o)
    assert b.lead == (2, 2) and b.oriented


def test_reduce_to_zero_in_ideal():
    g = GroebnerBasis(WeightOrder(4), (Binomial((0, 3), (1, 2), True),), True)
    assert reduce(Binomial((0, 0, 3), (0, 1, 2)), g) is None
    assert reduce((0, 0, 3), g) == (0, 1, 2)


def test_product_order_brute_force():
    # graded tie-break beats lower degree
    o = WeightOrder(3)
    for a, b in itertools.combinations([(0,), (1,), (2,), (0, 0), (0, 1)], 2):
        if len(a) != len(b):
            assert compare(o, a, b) == (1 if len(a) > len(b) else -1)
