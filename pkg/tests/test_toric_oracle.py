import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cimqig.core_algebra import Binomial, GroebnerBasis, VariableTable, WeightOrder, buchberger
from cimqig.errors import BudgetExceeded
from cimqig.toric_oracle import (MonomialMap, apply, certify_gb_of_kernel, count_monomials, factors_through, in_kernel,
                                 kernel_binomials_up_to_degree, load_map)

matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(2, 5).flatmap(
        lambda cols: st.lists(st.lists(st.integers(0, 2), min_size=cols, max_size=cols), min_size=rows, max_size=rows)))


def make(mat) -> MonomialMap:
    a = np.array(mat)
    return MonomialMap(VariableTable(range(a.shape[1])), VariableTable(range(a.shape[0])), a)


def twisted_cubic():
    return make([[3, 2, 1, 0], [0, 1, 2, 3]])


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        make([[1, -1]])


def test_matrix_is_read_only():
    m = twisted_cubic()
    with pytest.raises(ValueError):
        m.matrix[0, 0] = 5


def test_count_monomials():
    assert count_monomials(4, 2) == 4 + 10 and count_monomials(3, 0) == 0


def test_twisted_cubic_quadrics():
    got = {b.unsigned() for b in kernel_binomials_up_to_degree(twisted_cubic(), 2)}
    assert got == {((1, 1), (0, 2)), ((1, 2), (0, 3)), ((2, 2), (1, 3))}


@settings(max_examples=40, deadline=None)
@given(matrices, st.integers(1, 3))
def test_kernel_closure_and_monotonicity(mat, d):
    fmap = make(mat)
    ks = kernel_binomials_up_to_degree(fmap, d)
    assert all(in_kernel(fmap, b) for b in ks)
    assert all(not set(b.lead) & set(b.trail) for b in ks)
    lower = {b.unsigned() for b in kernel_binomials_up_to_degree(fmap, d - 1)} if d > 1 else set()
    assert lower <= {b.unsigned() for b in ks}


def test_certify_accepts_groebner_basis_and_rejects_partial():
    fmap = twisted_cubic()
    order = WeightOrder(4)
    g = buchberger(kernel_binomials_up_to_degree(fmap, 2), order)
    assert certify_gb_of_kernel(fmap, g, 3).certified
    partial = GroebnerBasis(order, g.elements[:1])
    rep = certify_gb_of_kernel(fmap, partial, 2)
    assert rep.in_kernel and not rep.complete and rep.unreduced


def test_certify_flags_non_kernel_element():
    fmap = twisted_cubic()
    bad = GroebnerBasis(WeightOrder(4), (Binomial((0, 0), (1, 1), True),))
    rep = certify_gb_of_kernel(fmap, bad, 2)
    assert not rep.in_kernel and not rep.certified


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        kernel_binomials_up_to_degree(twisted_cubic(), 3, budget=5)


def test_apply_sums_columns():
    assert list(apply(twisted_cubic(), (0, 3))) == [3, 3]


def test_json_roundtrip(tmp_path):
    m = MonomialMap(VariableTable([("a", 1), "b"]), VariableTable(["s", "t"]), np.array([[1, 0], [2, 1]]))
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_json()))
    back = load_map(path)
    assert list(back.domain_table) == [("a", 1), "b"]
    assert (back.matrix == m.matrix).all()


def test_factors_through_product():
    # z_jk -> s_j t_k factors as x_j y_k
    cols = [[1 if p == j else 0 for p in range(2)] + [1 if p == k else 0 for p in range(2)]
            for j in range(2) for k in range(2)]
    psi = MonomialMap(VariableTable([(j, k) for j in range(2) for k in range(2)]),
                      VariableTable(["s0", "s1", "t0", "t1"]), np.array(cols).T)
    px = MonomialMap(VariableTable([0, 1]), VariableTable(["s0", "s1"]), np.eye(2, dtype=int))
    py = MonomialMap(VariableTable([0, 1]), VariableTable(["t0", "t1"]), np.eye(2, dtype=int))
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert factors_through(psi, pairs, px, py)
    assert not factors_through(psi, [(0, 1), (0, 0), (1, 0), (1, 1)], px, py)
