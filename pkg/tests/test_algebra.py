import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigp.algebra import (
    Algebra,
    QuiverPresentation,
    field_algebra,
    linear_quiver,
    product_algebra,
    quotient_path_algebra,
    truncated_polynomial,
    validate_algebra,
)
from trigp.triangular import t2


def test_field_and_broken_unit():
    assert validate_algebra(field_algebra(2)).ok
    bad = Algebra(2, np.zeros((1, 1, 1)), [1], np.zeros((0, 1)))
    rep = validate_algebra(bad)
    assert not rep.ok and "unit" in rep.violations[0]


@pytest.mark.parametrize("p,t", [(2, 1), (2, 2), (3, 6), (5, 3)])
def test_truncated(p, t):
    a = truncated_polynomial(p, t)
    assert a.dim == t and validate_algebra(a).ok
    if t == 1:
        assert a.radical.shape[0] == 0
    x = a.basis_vector(1) if t > 1 else None
    if t == 6:
        x5 = a.basis_vector(5)
        assert not a.mult(x5, x).any()


def test_quivers(g_f2):
    a2 = quotient_path_algebra(linear_quiver(2), 2)
    assert a2.dim == 3 and validate_algebra(a2).ok
    assert quotient_path_algebra(linear_quiver(3), 2).dim == 6
    loop = QuiverPresentation(1, [(0, 0)], [{(0, 0): 1}], truncation=2)
    assert (quotient_path_algebra(loop, 2).table == truncated_polynomial(2, 2).table).all()
    # A2 path algebra and T2(F2) have the same number of idempotents and radical dimension
    assert a2.radical.shape[0] == g_f2.gamma.radical.shape[0] == 1


def test_non_admissible_relation():
    q = QuiverPresentation(2, [(0, 1)], [{(0,): 1}])
    with pytest.raises(ValueError, match="admissible"):
        quotient_path_algebra(q, 2)


def test_cycle_without_relation_is_rejected():
    with pytest.raises(ValueError):
        quotient_path_algebra(QuiverPresentation(1, [(0, 0)], []), 2)


def test_no_arrows_gives_product_of_fields():
    a = quotient_path_algebra(QuiverPresentation(3, []), 3)
    assert a.dim == 3 and a.is_commutative()


def test_opposite(g_f2, lam2):
    assert (lam2.opposite().table == lam2.table).all()
    op = g_f2.gamma.opposite()
    assert op.opposite() is g_f2.gamma
    assert validate_algebra(op).ok and not g_f2.gamma.is_commutative()


@given(st.sampled_from([2, 3]), st.integers(1, 4), st.integers(1, 3))
def test_product_algebra_valid(p, t1, t2_):
    a = product_algebra([truncated_polynomial(p, t1), truncated_polynomial(p, t2_)])
    assert a.dim == t1 + t2_ and validate_algebra(a).ok
    assert a.opposite().opposite() is a


def test_triangular_dims(f2, lam2, g_l2):
    assert t2(f2).gamma.dim == 3
    assert g_l2.gamma.dim == 6 and validate_algebra(g_l2.gamma).ok
