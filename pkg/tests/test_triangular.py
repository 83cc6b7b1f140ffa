import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigp import linalg as la
from trigp.algebra import field_algebra, product_algebra, validate_algebra
from trigp.homological import Tag, ext_dim, is_projective, simple_modules
from trigp.modules import Module, direct_sum, dual, is_isomorphic, regular_module, zero_module
from trigp.triangular import (
    Bimodule,
    InvariantViolation,
    adjoint_phi,
    bimodule_over_field,
    build_triangular,
    canonical_sequence,
    check_condition1,
    check_condition2,
    check_condition3,
    check_condition4,
    dualize_triple,
    e1_lambda,
    e1_rho,
    e2_lambda,
    e2_rho,
    hom_MY,
    in_gproj_perp,
    is_gi_triple,
    is_gp_triple,
    is_projective_triple,
    module_to_triple,
    regular_bimodule,
    t2,
    tensor_MX,
    triple_from_blocks,
    validate_bimodule,
    validate_triple,
    zero_bimodule,
    TripleModule,
)
from trigp.suites import random_triple


@pytest.fixture(scope="module")
def socle(g_l2, simple_l2, reg_l2):
    blocks = np.zeros((2, 2, 1), dtype=np.int64)
    blocks[0, 1, 0] = 1
    return triple_from_blocks(g_l2, simple_l2, reg_l2, blocks)


@pytest.fixture(scope="module")
def structural(g_l2):
    return check_condition1(g_l2.m, []), check_condition2(g_l2.m, [])


def test_build(f2, lam2, g_f2, g_l2, a2):
    assert g_f2.gamma.dim == 3 and validate_algebra(g_f2.gamma).ok
    assert g_l2.gamma.dim == 6 and validate_algebra(g_l2.gamma).ok
    # R = S = M = F2 is the A2 path algebra: same dimension, radical, and regular decomposition
    assert regular_module(g_f2.gamma).dim == regular_module(a2).dim
    g0 = build_triangular(lam2, f2, zero_bimodule(f2, lam2))
    prod = product_algebra([lam2, f2])
    assert (g0.gamma.table == prod.table).all()


def test_bad_bimodule(lam2, simple_l2):
    m = Bimodule(lam2, lam2, regular_module(lam2).actions, np.stack([la.identity(2), la.identity(2)]))
    assert validate_bimodule(m)
    with pytest.raises(ValueError):
        build_triangular(lam2, lam2, m)


def test_tensor_examples(f2, lam2, g_l2, simple_l2):
    for x in (simple_l2, regular_module(lam2)):
        t = tensor_MX(regular_bimodule(lam2), x)
        assert is_isomorphic(t.module, x) is not None
    k2 = Module(f2, np.ones((1, 1, 1)) * la.identity(2))
    m = bimodule_over_field(Module(f2, np.ones((1, 1, 1)) * la.identity(2)), f2)
    x3 = Module(f2, np.ones((1, 1, 1)) * la.identity(3))
    assert tensor_MX(m, x3).module.dim == 6 and k2.dim == 2
    assert tensor_MX(g_l2.m, simple_l2).module.dim == 1


def test_hom_examples(lam2, g_l2, simple_l2, reg_l2):
    assert is_isomorphic(hom_MY(g_l2.m, reg_l2).module, reg_l2) is not None
    assert hom_MY(g_l2.m, simple_l2).module.dim == 1
    assert hom_MY(g_l2.m, zero_module(lam2)).module.dim == 0


def test_functors(g_l2, simple_l2, lam2):
    t = e1_lambda(g_l2, simple_l2)
    assert t.x.dim == t.y.dim == 1 and (t.phi == 1).all()
    t = e2_lambda(g_l2, simple_l2)
    assert t.x.dim == 0 and t.phi.shape == (1, 0)
    t = e1_rho(g_l2, simple_l2)
    assert t.y.dim == 0
    t = e2_rho(g_l2, simple_l2)
    assert t.x.dim == 1 and validate_triple(t) == []
    for t in (e1_lambda(g_l2, simple_l2), e2_rho(g_l2, regular_module(lam2))):
        assert validate_triple(t) == []


def test_round_trip(g_l2, simple_l2, lam2):
    reg = regular_module(g_l2.gamma)
    t = module_to_triple(reg, g_l2)
    assert t.x.dim == 2 and t.y.dim == 4
    expected = direct_sum([e1_lambda(g_l2, regular_module(lam2)).to_module(),
                           e2_lambda(g_l2, regular_module(lam2)).to_module()]).module
    assert is_isomorphic(reg, expected) is not None
    z = module_to_triple(zero_module(g_l2.gamma), g_l2)
    assert z.dim == 0
    t = e2_lambda(g_l2, simple_l2)
    assert is_isomorphic(module_to_triple(t.to_module(), g_l2).to_module(), t.to_module()) is not None


def test_projective_triples(g_f2, g_l2, f2, lam2, simple_l2):
    assert is_projective_triple(e1_lambda(g_l2, regular_module(lam2)))[0]
    ok, why = is_projective_triple(e1_rho(g_f2, regular_module(f2)))
    assert not ok and "mono" in why
    ok, why = is_projective_triple(e2_lambda(g_l2, simple_l2))
    assert not ok and "Coker" in why


def test_canonical_sequence(g_l2, socle, simple_l2):
    cs = canonical_sequence(e1_lambda(g_l2, simple_l2))
    assert cs.right.dim == 0
    cs = canonical_sequence(socle)
    assert cs.middle.dim == 3 and cs.left.dim == 2 and cs.right.dim == 1
    cs = canonical_sequence(e2_lambda(g_l2, simple_l2))
    assert cs.left.dim == 0
    with pytest.raises(ValueError):
        canonical_sequence(e1_rho(g_l2, simple_l2))


def test_conditions(lam2, g_l2, simple_l2):
    c1 = check_condition1(regular_bimodule(lam2), [simple_l2])
    assert c1.passed and c1.mode == "structural"
    # right action through the quotient Λ2 -> F2: M = S as a bimodule
    s_bi = Bimodule(lam2, lam2, simple_l2.actions, simple_l2.actions)
    c1 = check_condition1(s_bi, [simple_l2])
    assert not c1.passed and "Tor_1" in c1.witnesses[0]
    c1 = check_condition1(s_bi, [])
    assert c1.passed and c1.mode == "vacuous" and not c1.verified
    c2 = check_condition2(regular_bimodule(lam2), [])
    assert c2.passed and c2.mode == "structural"
    c2 = check_condition2(s_bi, [simple_l2])
    assert not c2.passed and "Ext^1" in c2.witnesses[0]
    c2 = check_condition2(s_bi, [regular_module(lam2)])
    assert c2.passed and c2.mode == "verified"
    assert check_condition3(g_l2).passed and check_condition4(g_l2).passed
    assert check_condition3(g_l2).mode == check_condition4(g_l2).mode == "structural"


def test_conditions_zero_bimodule(f2, lam2):
    g0 = build_triangular(lam2, f2, zero_bimodule(f2, lam2))
    assert check_condition3(g0).passed and check_condition1(g0.m, []).passed


def test_gp_verdicts(g_l2, g_f2, f2, socle, structural, simple_l2):
    v = is_gp_triple(socle, *structural)
    assert v.tag is Tag.PROVEN_GP
    c1, c2 = check_condition1(g_f2.m, []), check_condition2(g_f2.m, [])
    v = is_gp_triple(e1_rho(g_f2, regular_module(f2)), c1, c2)
    assert v.tag is Tag.NOT_GP and not v.phi_mono
    assert is_gp_triple(e1_lambda(g_l2, simple_l2), *structural).tag is Tag.PROVEN_GP
    assert is_gp_triple(e2_lambda(g_l2, simple_l2), *structural).tag is Tag.PROVEN_GP


def test_gp_refuses_without_reports(socle, lam2, simple_l2):
    assert is_gp_triple(socle, None, None).tag is Tag.INAPPLICABLE
    s_bi = Bimodule(lam2, lam2, simple_l2.actions, simple_l2.actions)
    bad = check_condition1(s_bi, [simple_l2])
    v = is_gp_triple(socle, bad, check_condition2(socle.gamma.m, []))
    assert v.tag is Tag.INAPPLICABLE and "condition (1)" in v.note


def test_gi(g_f2, g_l2, f2, socle, lam2):
    c3, c4 = check_condition3(g_f2), check_condition4(g_f2)
    res = is_gi_triple(e1_rho(g_f2, regular_module(f2)), c3, c4)
    assert res.tag is Tag.PROVEN_GP and res.via_duality.tag is Tag.PROVEN_GP
    c3, c4 = check_condition3(g_l2), check_condition4(g_l2)
    assert is_gi_triple(e2_rho(g_l2, regular_module(lam2)), c3, c4).tag is Tag.PROVEN_GP
    d = dualize_triple(socle)
    op = g_l2.opposite_triangular()
    assert d.gamma is op and validate_triple(d) == []
    assert is_gi_triple(d, check_condition3(op), check_condition4(op)).tag is Tag.PROVEN_GP
    assert is_gi_triple(socle, c3, c4).tag is Tag.NOT_GP


def test_opposite_triangular(g_f2, g_l2):
    for g in (g_f2, g_l2):
        op = g.opposite_triangular()
        perm = g.opposite_permutation()
        assert (g.gamma.opposite().table[np.ix_(perm, perm, perm)] == op.gamma.table).all()
        assert op.opposite_triangular() is g


def test_adjoint(g_l2, socle):
    h, adj = adjoint_phi(socle)
    assert adj.shape == (2, 1) and la.rank(adj, 2) == 1


def test_perp(g_l2, lam2, simple_l2):
    reg = regular_module(lam2)
    t = e1_lambda(g_l2, reg)
    assert in_gproj_perp(t, [regular_module(g_l2.gamma)], [simple_l2], [simple_l2]) == (True, True)
    t = e2_lambda(g_l2, simple_l2)
    gp_gamma = [e2_lambda(g_l2, simple_l2).to_module()]
    assert in_gproj_perp(t, gp_gamma, [simple_l2], [simple_l2]) == (False, False)
    assert in_gproj_perp(t, [], [], []) == (True, True)


def test_invalid_phi_is_named(g_l2, simple_l2, reg_l2):
    bad = TripleModule(g_l2, simple_l2, reg_l2, np.array([[1], [0]]))
    errs = validate_triple(bad)
    assert errs and "S-basis element 1" in errs[0]


@given(st.integers(0, 2**31))
def test_flatten_is_valid_and_round_trips(seed):
    from trigp.suites import t2_lambda2
    from trigp.modules import validate_module

    g = t2_lambda2()
    t = random_triple(g, np.random.default_rng(seed))
    z = t.to_module()
    assert validate_triple(t) == [] and validate_module(z) == []
    back = module_to_triple(z, g)
    assert is_isomorphic(back.to_module(), z) is not None
    assert la.rank(back.phi, 2) == la.rank(t.phi, 2)


@given(st.integers(0, 2**31))
def test_dualize_involution(seed):
    from trigp.suites import t2_lambda2

    g = t2_lambda2()
    t = random_triple(g, np.random.default_rng(seed))
    dd = dualize_triple(dualize_triple(t))
    assert dd.gamma is g and is_isomorphic(dd.to_module(), t.to_module()) is not None


@given(st.integers(0, 2**31))
def test_sequence_dimensions(seed):
    from trigp.suites import t2_lambda2

    g = t2_lambda2()
    t = random_triple(g, np.random.default_rng(seed))
    if t.is_phi_mono():
        cs = canonical_sequence(t)
        c, _ = t.coker_phi()
        assert t.y.dim == t.tensor.module.dim + c.dim == cs.left.y.dim + cs.right.dim
