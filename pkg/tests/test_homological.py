import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigp import linalg as la
from trigp.algebra import truncated_polynomial
from trigp.homological import (
    ComplexWindow,
    NotProjectiveError,
    Tag,
    ext,
    ext_dim,
    extension_from_cocycle,
    global_dimension,
    gorenstein_dimension,
    gp_oracle,
    is_injective,
    is_projective,
    is_self_injective,
    is_totally_acyclic_window,
    periodic_window,
    projective_cover,
    simple_modules,
    syzygy,
    tor,
    transpose,
)
from trigp.modules import Module, ModuleHom, direct_sum, dual, is_isomorphic, kernel, regular_module, zero_module


@pytest.fixture(scope="module")
def a2_simples(g_f2):
    """(k,0) and (0,k) over T2(F2), as flattened modules."""
    k0 = next(s for s in simple_modules(g_f2.gamma) if s.act(g_f2.embed_r(g_f2.r.unit)).any())
    k1 = next(s for s in simple_modules(g_f2.gamma) if s.act(g_f2.embed_s(g_f2.s.unit)).any())
    return k0, k1


def test_cover_examples(lam2, simple_l2, reg_l2, a2_simples):
    cov = projective_cover(reg_l2)
    assert cov.projective.dim == 2 and la.rank(cov.hom.matrix, 2) == 2
    cov = projective_cover(simple_l2)
    assert cov.projective.dim == 2
    assert is_isomorphic(kernel(cov.hom)[0], simple_l2) is not None
    k0, k1 = a2_simples
    cov = projective_cover(k0)
    assert cov.projective.dim == 2
    assert is_isomorphic(kernel(cov.hom)[0], projective_cover(k1).projective) is not None


def test_syzygies(simple_l2, reg_l2, a2_simples):
    assert syzygy(reg_l2, 1).dim == 0
    for i in range(5):
        assert is_isomorphic(syzygy(simple_l2, i), simple_l2) is not None
    assert syzygy(a2_simples[0], 2).dim == 0


def test_ext_examples(simple_l2, reg_l2, a2_simples):
    assert ext_dim(reg_l2, simple_l2, 1) == 0
    assert ext_dim(simple_l2, simple_l2, 1) == 1
    k0, k1 = a2_simples
    assert ext_dim(k0, k1, 1) == 1
    assert ext_dim(k1, k0, 1) == 0


def test_tor_examples(lam2, simple_l2, reg_l2):
    s_right = Module(lam2.opposite(), simple_l2.actions)
    assert tor(s_right, reg_l2, 1) == 0
    assert tor(s_right, simple_l2, 1) == 1
    assert tor(regular_module(lam2, "right"), simple_l2, 1) == 0


def test_transpose(lam2, simple_l2, reg_l2, a2_simples):
    assert transpose(reg_l2).dim == 0
    tr = transpose(simple_l2)
    assert tr.algebra.same_as(lam2.opposite())
    assert is_isomorphic(tr, Module(lam2.opposite(), simple_l2.actions)) is not None
    k0, _ = a2_simples
    t = transpose(k0)
    assert t.dim == 1 and t.algebra is k0.algebra.opposite()


def test_projective_injective(simple_l2, reg_l2):
    assert is_projective(reg_l2) and is_injective(reg_l2)
    assert not is_projective(simple_l2) and not is_injective(simple_l2)


def test_dimensions(lam2, g_f2, g_l2):
    assert is_self_injective(lam2)
    assert global_dimension(g_f2.gamma, 4) == 1
    assert global_dimension(lam2, 4) is None
    assert gorenstein_dimension(g_l2.gamma, 4) == 1


def test_oracle_examples(simple_l2, reg_l2, a2_simples, g_f2):
    for t in (2, 3, 4):
        a = truncated_polynomial(3, t)
        v = gp_oracle(simple_modules(a)[0])
        assert v.tag is Tag.PROVEN_GP and v.reason == "self-injective"
    k0, k1 = a2_simples
    v = gp_oracle(k0)
    assert v.tag is Tag.NOT_GP and v.witness.degree == 1 and v.witness.side == "left"
    assert gp_oracle(k1).tag is Tag.PROVEN_GP and gp_oracle(k1).reason == "projective"
    assert gp_oracle(regular_module(g_f2.gamma)).is_gp
    with pytest.raises(ValueError):
        gp_oracle(k0, 0)


def test_extension_from_cocycle(simple_l2, reg_l2):
    res = ext(simple_l2, simple_l2, 1)
    assert res.dim == 1
    e, left, right = extension_from_cocycle(res, res.cocycles[0])
    assert left.is_hom() and right.is_hom()
    assert is_isomorphic(e, reg_l2) is not None
    zero = ModuleHom(res.cocycles[0].source, simple_l2, la.zeros(1, 1))
    e0, _, _ = extension_from_cocycle(res, zero)
    assert is_isomorphic(e0, direct_sum([simple_l2, simple_l2]).module) is not None


def test_windows(lam2, reg_l2):
    d = lam2.right_mult_matrix(lam2.basis_vector(1))
    assert is_totally_acyclic_window(periodic_window(reg_l2, d, 0, 5))
    z = zero_module(lam2)
    terms = {0: z, 1: reg_l2, 2: reg_l2, 3: z}
    diffs = {1: ModuleHom(reg_l2, z, la.zeros(0, 2)), 2: ModuleHom(reg_l2, reg_l2, la.identity(2)),
             3: ModuleHom(z, reg_l2, la.zeros(2, 0))}
    assert is_totally_acyclic_window(ComplexWindow(0, 3, terms, diffs))
    w = periodic_window(reg_l2, d, 0, 5)
    w.diffs[3] = ModuleHom(reg_l2, reg_l2, la.zeros(2, 2))
    assert not is_totally_acyclic_window(w)


def test_window_rejects_non_projective(simple_l2):
    with pytest.raises(NotProjectiveError):
        is_totally_acyclic_window(periodic_window(simple_l2, la.zeros(1, 1), 0, 2))


def test_window_rejects_non_complex(reg_l2):
    with pytest.raises(ValueError):
        periodic_window(reg_l2, la.identity(2), 0, 3)


@given(st.integers(0, 2**31))
def test_ext_two_routes_random_lambda3(seed):
    from trigp.suites import all_nilpotent_modules

    a = truncated_polynomial(2, 3)
    rng = np.random.default_rng(seed)
    mods = [all_nilpotent_modules(a, int(rng.integers(1, 3))) for _ in range(2)]
    x, y = (m[int(rng.integers(len(m)))] for m in mods)
    for i in (1, 2):
        assert ext_dim(x, y, i) == ext_dim(dual(y), dual(x), i)
