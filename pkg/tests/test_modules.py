import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigp import linalg as la
from trigp.modules import (
    Module,
    ModuleHom,
    SearchConfig,
    cokernel,
    decompose,
    direct_sum,
    dual,
    hom_dim,
    identity_hom,
    is_indecomposable,
    is_isomorphic,
    kernel,
    radical_of_module,
    regular_module,
    top,
    validate_module,
    zero_module,
)

from conftest import mat


def test_regular_modules(f2, lam2, a2):
    k = regular_module(f2)
    assert k.dim == 1 and (k.actions[0] == 1).all()
    r = regular_module(lam2)
    assert r.dim == 2 and (r.actions[1] == mat([[0, 0], [1, 0]])).all()
    dec = decompose(regular_module(a2))
    assert dec.certified and [f.dim for f in dec.factors] == [1, 2]


def test_hom_dims(f2, simple_l2, reg_l2):
    k = regular_module(f2)
    assert hom_dim(k, k) == 1
    assert hom_dim(simple_l2, reg_l2) == 1
    assert hom_dim(reg_l2, simple_l2) == 1


def test_direct_sums(lam2, simple_l2, a2):
    ss = direct_sum([simple_l2, simple_l2]).module
    assert ss.dim == 2 and not ss.actions[1].any()
    one = direct_sum([simple_l2])
    assert (one.injections[0].matrix == la.identity(1)).all()
    dec = decompose(regular_module(a2))
    total = direct_sum(dec.factors).module
    assert is_isomorphic(total, regular_module(a2)) is not None


def test_kernel_cokernel(lam2, simple_l2, reg_l2):
    k, _ = kernel(identity_hom(reg_l2))
    c, _ = cokernel(identity_hom(reg_l2))
    assert k.dim == 0 and c.dim == 0
    zero = ModuleHom(simple_l2, simple_l2, la.zeros(1, 1))
    assert kernel(zero)[0].dim == 1 and cokernel(zero)[0].dim == 1
    x = ModuleHom(reg_l2, reg_l2, lam2.right_mult_matrix(lam2.basis_vector(1)))
    assert x.is_hom()
    assert is_isomorphic(kernel(x)[0], simple_l2) is not None
    assert is_isomorphic(cokernel(x)[0], simple_l2) is not None


def test_radical_top(lam2, simple_l2, reg_l2):
    rad, _ = radical_of_module(reg_l2)
    assert is_isomorphic(rad, simple_l2) is not None
    assert is_isomorphic(top(reg_l2)[0], simple_l2) is not None
    assert radical_of_module(direct_sum([simple_l2, simple_l2]).module)[0].dim == 0
    assert radical_of_module(zero_module(lam2))[0].dim == 0


def test_isomorphism(lam2, simple_l2, reg_l2):
    assert is_isomorphic(reg_l2, reg_l2) is not None
    assert is_isomorphic(simple_l2, reg_l2) is None
    c = mat([[1, 1], [0, 1]])
    ci = la.inverse(c, 2)
    other = Module(lam2, np.einsum("ij,djk,kl->dil", c, reg_l2.actions, ci) % 2)
    iso = is_isomorphic(reg_l2, other)
    assert iso is not None and iso.is_hom() and la.rank(iso.matrix, 2) == 2


def test_decompose(lam2, simple_l2, reg_l2):
    dec = decompose(direct_sum([simple_l2, reg_l2]).module)
    assert dec.certified and [f.dim for f in dec.factors] == [1, 2]
    assert decompose(reg_l2).factors[0].dim == 2 and len(decompose(reg_l2).factors) == 1
    assert decompose(zero_module(lam2)).factors == []
    assert is_indecomposable(reg_l2) is True


def test_dual(lam2, simple_l2, reg_l2, a2):
    d = dual(simple_l2)
    assert d.algebra is lam2.opposite() and d.dim == 1
    assert is_isomorphic(Module(lam2, dual(reg_l2).actions), reg_l2) is not None
    dd = dual(dual(reg_l2))
    assert dd.algebra is lam2 and (dd.actions == reg_l2.actions).all()
    from trigp.homological import is_injective

    dreg = dual(regular_module(a2))
    assert validate_module(dreg) == [] and is_injective(dreg)


def test_validate_module_catches_bad_action(lam2):
    bad = Module(lam2, np.stack([la.identity(2), la.identity(2)]))
    assert validate_module(bad)


@given(st.integers(0, 2**31), st.integers(1, 3))
def test_decomposition_reassembles(seed, n):
    from trigp.classify import jordan_module
    from trigp.algebra import truncated_polynomial

    rng = np.random.default_rng(seed)
    a = truncated_polynomial(2, 3)
    parts = [jordan_module(a, int(rng.integers(1, 4))) for _ in range(n)]
    x = direct_sum(parts).module
    c = rng.integers(0, 2, size=(x.dim, x.dim))
    while la.rank(c, 2) < x.dim:
        c = rng.integers(0, 2, size=(x.dim, x.dim))
    y = Module(a, np.einsum("ij,djk,kl->dil", c, x.actions, la.inverse(c, 2)) % 2)
    dec = decompose(y, SearchConfig(seed=seed))
    assert dec.certified
    assert sorted(f.dim for f in dec.factors) == sorted(p.dim for p in parts)
    assert la.rank(dec.iso(y).matrix, 2) == y.dim and dec.iso(y).is_hom()
