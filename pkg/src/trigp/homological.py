"""Projective covers, syzygies, Ext/Tor, transposes, and the bounded GP oracle.

Everything here works from minimal projective resolutions built out of the
indecomposable projectives ``A e`` for a complete set of primitive
orthogonal idempotents ``e``. These routines are the brute-force ground
truth that the triple criteria in :mod:`trigp.triangular` are checked
against.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .modules import (
    Module,
    ModuleHom,
    cokernel,
    direct_sum,
    dual,
    hom_dim,
    hom_space,
    is_isomorphic,
    kernel,
    primitive_idempotents,
    quotient_module,
    radical_of_module,
    regular_module,
    submodule,
    top,
    zero_module,
)

DEFAULT_BOUND = 8


class NotProjectiveError(ValueError):
    """A complex window contains a non-projective term."""


@dataclass(eq=False)
class IndecomposableProjective:
    index: int
    idempotent: np.ndarray
    basis: np.ndarray  # columns: algebra elements spanning A e
    module: Module


def indecomposable_projectives(a: Algebra) -> list[IndecomposableProjective]:
    """The modules ``A e`` for the primitive idempotents of ``a``, in idempotent order."""
    if "projectives" not in a._cache:
        reg = regular_module(a)
        out = []
        for j, e in enumerate(primitive_idempotents(a)):
            basis = la.column_basis(a.right_mult_matrix(e), a.p)
            mod, _ = submodule(reg, basis)
            out.append(IndecomposableProjective(j, e, basis, mod))
        a._cache["projectives"] = out
    return a._cache["projectives"]


def simple_modules(a: Algebra) -> list[Module]:
    """Pairwise non-isomorphic simple modules, as tops of the indecomposable projectives."""
    if "simples" not in a._cache:
        simples: list[Module] = []
        for proj in indecomposable_projectives(a):
            s, _ = top(proj.module)
            if not any(is_isomorphic(s, t) is not None for t in simples):
                simples.append(s)
        a._cache["simples"] = simples
    return a._cache["simples"]


@dataclass(eq=False)
class Cover:
    hom: ModuleHom  # P -> x, surjective with kernel inside rad P
    summands: list[int]  # idempotent indices of the summands A e of P

    @property
    def projective(self) -> Module:
        return self.hom.source


def projective_cover(x: Module) -> Cover:
    """Minimal projective cover, built greedily from generators lying in ``e x``."""
    a, p = x.algebra, x.p
    projs = indecomposable_projectives(a)
    if x.dim == 0:
        return Cover(ModuleHom(zero_module(a), x, la.zeros(0, 0)), [])
    _, rad_inc = radical_of_module(x)
    span = rad_inc.matrix
    summands, blocks = [], []
    current = la.rank(span, p) if span.shape[1] else 0
    for proj in projs:
        ex = la.column_basis(x.act(proj.idempotent), p)
        for v in ex.T:
            trial = np.concatenate([span, v.reshape(-1, 1)], axis=1)
            r = la.rank(trial, p)
            if r == current:
                continue
            # image of A v = images of the basis elements of A e applied to v
            cols = np.stack([x.act(b) @ v % p for b in proj.basis.T], axis=1)
            span = np.concatenate([span, cols], axis=1)
            current = la.rank(span, p)
            summands.append(proj.index)
            blocks.append(cols)
            if current == x.dim:
                break
        if current == x.dim:
            break
    total = direct_sum([projs[j].module for j in summands], a).module
    cover = ModuleHom(total, x, np.concatenate(blocks, axis=1))
    return Cover(cover, summands)


@dataclass(eq=False)
class Resolution:
    """Minimal resolution data: ``covers[k]: P_k -> Ω^k``, ``inclusions[k]: Ω^{k+1} -> P_k``."""

    module: Module
    syzygies: list[Module] = field(default_factory=list)
    covers: list[Cover] = field(default_factory=list)
    inclusions: list[ModuleHom] = field(default_factory=list)

    def extend_to(self, n: int) -> "Resolution":
        if not self.syzygies:
            self.syzygies.append(self.module)
        while len(self.syzygies) <= n:
            last = self.syzygies[-1]
            cov = projective_cover(last)
            omega, inc = kernel(cov.hom)
            self.covers.append(cov)
            self.inclusions.append(inc)
            self.syzygies.append(omega)
        return self


_RESOLUTIONS: dict[str, Resolution] = {}
_RES_LOCK = threading.Lock()


def resolution(x: Module, n: int) -> Resolution:
    """Memoized minimal resolution of ``x`` computed through Ω^n."""
    key = x.fingerprint()
    with _RES_LOCK:
        res = _RESOLUTIONS.get(key)
        if res is None:
            res = _RESOLUTIONS[key] = Resolution(x)
        res.extend_to(n)
    return res


def clear_caches():
    with _RES_LOCK:
        _RESOLUTIONS.clear()
    _GP_CACHE.clear()


def syzygy(x: Module, i: int) -> Module:
    if i < 0:
        raise ValueError("syzygy degree must be non-negative")
    return resolution(x, i).syzygies[i]


def _hom_from_projective_dim(summands: list[int], y: Module) -> int:
    projs = indecomposable_projectives(y.algebra)
    return sum(la.rank(y.act(projs[j].idempotent), y.p) for j in summands)


def ext_dim(x: Module, y: Module, i: int) -> int:
    """dim Ext^i_A(x, y) by the long exact sequence of 0 -> Ω^i -> P_{i-1} -> Ω^{i-1} -> 0."""
    if i == 0:
        return hom_dim(x, y)
    res = resolution(x, i)
    z, omega = res.syzygies[i - 1], res.syzygies[i]
    return hom_dim(omega, y) - _hom_from_projective_dim(res.covers[i - 1].summands, y) + hom_dim(z, y)


@dataclass(eq=False)
class ExtResult:
    dim: int
    cocycles: list[ModuleHom]  # Ω^i x -> y, a basis modulo coboundaries
    inclusion: Optional[ModuleHom] = None  # Ω^i x -> P_{i-1}
    cover: Optional[Cover] = None  # P_{i-1} -> Ω^{i-1} x


def ext(x: Module, y: Module, i: int) -> ExtResult:
    """Ext^i_A(x, y) as cocycles Ω^i x -> y modulo maps factoring through P_{i-1}."""
    if not x.algebra.same_as(y.algebra):
        raise ValueError("modules over different algebras")
    if i == 0:
        homs = hom_space(x, y)
        return ExtResult(len(homs), homs)
    res = resolution(x, i)
    omega, inc, cov = res.syzygies[i], res.inclusions[i - 1], res.covers[i - 1]
    p = x.p
    cocycles = hom_space(omega, y)
    if not cocycles:
        return ExtResult(0, [], inc, cov)
    basis = np.array([h.matrix.ravel() for h in cocycles]).T
    bounds = [g.compose(inc).matrix.ravel() for g in hom_space(cov.projective, y)]
    if bounds:
        coords = la.solve(basis, np.array(bounds).T, p)
        reps, _ = la.quotient_basis(coords.T, len(cocycles), p)
    else:
        reps = la.identity(len(cocycles))
    reps_homs = [
        ModuleHom(omega, y, (np.tensordot(r, np.array([h.matrix for h in cocycles]), axes=1)) % p)
        for r in reps
    ]
    return ExtResult(len(reps_homs), reps_homs, inc, cov)


def extension_from_cocycle(res: ExtResult, f: ModuleHom) -> tuple[Module, ModuleHom, ModuleHom]:
    """Middle term of the degree-1 extension 0 -> y -> E -> x -> 0 given by ``f``.

    ``E`` is the pushout of ``Ω x -> P`` along ``f: Ω x -> y``; returns
    ``(E, y -> E, E -> x)``.
    """
    inc, cov = res.inclusion, res.cover
    y = f.target
    p = y.p
    big = direct_sum([y, cov.projective], y.algebra)
    rel = np.concatenate([f.matrix, (-inc.matrix) % p], axis=0)
    e, proj = quotient_module(big.module, la.column_basis(rel, p) if rel.size else la.zeros(big.module.dim, 0))
    left = proj.compose(big.injections[0])
    # E -> x: [n, q] -> cover(q); well defined since cover kills Ω x
    down = np.concatenate([la.zeros(cov.hom.target.dim, y.dim), cov.hom.matrix], axis=1)
    reps, _ = la.quotient_basis(
        (la.column_basis(rel, p) if rel.size else la.zeros(big.module.dim, 0)).T, big.module.dim, p
    )
    right = ModuleHom(e, cov.hom.target, (down @ reps.T) % p)
    return e, left, right


def tensor_space(m: Module, z: Module) -> tuple[np.ndarray, np.ndarray]:
    """``m ⊗_A z`` for ``m`` a left module over A^op (= right A-module) and ``z`` over A.

    Pure tensors are indexed (m index, z index). Returns
    ``(representatives, projection)`` as in :func:`linalg.quotient_basis`.
    """
    a = z.algebra
    if not m.algebra.same_as(a.opposite()):
        raise ValueError("first factor must be a module over the opposite algebra")
    p = a.p
    n = m.dim * z.dim
    if n == 0:
        return la.zeros(0, 0), la.zeros(0, 0)
    em, ez = la.identity(m.dim), la.identity(z.dim)
    rels = [np.kron(m.actions[g], ez) - np.kron(em, z.actions[g]) for g in a.generators]
    rel_rows = np.concatenate(rels, axis=1).T % p
    return la.quotient_basis(rel_rows, n, p)


def tensor_dim(m: Module, z: Module) -> int:
    return tensor_space(m, z)[0].shape[0]


def tor(m: Module, x: Module, i: int) -> int:
    """dim Tor_i^A(m, x); ``m`` is a right A-module given over the opposite algebra."""
    if i == 0:
        return tensor_dim(m, x)
    res = resolution(x, i)
    projs = indecomposable_projectives(x.algebra)
    # m ⊗ A e ≅ m e
    through_p = sum(la.rank(m.act(projs[j].idempotent), m.p) for j in res.covers[i - 1].summands)
    return tensor_dim(m, res.syzygies[i]) - through_p + tensor_dim(m, res.syzygies[i - 1])


# ---------------------------------------------------------------------------
# Hom(-, A), transpose, projectivity.


@dataclass(eq=False)
class DualProjective:
    """``Hom_A(P, A)`` as a left A^op-module, with its basis of matrices."""

    module: Module
    basis: np.ndarray  # (k, dim A, dim P)

    def coordinates(self, mats: np.ndarray) -> np.ndarray:
        k = self.basis.shape[0]
        if k == 0:
            return la.zeros(0, mats.shape[0])
        big = self.basis.reshape(k, -1).T
        sol = la.solve(big, mats.reshape(mats.shape[0], -1).T, self.module.p)
        if sol is None:
            raise ValueError("matrices are not A-linear maps into A")
        return sol


def hom_into_regular(x: Module) -> DualProjective:
    a = x.algebra
    op = a.opposite()
    reg = regular_module(a)
    homs = hom_space(x, reg)
    k = len(homs)
    basis = np.array([h.matrix for h in homs], dtype=np.int64).reshape(k, a.dim, x.dim)
    out = DualProjective(Module(op, np.zeros((a.dim, k, k), dtype=np.int64)), basis)
    if k:
        acts = []
        for i in range(a.dim):
            rm = a.right_mult_matrix(a.basis_vector(i))
            acts.append(out.coordinates(np.einsum("ab,kbc->kac", rm, basis) % a.p))
        out.module = Module(op, np.array(acts))
    return out


def transpose(x: Module) -> Module:
    """Auslander-Bridger transpose from the minimal presentation P1 -> P0 -> x -> 0."""
    a = x.algebra
    op = a.opposite()
    res = resolution(x, 1)
    if res.syzygies[1].dim == 0:
        return zero_module(op)
    res.extend_to(2)
    p0, p1 = res.covers[0].projective, res.covers[1].projective
    d = res.inclusions[0].compose(res.covers[1].hom)  # P1 -> P0
    h0, h1 = hom_into_regular(p0), hom_into_regular(p1)
    k0 = h0.basis.shape[0]
    if k0 == 0:
        return h1.module
    pulled = np.einsum("kab,bc->kac", h0.basis, d.matrix) % a.p
    dstar = ModuleHom(h0.module, h1.module, h1.coordinates(pulled))
    tr, _ = cokernel(dstar)
    return tr


def is_projective(x: Module) -> bool:
    """True iff the projective cover admits a section."""
    if x.dim == 0:
        return True
    cov = projective_cover(x)
    pi = cov.hom
    sections = hom_space(x, pi.source)
    if not sections:
        return False
    comp = np.array([(pi.matrix @ s.matrix % x.p).ravel() for s in sections]).T
    return la.solve(comp, la.identity(x.dim).ravel().reshape(-1, 1), x.p) is not None


def is_injective(x: Module) -> bool:
    return is_projective(dual(x))


def projective_dimension(x: Module, bound: int) -> Optional[int]:
    """pd(x) if it is at most ``bound``, else None."""
    res = resolution(x, bound + 1)
    for k in range(bound + 1):
        if res.syzygies[k + 1].dim == 0:
            return k
    return None


def is_self_injective(a: Algebra) -> bool:
    if "self_injective" not in a._cache:
        a._cache["self_injective"] = is_injective(regular_module(a))
    return a._cache["self_injective"]


def global_dimension(a: Algebra, bound: int) -> Optional[int]:
    """Global dimension (max pd of the simples) if at most ``bound``, else None."""
    key = ("gldim", bound)
    if key not in a._cache:
        dims = [projective_dimension(s, bound) for s in simple_modules(a)]
        a._cache[key] = None if any(d is None for d in dims) else max(dims, default=0)
    return a._cache[key]


def gorenstein_dimension(a: Algebra, bound: int) -> Optional[int]:
    """Common injective dimension of A on both sides if both are at most ``bound``.

    inj.dim of _A A is pd over A^op of D(A); inj.dim of A_A is pd over A of D(A_A).
    """
    key = ("gordim", bound)
    if key not in a._cache:
        left = projective_dimension(dual(regular_module(a)), bound)
        right = projective_dimension(dual(regular_module(a.opposite())), bound)
        a._cache[key] = None if left is None or right is None else max(left, right)
    return a._cache[key]


# ---------------------------------------------------------------------------
# The Gorenstein projectivity oracle.


class Tag(enum.Enum):
    PROVEN_GP = "ProvenGP"
    GP_UP_TO_BOUND = "GPUpToBound"
    NOT_GP = "NotGP"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class Witness:
    degree: int
    side: str  # "left": Ext^i(x, A); "transpose": Ext^i(Tr x, A^op)
    dim: int


@dataclass(frozen=True)
class GPVerdict:
    tag: Tag
    bound: int
    witness: Optional[Witness] = None
    reason: Optional[str] = None

    @property
    def is_gp(self) -> Optional[bool]:
        """True when certified, False when refuted, None when only bounded."""
        if self.tag is Tag.PROVEN_GP:
            return True
        if self.tag is Tag.NOT_GP:
            return False
        return None

    def __str__(self):
        if self.tag is Tag.NOT_GP:
            w = self.witness
            return f"NotGP(degree={w.degree}, side={w.side}, ext_dim={w.dim})"
        if self.tag is Tag.PROVEN_GP:
            return f"ProvenGP({self.reason})"
        return f"{self.tag.value}({self.bound})"


_GP_CACHE: dict[tuple[str, int], GPVerdict] = {}


def gp_oracle(x: Module, bound: int = DEFAULT_BOUND) -> GPVerdict:
    """Semi-decide Gorenstein projectivity of ``x``.

    Refutation is exact: a nonzero Ext^i(x, A) or Ext^i(Tr x, A^op) with
    1 <= i <= bound. Certification needs a finite argument: x projective,
    A self-injective, A of finite global dimension <= bound, or A Gorenstein
    (injective dimension d <= bound on both sides) with the tested Ext
    vanishing. Anything else is GPUpToBound.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    key = (x.fingerprint(), bound)
    if key in _GP_CACHE:
        return _GP_CACHE[key]
    a = x.algebra
    if is_projective(x):
        verdict = GPVerdict(Tag.PROVEN_GP, bound, reason="projective")
    elif is_self_injective(a):
        verdict = GPVerdict(Tag.PROVEN_GP, bound, reason="self-injective")
    else:
        verdict = None
        reg, reg_op = regular_module(a), regular_module(a.opposite())
        tr = transpose(x)
        for i in range(1, bound + 1):
            d = ext_dim(x, reg, i)
            if d:
                verdict = GPVerdict(Tag.NOT_GP, bound, Witness(i, "left", d))
                break
            d = ext_dim(tr, reg_op, i) if tr.dim else 0
            if d:
                verdict = GPVerdict(Tag.NOT_GP, bound, Witness(i, "transpose", d))
                break
        if verdict is None:
            if global_dimension(a, bound) is not None:
                verdict = GPVerdict(Tag.PROVEN_GP, bound, reason="finite-global-dimension")
            elif gorenstein_dimension(a, bound) is not None:
                verdict = GPVerdict(Tag.PROVEN_GP, bound, reason="ext-vanishing")
            else:
                verdict = GPVerdict(Tag.GP_UP_TO_BOUND, bound)
    _GP_CACHE[key] = verdict
    return verdict


def gi_oracle(x: Module, bound: int = DEFAULT_BOUND) -> GPVerdict:
    """Gorenstein injectivity of ``x`` via GP of its dual over the opposite algebra."""
    return gp_oracle(dual(x), bound)


# ---------------------------------------------------------------------------
# Complex windows.


@dataclass(eq=False)
class ComplexWindow:
    """Terms ``C_lo .. C_hi`` and differentials ``d_i: C_i -> C_{i-1}`` for lo < i <= hi."""

    lo: int
    hi: int
    terms: dict[int, Module]
    diffs: dict[int, ModuleHom]

    def __post_init__(self):
        for i in range(self.lo + 1, self.hi):
            comp = self.diffs[i].compose(self.diffs[i + 1])
            if comp.matrix.any():
                raise ValueError(f"d_{i} ∘ d_{i + 1} is not zero")


def _exact_between(d_in_rank: int, d_out_rank: int, middle_dim: int) -> bool:
    return d_in_rank + d_out_rank == middle_dim


def is_totally_acyclic_window(c: ComplexWindow) -> bool:
    """Exactness at interior indices, before and after applying Hom_A(-, A)."""
    for i in range(c.lo, c.hi + 1):
        if not is_projective(c.terms[i]):
            raise NotProjectiveError(f"term C_{i} is not projective")
    a = c.terms[c.lo].algebra
    p = a.p
    for i in range(c.lo + 1, c.hi):
        if not _exact_between(c.diffs[i].rank, c.diffs[i + 1].rank, c.terms[i].dim):
            return False
    reg = regular_module(a)
    duals = {}
    for i in range(c.lo, c.hi + 1):
        homs = hom_space(c.terms[i], reg)
        duals[i] = np.array([h.matrix for h in homs], dtype=np.int64).reshape(len(homs), a.dim, c.terms[i].dim)

    def star_rank(i):
        # rank of d_i^*: Hom(C_{i-1}, A) -> Hom(C_i, A)
        basis = duals[i - 1]
        if basis.shape[0] == 0 or c.terms[i].dim == 0:
            return 0
        pulled = np.einsum("kab,bc->kac", basis, c.diffs[i].matrix) % p
        return la.rank(pulled.reshape(basis.shape[0], -1), p)

    for i in range(c.lo + 1, c.hi):
        if not _exact_between(star_rank(i), star_rank(i + 1), duals[i].shape[0]):
            return False
    return True


def periodic_window(term: Module, diff: np.ndarray, lo: int, hi: int) -> ComplexWindow:
    """Window of the complex with every term ``term`` and every differential ``diff``."""
    terms = {i: term for i in range(lo, hi + 1)}
    diffs = {i: ModuleHom(term, term, diff) for i in range(lo + 1, hi + 1)}
    return ComplexWindow(lo, hi, terms, diffs)
