"""Triangular matrix algebras Γ = [[R, 0], [M, S]] and their module triples.

A Γ-module is a triple ``(X, Y, phi)``: an R-module X, an S-module Y, and an
S-linear ``phi: M ⊗_R X -> Y``. Flattened Γ-modules list the X coordinates
first, then the Y coordinates; ``m`` in the M-block acts by the block
``x -> phi(m ⊗ x)`` from X to Y.

The Gorenstein projective criterion for triples (X and Coker phi GP, phi
mono) holds when the two hypotheses checked by :func:`check_condition1` and
:func:`check_condition2` are satisfied; the verdict functions refuse to
answer without passing reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .homological import (
    DEFAULT_BOUND,
    ComplexWindow,
    GPVerdict,
    Tag,
    ext_dim,
    gi_oracle,
    gp_oracle,
    is_injective,
    is_projective,
    tensor_space,
    tor,
)
from .modules import (
    Module,
    ModuleHom,
    cokernel,
    dual,
    hom_space,
    regular_module,
    submodule,
    zero_module,
)


class InvariantViolation(RuntimeError):
    """Two routes that must agree did not."""


@dataclass(eq=False)
class Bimodule:
    """An S-R bimodule: ``left`` is S, ``right`` is R."""

    left: Algebra
    right: Algebra
    left_actions: np.ndarray  # (dim S, m, m)
    right_actions: np.ndarray  # (dim R, m, m): m -> m·r

    def __post_init__(self):
        self.left_actions = np.asarray(self.left_actions, dtype=np.int64) % self.left.p
        self.right_actions = np.asarray(self.right_actions, dtype=np.int64) % self.left.p
        m = self.left_actions.shape[1] if self.left_actions.ndim == 3 else 0
        self.left_actions = self.left_actions.reshape(self.left.dim, m, m)
        self.right_actions = self.right_actions.reshape(self.right.dim, m, m)

    @property
    def dim(self) -> int:
        return self.left_actions.shape[1]

    def as_left(self) -> Module:
        return Module(self.left, self.left_actions)

    def as_right(self) -> Module:
        """M as a right R-module, i.e. a left module over R^op."""
        return Module(self.right.opposite(), self.right_actions)


def validate_bimodule(m: Bimodule) -> list[str]:
    from .modules import validate_module

    errs = [f"left S-action: {e}" for e in validate_module(m.as_left())]
    errs += [f"right R-action: {e}" for e in validate_module(m.as_right())]
    if errs:
        return errs
    p = m.left.p
    for i in range(m.left.dim):
        for j in range(m.right.dim):
            a, b = m.left_actions[i], m.right_actions[j]
            if ((a @ b - b @ a) % p).any():
                return [f"left action of S-basis {i} does not commute with right action of R-basis {j}"]
    return []


def regular_bimodule(a: Algebra) -> Bimodule:
    reg = regular_module(a)
    return Bimodule(a, a, reg.actions, regular_module(a, "right").actions)


def zero_bimodule(s: Algebra, r: Algebra) -> Bimodule:
    return Bimodule(s, r, np.zeros((s.dim, 0, 0)), np.zeros((r.dim, 0, 0)))


def bimodule_over_field(y: Module, r: Algebra) -> Bimodule:
    """An S-module viewed as an S-F_p bimodule (R one-dimensional, acting by scalars)."""
    if r.dim != 1:
        raise ValueError("right algebra must be the ground field")
    right = (r.unit.reshape(1, 1, 1) * la.identity(y.dim)[None]) % r.p
    return Bimodule(y.algebra, r, y.actions, right)


@dataclass(eq=False)
class TriangularAlgebra:
    r: Algebra
    s: Algebra
    m: Bimodule
    gamma: Algebra
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def r_block(self) -> slice:
        return slice(0, self.r.dim)

    @property
    def m_block(self) -> slice:
        return slice(self.r.dim, self.r.dim + self.m.dim)

    @property
    def s_block(self) -> slice:
        return slice(self.r.dim + self.m.dim, self.gamma.dim)

    def embed_r(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(self.gamma.dim, dtype=np.int64)
        out[self.r_block] = v
        return out

    def embed_s(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(self.gamma.dim, dtype=np.int64)
        out[self.s_block] = v
        return out

    @property
    def p(self) -> int:
        return self.gamma.p

    def opposite_triangular(self) -> "TriangularAlgebra":
        """[[S^op, 0], [M, R^op]], isomorphic to Γ^op by swapping the R and S blocks."""
        if "opposite" not in self._cache:
            m2 = Bimodule(self.r.opposite(), self.s.opposite(), self.m.right_actions, self.m.left_actions)
            op = build_triangular(self.s.opposite(), self.r.opposite(), m2)
            op._cache["opposite"] = self
            self._cache["opposite"] = op
        return self._cache["opposite"]

    def opposite_permutation(self) -> np.ndarray:
        """``perm[i']``: index in Γ of basis element i' of the opposite triangular algebra."""
        rd, md, sd = self.r.dim, self.m.dim, self.s.dim
        return np.concatenate([np.arange(rd + md, rd + md + sd), np.arange(rd, rd + md), np.arange(rd)])

    def __repr__(self):
        return f"<Γ = [[{self.r.name or 'R'}, 0], [M, {self.s.name or 'S'}]], dim {self.gamma.dim}>"


def build_triangular(r: Algebra, s: Algebra, m: Bimodule) -> TriangularAlgebra:
    """Assemble the structure constants of [[R, 0], [M, S]] blockwise."""
    if not (m.left.same_as(s) and m.right.same_as(r)):
        raise ValueError("bimodule sides do not match (left must be S, right must be R)")
    errs = validate_bimodule(m)
    if errs:
        raise ValueError(f"bimodule axiom violation: {errs[0]}")
    p = r.p
    rd, md, sd = r.dim, m.dim, s.dim
    d = rd + md + sd
    R, M, S = slice(0, rd), slice(rd, rd + md), slice(rd + md, d)
    table = np.zeros((d, d, d), dtype=np.int64)
    table[R, R, R] = r.table
    table[S, S, S] = s.table
    # m_a · r_j = right action; s_i · m_a = left action
    for j in range(rd):
        table[M, j, M] = m.right_actions[j].T
    for i in range(sd):
        table[rd + md + i, M, M] = m.left_actions[i].T
    unit = np.concatenate([r.unit, np.zeros(md, dtype=np.int64), s.unit])
    rad = []
    for v in r.radical:
        rad.append(np.concatenate([v, np.zeros(md + sd, dtype=np.int64)]))
    for a in range(md):
        rad.append(np.eye(d, dtype=np.int64)[rd + a])
    for v in s.radical:
        rad.append(np.concatenate([np.zeros(rd + md, dtype=np.int64), v]))
    from .modules import primitive_idempotents

    idem = [np.concatenate([e, np.zeros(md + sd, dtype=np.int64)]) for e in primitive_idempotents(r)]
    idem += [np.concatenate([np.zeros(rd + md, dtype=np.int64), e]) for e in primitive_idempotents(s)]
    gens = tuple(r.generators) + tuple(rd + a for a in range(md)) + tuple(rd + md + g for g in s.generators)
    gamma = Algebra(p, table, unit, np.array(rad, dtype=np.int64).reshape(-1, d),
                    np.array(idem, dtype=np.int64).reshape(-1, d), gens,
                    name=f"[[{r.name or 'R'},0],[M,{s.name or 'S'}]]", meta={"family": "triangular"})
    return TriangularAlgebra(r, s, m, gamma)


def t2(r: Algebra) -> TriangularAlgebra:
    """T_2(R) = [[R, 0], [R, R]]."""
    g = build_triangular(r, r, regular_bimodule(r))
    g.gamma.name = f"T2({r.name})"
    return g


# ---------------------------------------------------------------------------
# M ⊗_R X and Hom_S(M, Y).


@dataclass(eq=False)
class TensorProduct:
    module: Module  # over S
    representatives: np.ndarray  # rows in pure-tensor coordinates (M index, X index)
    projection: np.ndarray  # pure-tensor coordinates -> quotient coordinates


def tensor_MX(m: Bimodule, x: Module) -> TensorProduct:
    if not x.algebra.same_as(m.right):
        raise ValueError("module is not over the right algebra of the bimodule")
    reps, proj = tensor_space(m.as_right(), x)
    k = reps.shape[0]
    p = x.p
    ex = la.identity(x.dim)
    acts = np.zeros((m.left.dim, k, k), dtype=np.int64)
    if k:
        for i in range(m.left.dim):
            acts[i] = proj @ np.kron(m.left_actions[i], ex) @ reps.T % p
    else:
        reps = la.zeros(0, m.dim * x.dim)
        proj = la.zeros(0, m.dim * x.dim)
    return TensorProduct(Module(m.left, acts), reps, proj)


@dataclass(eq=False)
class HomMY:
    module: Module  # over R
    basis: np.ndarray  # (k, dim Y, dim M)


def hom_MY(m: Bimodule, y: Module) -> HomMY:
    """Hom_S(M, Y) with R acting by (r·f)(m) = f(m·r)."""
    if not y.algebra.same_as(m.left):
        raise ValueError("module is not over the left algebra of the bimodule")
    p = y.p
    homs = hom_space(m.as_left(), y)
    k = len(homs)
    basis = np.array([h.matrix for h in homs], dtype=np.int64).reshape(k, y.dim, m.dim)
    acts = np.zeros((m.right.dim, k, k), dtype=np.int64)
    if k:
        big = basis.reshape(k, -1).T
        for j in range(m.right.dim):
            moved = np.einsum("kab,bc->kac", basis, m.right_actions[j]) % p
            acts[j] = la.solve(big, moved.reshape(k, -1).T, p)
    return HomMY(Module(m.right, acts), basis)


# ---------------------------------------------------------------------------
# Triples.


@dataclass(eq=False)
class TripleModule:
    gamma: TriangularAlgebra
    x: Module
    y: Module
    phi: np.ndarray  # dim Y x dim(M ⊗ X)
    name: str = ""

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=np.int64).reshape(self.y.dim, self.tensor.module.dim) % self.gamma.p

    @cached_property
    def tensor(self) -> TensorProduct:
        return tensor_MX(self.gamma.m, self.x)

    @property
    def dim(self) -> int:
        return self.x.dim + self.y.dim

    def blocks(self) -> np.ndarray:
        """Action of each M-basis element as a map X -> Y, shape (dim M, dim Y, dim X)."""
        dx = self.x.dim
        md = self.gamma.m.dim
        full = (self.phi @ self.tensor.projection) % self.gamma.p if self.tensor.projection.size else \
            la.zeros(self.y.dim, md * dx)
        return full.reshape(self.y.dim, md, dx).transpose(1, 0, 2)

    def phi_rank(self) -> int:
        return la.rank(self.phi, self.gamma.p)

    def is_phi_mono(self) -> bool:
        return self.phi_rank() == self.phi.shape[1]

    def coker_phi(self) -> tuple[Module, ModuleHom]:
        f = ModuleHom(self.tensor.module, self.y, self.phi)
        return cokernel(f)

    def to_module(self) -> Module:
        return triple_to_module(self)

    def __repr__(self):
        return f"<Triple {self.name or ''}(dim X={self.x.dim}, dim Y={self.y.dim}, rank phi={self.phi_rank()})>"


def validate_triple(t: TripleModule) -> list[str]:
    """S-linearity of phi against the induced action on M ⊗ X, per S-basis element."""
    p = t.gamma.p
    tm = t.tensor.module
    for i in range(t.gamma.s.dim):
        if ((t.phi @ tm.actions[i] - t.y.actions[i] @ t.phi) % p).any():
            return [f"phi is not S-linear: fails for S-basis element {i}"]
    return []


def triple_from_blocks(g: TriangularAlgebra, x: Module, y: Module, blocks: np.ndarray) -> TripleModule:
    """Triple whose M-block action is ``blocks[a]: X -> Y``."""
    tens = tensor_MX(g.m, x)
    if tens.module.dim == 0 or y.dim == 0:
        t = TripleModule(g, x, y, la.zeros(y.dim, tens.module.dim))
        t.tensor = tens
        return t
    full = np.asarray(blocks, dtype=np.int64).transpose(1, 0, 2).reshape(y.dim, -1)
    phi = full @ tens.representatives.T % g.p
    t = TripleModule(g, x, y, phi)
    t.tensor = tens
    return t


def triple_to_module(t: TripleModule) -> Module:
    g = t.gamma
    dx, dy = t.x.dim, t.y.dim
    n = dx + dy
    acts = np.zeros((g.gamma.dim, n, n), dtype=np.int64)
    acts[g.r_block, :dx, :dx] = t.x.actions
    acts[g.s_block, dx:, dx:] = t.y.actions
    acts[g.m_block, dx:, :dx] = t.blocks()
    return Module(g.gamma, acts)


def _component_bases(z: Module, g: TriangularAlgebra) -> tuple[np.ndarray, np.ndarray]:
    e1 = z.act(g.embed_r(g.r.unit))
    e2 = z.act(g.embed_s(g.s.unit))
    b1 = la.column_basis(e1, z.p) if z.dim else la.zeros(0, 0)
    b2 = la.column_basis(e2, z.p) if z.dim else la.zeros(0, 0)
    return b1, b2


def module_to_triple(z: Module, g: TriangularAlgebra) -> TripleModule:
    """X = e_R Z, Y = e_S Z, with phi induced by the M-block action."""
    if not z.algebra.same_as(g.gamma):
        raise ValueError("module is not over Γ")
    p = g.p
    b1, b2 = _component_bases(z, g)
    dx, dy = b1.shape[1], b2.shape[1]

    def restrict(block: slice, basis: np.ndarray, alg: Algebra) -> Module:
        acts = z.actions[block]
        if basis.shape[1] == 0:
            return zero_module(alg)
        sol = la.solve(basis, (acts @ basis % p).transpose(1, 0, 2).reshape(z.dim, -1), p)
        k = basis.shape[1]
        return Module(alg, sol.reshape(k, alg.dim, k).transpose(1, 0, 2))

    x = restrict(g.r_block, b1, g.r)
    y = restrict(g.s_block, b2, g.s)
    md = g.m.dim
    blocks = np.zeros((md, dy, dx), dtype=np.int64)
    if dx and dy:
        moved = (z.actions[g.m_block] @ b1) % p  # (md, n, dx)
        sol = la.solve(b2, moved.transpose(1, 0, 2).reshape(z.dim, -1), p)
        blocks = sol.reshape(dy, md, dx).transpose(1, 0, 2)
    return triple_from_blocks(g, x, y, blocks)


# ---------------------------------------------------------------------------
# Evaluation functors and their adjoints.


def e1_lambda(g: TriangularAlgebra, x: Module) -> TripleModule:
    """(X, M ⊗ X) with phi the identity."""
    tens = tensor_MX(g.m, x)
    t = TripleModule(g, x, tens.module, la.identity(tens.module.dim))
    t.tensor = tens
    return t


def e1_rho(g: TriangularAlgebra, x: Module) -> TripleModule:
    """(X, 0) with phi zero."""
    tens = tensor_MX(g.m, x)
    t = TripleModule(g, x, zero_module(g.s), la.zeros(0, tens.module.dim))
    t.tensor = tens
    return t


def e2_lambda(g: TriangularAlgebra, y: Module) -> TripleModule:
    """(0, Y) with phi zero."""
    return TripleModule(g, zero_module(g.r), y, la.zeros(y.dim, 0))


def e2_rho(g: TriangularAlgebra, y: Module) -> TripleModule:
    """(Hom_S(M, Y), Y) with phi the evaluation m ⊗ f -> f(m)."""
    h = hom_MY(g.m, y)
    # block for m_a sends the coordinate vector of f to f(m_a)
    blocks = h.basis.transpose(2, 1, 0)  # (dim M, dim Y, k)
    return triple_from_blocks(g, h.module, y, blocks)


@dataclass(eq=False)
class TripleHom:
    source: TripleModule
    target: TripleModule
    fx: np.ndarray
    fy: np.ndarray

    def flatten(self) -> ModuleHom:
        s, t = self.source, self.target
        mat = la.zeros(t.dim, s.dim)
        mat[:t.x.dim, :s.x.dim] = self.fx
        mat[t.x.dim:, s.x.dim:] = self.fy
        return ModuleHom(s.to_module(), t.to_module(), mat)


def tensor_map(g: TriangularAlgebra, f: ModuleHom) -> np.ndarray:
    """1_M ⊗ f on the computed tensor bases."""
    src, dst = tensor_MX(g.m, f.source), tensor_MX(g.m, f.target)
    if src.module.dim == 0 or dst.module.dim == 0:
        return la.zeros(dst.module.dim, src.module.dim)
    return dst.projection @ np.kron(la.identity(g.m.dim), f.matrix) @ src.representatives.T % g.p


# ---------------------------------------------------------------------------
# Projectivity, the canonical sequence, hypotheses, and verdicts.


def is_projective_triple(t: TripleModule) -> tuple[bool, str]:
    if not t.is_phi_mono():
        return False, "phi is not a monomorphism"
    if not is_projective(t.x):
        return False, "X is not projective"
    c, _ = t.coker_phi()
    if not is_projective(c):
        return False, "Coker phi is not projective"
    return True, "phi mono, X and Coker phi projective"


@dataclass(eq=False)
class CanonicalSequence:
    left: TripleModule  # e1_lambda(X)
    middle: TripleModule
    right: TripleModule  # (0, Coker phi)
    inclusion: ModuleHom
    projection: ModuleHom


def canonical_sequence(t: TripleModule) -> CanonicalSequence:
    """0 -> (X, M⊗X)_1 -> (X, Y)_phi -> (0, Coker phi)_0 -> 0, with exactness certified."""
    if not t.is_phi_mono():
        raise ValueError("phi is not injective")
    g, p = t.gamma, t.gamma.p
    left = e1_lambda(g, t.x)
    c, pi = t.coker_phi()
    right = e2_lambda(g, c)
    inc = TripleHom(left, t, la.identity(t.x.dim), t.phi).flatten()
    proj = TripleHom(t, right, la.zeros(0, t.x.dim), pi.matrix).flatten()
    if not (inc.is_hom() and proj.is_hom()):
        raise InvariantViolation("canonical sequence maps are not Γ-linear")
    if inc.rank != left.dim or proj.rank != right.dim or (proj.matrix @ inc.matrix % p).any() \
            or inc.rank + proj.rank != t.dim:
        raise InvariantViolation("canonical sequence is not exact")
    return CanonicalSequence(left, t, right, inc, proj)


@dataclass
class ConditionReport:
    name: str
    passed: bool
    mode: str  # "structural", "verified", "vacuous", or "failed"
    witnesses: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.passed and self.mode != "vacuous"

    def __str__(self):
        tail = f": {'; '.join(self.witnesses)}" if self.witnesses else ""
        return f"{self.name} {'pass' if self.passed else 'FAIL'} ({self.mode}){tail}"


def _as_bimodule(m) -> Bimodule:
    return m.m if isinstance(m, TriangularAlgebra) else m


def check_condition1(m, gp_list: Sequence[Module], name: str = "condition (1)") -> ConditionReport:
    """M ⊗_R - keeps acyclic complexes of projectives acyclic.

    Structural when M is projective as a right R-module; otherwise checks
    Tor_1^R(M, P) = 0 for every listed Gorenstein projective P.
    """
    m = _as_bimodule(m)
    if m.dim == 0 or is_projective(m.as_right()):
        return ConditionReport(name, True, "structural", ["M projective as right module"])
    bad = []
    for k, gp in enumerate(gp_list):
        d = tor(m.as_right(), gp, 1)
        if d:
            bad.append(f"Tor_1(M, gp[{k}]) has dim {d}")
    if bad:
        return ConditionReport(name, False, "failed", bad)
    if not gp_list:
        return ConditionReport(name, True, "vacuous", ["no Gorenstein projectives listed: unverified"])
    return ConditionReport(name, True, "verified")


def check_condition2(m, gp_list: Sequence[Module], name: str = "condition (2)") -> ConditionReport:
    """Add(M) lies in GProj(S)^perp.

    Structural when M is injective or projective as a left S-module;
    otherwise checks Ext^1_S(G, M) = 0 for every listed G.
    """
    m = _as_bimodule(m)
    left = m.as_left()
    if m.dim == 0:
        return ConditionReport(name, True, "structural", ["M = 0"])
    if is_injective(left):
        return ConditionReport(name, True, "structural", ["M injective as left module"])
    if is_projective(left):
        return ConditionReport(name, True, "structural", ["M projective as left module"])
    bad = []
    for k, gp in enumerate(gp_list):
        d = ext_dim(gp, left, 1)
        if d:
            bad.append(f"Ext^1(gp[{k}], M) has dim {d}")
    if bad:
        return ConditionReport(name, False, "failed", bad)
    if not gp_list:
        return ConditionReport(name, True, "vacuous", ["no Gorenstein projectives listed: unverified"])
    return ConditionReport(name, True, "verified")


def check_condition3(g: TriangularAlgebra, gi_list_s: Sequence[Module] = ()) -> ConditionReport:
    """Hom_S(M, -) keeps acyclic complexes of injectives acyclic (condition (1) after duality)."""
    op = g.opposite_triangular()
    return check_condition1(op.m, [dual(y) for y in gi_list_s], name="condition (3)")


def check_condition4(g: TriangularAlgebra, gi_list_r: Sequence[Module] = ()) -> ConditionReport:
    """Hom_S(M, I) lies in the left perp of GInj(R) (condition (2) after duality)."""
    op = g.opposite_triangular()
    return check_condition2(op.m, [dual(x) for x in gi_list_r], name="condition (4)")


@dataclass(frozen=True)
class TripleVerdict:
    tag: Tag
    phi_mono: bool
    first: Optional[GPVerdict] = None  # X (GP case) or Y (GI case)
    second: Optional[GPVerdict] = None  # Coker phi (GP case) or ker of adjoint (GI case)
    note: str = ""

    @property
    def is_gp(self) -> Optional[bool]:
        if self.tag is Tag.PROVEN_GP:
            return True
        if self.tag is Tag.NOT_GP:
            return False
        return None

    def __str__(self):
        parts = [self.tag.value, f"mono={self.phi_mono}"]
        if self.first is not None:
            parts.append(f"first={self.first}")
        if self.second is not None:
            parts.append(f"second={self.second}")
        if self.note:
            parts.append(self.note)
        return " ".join(parts)


def _combine(mono: bool, first: Optional[GPVerdict], second: Optional[GPVerdict], what: str) -> TripleVerdict:
    if not mono:
        return TripleVerdict(Tag.NOT_GP, False, first, second, note=f"phi not {what}")
    tags = (first.tag, second.tag)
    if Tag.NOT_GP in tags:
        return TripleVerdict(Tag.NOT_GP, True, first, second, note="component refuted")
    if tags == (Tag.PROVEN_GP, Tag.PROVEN_GP):
        return TripleVerdict(Tag.PROVEN_GP, True, first, second)
    return TripleVerdict(Tag.GP_UP_TO_BOUND, True, first, second)


def _inapplicable(reports: Sequence[Optional[ConditionReport]], labels: Sequence[str]) -> Optional[str]:
    for rep, label in zip(reports, labels):
        if rep is None:
            return f"criterion inapplicable: {label} not checked"
        if not rep.passed:
            return f"criterion inapplicable: {rep}"
    return None


def is_gp_triple(t: TripleModule, cond1: Optional[ConditionReport], cond2: Optional[ConditionReport],
                 bound: int = DEFAULT_BOUND) -> TripleVerdict:
    """GP iff phi is mono and X, Coker phi are GP, given passing condition reports."""
    why = _inapplicable([cond1, cond2], ["condition (1)", "condition (2)"])
    mono = t.is_phi_mono()
    if why:
        return TripleVerdict(Tag.INAPPLICABLE, mono, note=why)
    if not mono:
        return _combine(False, None, None, "mono")
    c, _ = t.coker_phi()
    return _combine(True, gp_oracle(t.x, bound), gp_oracle(c, bound), "mono")


def adjoint_phi(t: TripleModule) -> tuple[HomMY, np.ndarray]:
    """The adjoint X -> Hom_S(M, Y), as a matrix into the basis of :func:`hom_MY`."""
    g, p = t.gamma, t.gamma.p
    h = hom_MY(g.m, t.y)
    k = h.basis.shape[0]
    if k == 0 or t.x.dim == 0:
        return h, la.zeros(k, t.x.dim)
    blocks = t.blocks()  # (dim M, dim Y, dim X)
    ims = blocks.transpose(2, 1, 0)  # (dim X, dim Y, dim M): f_x(m_a) = blocks[a] x
    coords = la.solve(h.basis.reshape(k, -1).T, ims.reshape(t.x.dim, -1).T, p)
    if coords is None:
        raise InvariantViolation("adjoint of phi is not S-linear")
    return h, coords


def adjoint_kernel(t: TripleModule) -> Module:
    """ker(X -> Hom_S(M, Y)) = {x : phi(m ⊗ x) = 0 for all m}."""
    blocks = t.blocks()
    if t.x.dim == 0:
        return t.x
    if blocks.shape[0] == 0 or t.y.dim == 0:
        return t.x
    stacked = blocks.reshape(-1, t.x.dim)
    sub, _ = submodule(t.x, la.kernel_basis(stacked, t.gamma.p).T)
    return sub


def dualize_triple(t: TripleModule) -> TripleModule:
    """D(t) as a triple over the opposite triangular algebra."""
    g = t.gamma
    op = g.opposite_triangular()
    dz = dual(t.to_module())  # over Γ^op, basis order (R, M, S)
    perm = g.opposite_permutation()
    z2 = Module(op.gamma, dz.actions[perm])
    return module_to_triple(z2, op)


@dataclass(frozen=True)
class GIResult:
    direct: TripleVerdict
    via_duality: TripleVerdict

    @property
    def tag(self) -> Tag:
        return self.direct.tag


def is_gi_triple(t: TripleModule, cond3: Optional[ConditionReport], cond4: Optional[ConditionReport],
                 bound: int = DEFAULT_BOUND) -> GIResult:
    """GI iff the adjoint of phi is epi and Y, ker are GI; cross-checked through duality."""
    why = _inapplicable([cond3, cond4], ["condition (3)", "condition (4)"])
    h, adj = adjoint_phi(t)
    epi = la.rank(adj, t.gamma.p) == h.basis.shape[0]
    if why:
        direct = TripleVerdict(Tag.INAPPLICABLE, epi, note=why)
    elif not epi:
        direct = _combine(False, None, None, "epi")
    else:
        direct = _combine(True, gi_oracle(t.y, bound), gi_oracle(adjoint_kernel(t), bound), "epi")
    # Γ^op conditions (1), (2) are conditions (3), (4) of Γ
    via = is_gp_triple(dualize_triple(t), cond3, cond4, bound)
    if direct.tag is not via.tag or direct.phi_mono != via.phi_mono:
        raise InvariantViolation(f"GI routes disagree: direct {direct}, via duality {via}")
    return GIResult(direct, via)


def in_gproj_perp(t: TripleModule, gp_gamma: Sequence[Module], gp_r: Sequence[Module],
                  gp_s: Sequence[Module]) -> tuple[bool, bool]:
    """(all Ext^1_Γ(G, t) vanish, all Ext^1_R(G, X) and Ext^1_S(G, Y) vanish)."""
    z = t.to_module()
    direct = all(ext_dim(gmod, z, 1) == 0 for gmod in gp_gamma)
    comp = all(ext_dim(gmod, t.x, 1) == 0 for gmod in gp_r) and all(ext_dim(gmod, t.y, 1) == 0 for gmod in gp_s)
    return direct, comp


# ---------------------------------------------------------------------------
# Complex windows of Γ-modules and their components.


def window_components(c: ComplexWindow, g: TriangularAlgebra) -> tuple[ComplexWindow, ComplexWindow]:
    """(X-component window over R, Coker-of-phi window over S) of a window of Γ-modules."""
    p = g.p
    bases = {i: _component_bases(c.terms[i], g) for i in range(c.lo, c.hi + 1)}
    triples = {i: module_to_triple(c.terms[i], g) for i in range(c.lo, c.hi + 1)}
    cokers = {i: triples[i].coker_phi() for i in triples}
    xs, cs, dxs, dcs = {}, {}, {}, {}
    for i in range(c.lo, c.hi + 1):
        xs[i] = triples[i].x
        cs[i] = cokers[i][0]
    for i in range(c.lo + 1, c.hi + 1):
        d = c.diffs[i].matrix
        b1_src, b2_src = bases[i]
        b1_dst, b2_dst = bases[i - 1]

        def restrict(bsrc, bdst):
            if bsrc.shape[1] == 0 or bdst.shape[1] == 0:
                return la.zeros(bdst.shape[1], bsrc.shape[1])
            return la.solve(bdst, d @ bsrc % p, p)

        dx = restrict(b1_src, b1_dst)
        dy = restrict(b2_src, b2_dst)
        dxs[i] = ModuleHom(xs[i], xs[i - 1], dx)
        src_q, dst_q = cokers[i][1], cokers[i - 1][1]
        reps_src, _ = la.quotient_basis(
            la.column_basis(triples[i].phi, p).T if triples[i].phi.size else la.zeros(0, triples[i].y.dim),
            triples[i].y.dim, p)
        dcs[i] = ModuleHom(cs[i], cs[i - 1], dst_q.matrix @ dy @ reps_src.T % p)
    return ComplexWindow(c.lo, c.hi, xs, dxs), ComplexWindow(c.lo, c.hi, cs, dcs)
