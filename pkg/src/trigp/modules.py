"""Finite-dimensional left modules, homomorphisms, and Krull-Schmidt splitting."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .algebra import Algebra


class UndecidedError(RuntimeError):
    """A randomized search exceeded its caps without a certified answer."""


@dataclass(eq=False)
class Module:
    algebra: Algebra
    actions: np.ndarray  # (d, n, n): action of each algebra basis element
    name: str = ""

    def __post_init__(self):
        a = self.algebra
        acts = np.asarray(self.actions, dtype=np.int64)
        if acts.size == 0:
            n = 0 if acts.ndim < 3 else acts.shape[1]
            acts = acts.reshape(a.dim, n, n)
        self.actions = acts % a.p

    @property
    def dim(self) -> int:
        return self.actions.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, a: np.ndarray) -> np.ndarray:
        return np.einsum("i,ijk->jk", np.asarray(a, dtype=np.int64), self.actions) % self.p

    def fingerprint(self) -> str:
        h = hashlib.sha256(self.algebra.digest.encode())
        h.update(str(self.actions.shape).encode())
        h.update(self.actions.astype("<i8").tobytes())
        return h.hexdigest()

    def __repr__(self):
        label = self.name or "Module"
        return f"<{label} dim {self.dim} over {self.algebra!r}>"


@dataclass(eq=False)
class ModuleHom:
    source: Module
    target: Module
    matrix: np.ndarray  # dim(target) x dim(source)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.dim, self.source.dim) % self.source.p

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """``self ∘ other``."""
        return ModuleHom(other.source, self.target, la.mul(self.matrix, other.matrix, self.source.p))

    def is_hom(self) -> bool:
        f = self.matrix
        p = self.source.p
        return all(
            not ((self.target.actions[g] @ f - f @ self.source.actions[g]) % p).any()
            for g in range(self.source.algebra.dim)
        )

    @property
    def rank(self) -> int:
        return la.rank(self.matrix, self.source.p)


def zero_module(a: Algebra) -> Module:
    return Module(a, np.zeros((a.dim, 0, 0), dtype=np.int64))


def identity_hom(x: Module) -> ModuleHom:
    return ModuleHom(x, x, la.identity(x.dim))


def validate_module(x: Module) -> list[str]:
    """Violations of the module axioms (empty when valid)."""
    a, p, n = x.algebra, x.p, x.dim
    if x.actions.shape != (a.dim, n, n):
        return [f"actions have shape {x.actions.shape}, expected {(a.dim, n, n)}"]
    if (x.act(a.unit) != la.identity(n)).any():
        return ["unit does not act as the identity"]
    lhs = np.einsum("ijk,lkm->iljm", x.actions, x.actions) % p
    rhs = np.einsum("ilq,qjm->iljm", a.table, x.actions) % p
    bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
    if bad.size:
        i, j = bad[0]
        return [f"action is not multiplicative for basis pair ({i}, {j})"]
    return []


def regular_module(a: Algebra, side: str = "left") -> Module:
    """Left regular module, or the right regular module as a left module over the opposite."""
    if side == "right":
        return regular_module(a.opposite(), "left")
    if side != "left":
        raise ValueError("side must be 'left' or 'right'")
    if "regular" not in a._cache:
        a._cache["regular"] = Module(a, a.table.transpose(0, 2, 1).copy(), name="A")
    return a._cache["regular"]


def _hom_system(x: Module, y: Module) -> np.ndarray:
    a = x.algebra
    blocks = []
    ex, ey = la.identity(x.dim), la.identity(y.dim)
    for g in a.generators:
        blocks.append(np.kron(ey, x.actions[g].T) - np.kron(y.actions[g], ex))
    return np.vstack(blocks) % x.p


def hom_space(x: Module, y: Module) -> list[ModuleHom]:
    """Basis of Hom_A(x, y) as intertwining matrices."""
    if not x.algebra.same_as(y.algebra):
        raise ValueError("modules over different algebras")
    if x.dim == 0 or y.dim == 0:
        return []
    ker = la.kernel_basis(_hom_system(x, y), x.p)
    return [ModuleHom(x, y, row.reshape(y.dim, x.dim)) for row in ker]


def hom_dim(x: Module, y: Module) -> int:
    if x.dim == 0 or y.dim == 0:
        return 0
    return x.dim * y.dim - la.rank(_hom_system(x, y), x.p)


def end_basis(x: Module) -> np.ndarray:
    return np.array([h.matrix for h in hom_space(x, x)], dtype=np.int64).reshape(-1, x.dim, x.dim)


def submodule(x: Module, basis: np.ndarray) -> tuple[Module, ModuleHom]:
    """Restrict to the invariant subspace spanned by the columns of ``basis``."""
    p = x.p
    basis = np.asarray(basis, dtype=np.int64)
    basis = (basis.reshape(x.dim, -1) if x.dim else la.zeros(0, 0)) % p
    k = basis.shape[1]
    acts = np.zeros((x.algebra.dim, k, k), dtype=np.int64)
    if k:
        big = (x.actions @ basis) % p  # (d, n, k)
        sol = la.solve(basis, big.transpose(1, 0, 2).reshape(x.dim, -1), p)
        if sol is None:
            raise ValueError("subspace is not invariant under the algebra action")
        acts = sol.reshape(k, x.algebra.dim, k).transpose(1, 0, 2)
    sub = Module(x.algebra, acts)
    return sub, ModuleHom(sub, x, basis)


def quotient_module(x: Module, basis: np.ndarray) -> tuple[Module, ModuleHom]:
    """Quotient by the submodule spanned by the columns of ``basis``."""
    p = x.p
    basis = np.asarray(basis, dtype=np.int64)
    basis = basis.reshape(x.dim, -1) if x.dim else la.zeros(0, 0)
    reps, proj = la.quotient_basis(basis.T, x.dim, p)
    acts = np.einsum("qn,dnm,km->dqk", proj, x.actions, reps) % p
    q = Module(x.algebra, acts)
    return q, ModuleHom(x, q, proj)


def kernel(f: ModuleHom) -> tuple[Module, ModuleHom]:
    ker = la.kernel_basis(f.matrix, f.source.p) if f.source.dim else la.zeros(0, 0)
    return submodule(f.source, ker.T)


def image(f: ModuleHom) -> tuple[Module, ModuleHom]:
    return submodule(f.target, la.column_basis(f.matrix, f.source.p))


def cokernel(f: ModuleHom) -> tuple[Module, ModuleHom]:
    if f.source.dim == 0:
        return quotient_module(f.target, la.zeros(f.target.dim, 0))
    return quotient_module(f.target, la.column_basis(f.matrix, f.source.p))


@dataclass
class DirectSum:
    module: Module
    injections: list[ModuleHom]
    projections: list[ModuleHom]


def direct_sum(xs: Sequence[Module], algebra: Optional[Algebra] = None) -> DirectSum:
    if not xs:
        if algebra is None:
            raise ValueError("direct sum of an empty list needs the algebra")
        return DirectSum(zero_module(algebra), [], [])
    a = xs[0].algebra
    n = sum(x.dim for x in xs)
    acts = np.zeros((a.dim, n, n), dtype=np.int64)
    off = 0
    for x in xs:
        acts[:, off:off + x.dim, off:off + x.dim] = x.actions
        off += x.dim
    total = Module(a, acts)
    inj, proj = [], []
    off = 0
    for x in xs:
        e = la.zeros(n, x.dim)
        e[off:off + x.dim] = la.identity(x.dim)
        inj.append(ModuleHom(x, total, e))
        proj.append(ModuleHom(total, x, e.T))
        off += x.dim
    return DirectSum(total, inj, proj)


def radical_of_module(x: Module) -> tuple[Module, ModuleHom]:
    """The submodule J x, J the radical of the algebra."""
    rad = x.algebra.radical
    if x.dim == 0 or rad.shape[0] == 0:
        return submodule(x, la.zeros(x.dim, 0))
    span = np.concatenate([x.act(r) for r in rad], axis=1)
    return submodule(x, la.column_basis(span, x.p))


def top(x: Module) -> tuple[Module, ModuleHom]:
    _, inc = radical_of_module(x)
    return quotient_module(x, inc.matrix)


def dual(x: Module) -> Module:
    """Linear dual, a left module over the opposite algebra."""
    return Module(x.algebra.opposite(), x.actions.transpose(0, 2, 1).copy())


def dual_hom(f: ModuleHom) -> ModuleHom:
    return ModuleHom(dual(f.target), dual(f.source), f.matrix.T.copy())


def action_ranks(x: Module) -> tuple[int, ...]:
    """Iso-invariant signature: rank of each basis element's action."""
    return tuple(la.rank(m, x.p) for m in x.actions)


# ---------------------------------------------------------------------------
# Isomorphism testing and decomposition.


@dataclass
class SearchConfig:
    seed: int = 0
    trials: int = 200
    cap: int = 1 << 20
    chunk: int = 4096


DEFAULT_SEARCH = SearchConfig()


def _random_combos(basis: np.ndarray, count: int, rng: np.random.Generator, p: int) -> np.ndarray:
    coeffs = rng.integers(0, p, size=(count, basis.shape[0]))
    return np.einsum("bk,kij->bij", coeffs, basis) % p


def _exhaustive_batches(basis: np.ndarray, p: int, chunk: int):
    k = basis.shape[0]
    total = p ** k
    for start in range(1, total, chunk):
        coeffs = la.coefficient_vectors(k, p, start, start + chunk)
        yield np.einsum("bk,kij->bij", coeffs, basis) % p


def is_isomorphic(x: Module, y: Module, search: SearchConfig = DEFAULT_SEARCH) -> Optional[ModuleHom]:
    """An invertible intertwiner x -> y, or None when the modules are not isomorphic."""
    if not x.algebra.same_as(y.algebra):
        raise ValueError("modules over different algebras")
    if x.dim != y.dim:
        return None
    if x.dim == 0:
        return ModuleHom(x, y, la.zeros(0, 0))
    p = x.p
    gens = x.algebra.generators
    for g in gens:
        if la.rank(x.actions[g], p) != la.rank(y.actions[g], p):
            return None
    homs = hom_space(x, y)
    if not homs:
        return None
    basis = np.array([h.matrix for h in homs])

    def first_invertible(batch):
        ok = la.batch_invertible(batch, p)
        hit = np.flatnonzero(ok)
        return None if hit.size == 0 else ModuleHom(x, y, batch[hit[0]])

    rng = np.random.default_rng(search.seed)
    found = first_invertible(basis)
    if found is None and search.trials:
        found = first_invertible(_random_combos(basis, search.trials, rng, p))
    if found is not None:
        return found
    if p ** len(homs) <= search.cap:
        for batch in _exhaustive_batches(basis, p, search.chunk):
            found = first_invertible(batch)
            if found is not None:
                return found
        return None
    # fall back to comparing Krull-Schmidt decompositions
    dx, dy = decompose(x, search), decompose(y, search)
    if not (dx.certified and dy.certified):
        raise UndecidedError("isomorphism search exceeded its caps")
    if len(dx.factors) == 1 and len(dy.factors) == 1:
        raise UndecidedError("indecomposable modules with a large Hom space and no iso found")
    remaining = list(range(len(dy.factors)))
    pieces = []
    for j, f in enumerate(dx.factors):
        for pos, k in enumerate(remaining):
            iso = is_isomorphic(f, dy.factors[k], search)
            if iso is not None:
                pieces.append((j, k, iso))
                remaining.pop(pos)
                break
        else:
            return None
    x_to_sum = la.inverse(dx.iso(x).matrix, p)
    offsets = np.cumsum([0] + [f.dim for f in dx.factors])
    mat = la.zeros(y.dim, x.dim)
    for j, k, iso in pieces:
        block = x_to_sum[offsets[j]:offsets[j + 1]]
        mat = (mat + dy.inclusions[k].matrix @ iso.matrix @ block) % p
    return ModuleHom(x, y, mat)


def _splitting_endomorphism(x: Module, search: SearchConfig, rng: np.random.Generator):
    """Return ``(theta_power, certified)``.

    ``theta_power`` is ``theta^n`` for an endomorphism neither nilpotent nor
    invertible (Fitting: x = im ⊕ ker), or None if none was found. ``certified``
    is False when the search gave up before covering End(x).
    """
    n, p = x.dim, x.p
    basis = end_basis(x)
    if n <= 1 or basis.shape[0] <= 1:
        return None, True

    def split_in(batch):
        powers = la.batch_matpow(batch, n, p)
        nonzero = powers.reshape(powers.shape[0], -1).any(axis=1)
        hit = np.flatnonzero(nonzero & ~la.batch_invertible(powers, p))
        return None if hit.size == 0 else powers[hit[0]]

    found = split_in(basis)
    if found is not None:
        return found, True
    if search.trials:
        combos = _random_combos(basis, search.trials, rng, p)
        shifts = range(1, p) if p <= 64 else rng.integers(1, p, size=4)
        batch = np.concatenate([combos] + [(combos + int(s) * la.identity(n)) % p for s in shifts][:8])
        found = split_in(batch)
        if found is not None:
            return found, True
    if p ** basis.shape[0] <= search.cap:
        for batch in _exhaustive_batches(basis, p, search.chunk):
            found = split_in(batch)
            if found is not None:
                return found, True
        return None, True
    return None, False


@dataclass
class Decomposition:
    factors: list[Module]
    inclusions: list[ModuleHom]  # factor -> original module
    certified: bool

    def iso(self, x: Module) -> ModuleHom:
        """The explicit isomorphism ⊕ factors -> x."""
        total = direct_sum(self.factors, x.algebra).module
        mat = np.concatenate([f.matrix for f in self.inclusions], axis=1) if self.inclusions else la.zeros(0, 0)
        return ModuleHom(total, x, mat)


def decompose(x: Module, search: SearchConfig = DEFAULT_SEARCH) -> Decomposition:
    """Krull-Schmidt decomposition by repeated Fitting splitting.

    ``certified`` is False when some factor could only be declared
    "possibly decomposable" within the search caps.
    """
    rng = np.random.default_rng(search.seed)
    p = x.p
    if x.dim == 0:
        return Decomposition([], [], True)
    pending = [la.identity(x.dim)]
    factors, incs = [], []
    certified = True
    while pending:
        basis = pending.pop()
        sub, inc = submodule(x, basis)
        power, ok = _splitting_endomorphism(sub, search, rng)
        if power is None:
            certified &= ok
            factors.append(sub)
            incs.append(inc)
            continue
        im = la.column_basis(power, p)
        ker = la.kernel_basis(power, p).T
        pending.append((basis @ ker) % p)
        pending.append((basis @ im) % p)
    # order factors by dimension, then by the order they were found
    order = sorted(range(len(factors)), key=lambda k: factors[k].dim)
    return Decomposition([factors[k] for k in order], [incs[k] for k in order], certified)


def is_indecomposable(x: Module, search: SearchConfig = DEFAULT_SEARCH) -> Optional[bool]:
    """True / False, or None when the caps were exceeded without a split."""
    if x.dim == 0:
        return False
    power, ok = _splitting_endomorphism(x, search, np.random.default_rng(search.seed))
    if power is not None:
        return False
    return True if ok else None


def primitive_idempotents(a: Algebra, search: SearchConfig = DEFAULT_SEARCH) -> np.ndarray:
    """A complete set of primitive orthogonal idempotents (supplied or computed)."""
    if a.idempotents is not None:
        return a.idempotents
    if "idempotents" not in a._cache:
        reg = regular_module(a)
        dec = decompose(reg, search)
        if not dec.certified:
            raise UndecidedError("could not certify a decomposition of the regular module")
        cols = np.concatenate([inc.matrix for inc in dec.inclusions], axis=1)
        coeff = la.solve(cols, a.unit.reshape(-1, 1), a.p)
        es, off = [], 0
        for inc in dec.inclusions:
            k = inc.matrix.shape[1]
            es.append((inc.matrix @ coeff[off:off + k, 0]) % a.p)
            off += k
        a._cache["idempotents"] = np.array(es, dtype=np.int64)
    return a._cache["idempotents"]
