"""Censuses of indecomposable Gorenstein projective modules.

Over a triangular algebra every GP triple sits in a short exact sequence
``0 -> e1_lambda(X) -> (X, Y)_phi -> (0, C)_0 -> 0`` with X and C Gorenstein
projective, so candidates are generated as (X, C, extension class) and then
filtered, deduplicated, and certified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .homological import (
    DEFAULT_BOUND,
    GPVerdict,
    Tag,
    ext,
    extension_from_cocycle,
    global_dimension,
    gp_oracle,
    indecomposable_projectives,
    is_projective,
    is_self_injective,
)
from .modules import (
    DEFAULT_SEARCH,
    Module,
    ModuleHom,
    SearchConfig,
    UndecidedError,
    action_ranks,
    direct_sum,
    is_indecomposable,
    is_isomorphic,
    validate_module,
)
from .triangular import (
    ConditionReport,
    InvariantViolation,
    TriangularAlgebra,
    TripleModule,
    e1_lambda,
    e2_lambda,
    is_gp_triple,
    module_to_triple,
    tensor_MX,
)


def jordan_module(a: Algebra, s: int) -> Module:
    """J_s = Λ_t / (x^s) over a truncated polynomial algebra (basis 1, x, ..., x^{t-1})."""
    t = a.meta.get("t")
    if a.meta.get("family") != "truncated" or t is None:
        raise ValueError("Jordan modules need a truncated polynomial algebra")
    if not 1 <= s <= t:
        raise ValueError(f"block size must lie in [1, {t}]")
    shift = np.eye(s, k=-1, dtype=np.int64)
    acts = np.array([np.linalg.matrix_power(shift, k) for k in range(t)], dtype=np.int64)
    return Module(a, acts, name=f"J{s}")


def indecomposables_uniserial(p: int, t: int, maxdim: int) -> list[Module]:
    from .algebra import truncated_polynomial

    a = truncated_polynomial(p, t)
    return [jordan_module(a, s) for s in range(1, min(t, maxdim) + 1)]


@dataclass
class CertifiedModule:
    module: Module
    verdict: GPVerdict
    label: str = ""


STRATEGIES = ("self-injective", "finite-global-dimension", "supplied", "auto")


def gp_base_list(a: Algebra, maxdim: int, strategy: str = "auto", supplied: Optional[Sequence[Module]] = None,
                 bound: int = DEFAULT_BOUND) -> list[CertifiedModule]:
    """Indecomposable GP modules of dimension at most ``maxdim``, each certified ProvenGP."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "auto":
        if supplied is not None:
            strategy = "supplied"
        elif global_dimension(a, bound) is not None:
            strategy = "finite-global-dimension"
        elif is_self_injective(a):
            strategy = "self-injective"
        else:
            raise ValueError("no strategy applies: supply the indecomposable GP modules")
    if strategy == "finite-global-dimension":
        if global_dimension(a, bound) is None:
            raise ValueError("strategy inapplicable: global dimension not finite within the bound")
        mods = [(pr.module, f"P{pr.index}") for pr in indecomposable_projectives(a)]
    elif strategy == "self-injective":
        if not is_self_injective(a):
            raise ValueError("strategy inapplicable: algebra is not self-injective")
        if supplied is not None:
            mods = [(m, m.name or f"G{k}") for k, m in enumerate(supplied)]
        elif a.meta.get("family") == "truncated":
            mods = [(jordan_module(a, s), f"J{s}") for s in range(1, min(a.meta["t"], maxdim) + 1)]
        else:
            raise ValueError("self-injective strategy needs a supplied or uniserial indecomposable list")
    else:
        if supplied is None:
            raise ValueError("strategy 'supplied' needs a module list")
        mods = [(m, m.name or f"G{k}") for k, m in enumerate(supplied)]
    out = []
    for m, label in mods:
        if m.dim > maxdim:
            continue
        v = gp_oracle(m, bound)
        if v.tag is not Tag.PROVEN_GP:
            raise ValueError(f"base module {label} is not certified GP: {v}")
        out.append(CertifiedModule(m, v, label))
    return out


@dataclass
class CensusEntry:
    triple: Optional[TripleModule]
    module: Module
    verdict: object  # TripleVerdict for triangular censuses, GPVerdict otherwise
    label: str = ""
    dims: tuple[int, ...] = ()


@dataclass
class GPCensus:
    algebra: Algebra
    bound: int
    entries: list[CensusEntry]
    complete: bool
    strategy: str
    triangular: Optional[TriangularAlgebra] = None
    seed: int = 0
    notes: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def modules(self) -> list[Module]:
        return [e.module for e in self.entries]

    def table(self) -> str:
        lines = []
        for k, e in enumerate(self.entries):
            tag = getattr(e.verdict, "tag", None)
            lines.append(f"{k:3d}  dims={','.join(map(str, e.dims))}  {tag.value if tag else '?'}  {e.label}")
        lines.append(f"count={len(self.entries)} bound={self.bound} complete={'yes' if self.complete else 'no'}")
        return "\n".join(lines)


def cm_count(census: GPCensus) -> int:
    return len(census.entries)


def base_census(a: Algebra, maxdim: int, strategy: str = "auto", supplied=None,
                bound: int = DEFAULT_BOUND) -> GPCensus:
    base = gp_base_list(a, maxdim, strategy, supplied, bound)
    entries = [CensusEntry(None, c.module, c.verdict, c.label, (c.module.dim,)) for c in base]
    return GPCensus(a, maxdim, entries, True, strategy)


def is_cm_free(census: GPCensus) -> bool:
    """True below the census bound iff every representative is projective."""
    return all(is_projective(e.module) for e in census.entries)


def _multisets(items: Sequence, weights: Sequence[int], budget: int):
    """Index multisets (non-decreasing tuples) with total weight at most ``budget``."""

    def rec(start, left, acc):
        yield tuple(acc)
        for k in range(start, len(items)):
            w = weights[k]
            if 0 < w <= left:
                acc.append(k)
                yield from rec(k, left - w, acc)
                acc.pop()

    yield from rec(0, budget, [])


@dataclass
class CensusConfig:
    bound: int = DEFAULT_BOUND  # oracle bound for the certificates
    ext_cap: int = 1 << 10  # sweep all p^dim extension classes up to this many
    random_classes: int = 16
    search: SearchConfig = field(default_factory=lambda: DEFAULT_SEARCH)


def enumerate_gp_gamma(g: TriangularAlgebra, r_list: Sequence[Module], s_list: Sequence[Module],
                       total_dim_bound: int, cond1: Optional[ConditionReport], cond2: Optional[ConditionReport],
                       config: CensusConfig = CensusConfig()) -> GPCensus:
    """Indecomposable GP triples of total dimension at most ``total_dim_bound``.

    Only indecomposable candidates are kept: a summand of a GP triple is GP,
    hence arises from its own smaller (X, C, class) triple.
    """
    if cond1 is None or cond2 is None or not (cond1.passed and cond2.passed):
        raise ValueError("census needs passing condition (1) and (2) reports")
    p = g.p
    search = config.search
    rng = np.random.default_rng(search.seed)
    tdims = [tensor_MX(g.m, x).module.dim for x in r_list]
    complete, strategy = True, "exhaustive-classes"
    notes: list[str] = []
    reps: list[CensusEntry] = []
    buckets: dict[tuple, list[int]] = {}

    def consider(t: TripleModule, label: str):
        nonlocal complete
        z = t.to_module()
        key = (t.x.dim, t.y.dim, action_ranks(z))
        for k in buckets.get(key, []):
            try:
                if is_isomorphic(z, reps[k].module, search) is not None:
                    return
            except UndecidedError:
                complete = False
                notes.append(f"isomorphism undecided for {label}")
        ind = is_indecomposable(z, search)
        if ind is None:
            complete = False
            notes.append(f"indecomposability undecided for {label}")
            return
        if not ind:
            return
        v = is_gp_triple(t, cond1, cond2, config.bound)
        if v.tag is Tag.NOT_GP:
            raise InvariantViolation(f"constructed triple {label} is not GP: {v}")
        if v.tag is not Tag.PROVEN_GP:
            complete = False
            notes.append(f"{label}: {v}")
        buckets.setdefault(key, []).append(len(reps))
        reps.append(CensusEntry(t, z, v, label, (t.x.dim, t.y.dim)))

    xdims = [x.dim + td for x, td in zip(r_list, tdims)]
    for xs in _multisets(r_list, xdims, total_dim_bound):
        x = direct_sum([r_list[k] for k in xs], g.r).module
        xname = "+".join(r_list[k].name or f"X{k}" for k in xs) or "0"
        base = e1_lambda(g, x)
        n = base.y  # M ⊗ X
        left = total_dim_bound - base.dim
        for cs in _multisets(s_list, [c.dim for c in s_list], left):
            if not xs and not cs:
                continue
            c = direct_sum([s_list[k] for k in cs], g.s).module
            cname = "+".join(s_list[k].name or f"C{k}" for k in cs) or "0"
            res = ext(c, n, 1) if c.dim and n.dim else None
            kdim = res.dim if res is not None else 0
            if kdim == 0:
                classes = la.zeros(1, 0)
            elif p ** kdim <= config.ext_cap:
                classes = la.coefficient_vectors(kdim, p)
            else:
                complete, strategy = False, "generator-strategy"
                extra = rng.integers(0, p, size=(config.random_classes, kdim))
                classes = np.concatenate([la.zeros(1, kdim), la.identity(kdim), extra])
            for ci, coeff in enumerate(classes):
                label = f"X={xname} C={cname} class={''.join(map(str, coeff))}"
                if kdim == 0:
                    y_mod = direct_sum([n, c], g.s)
                    e, inc = y_mod.module, y_mod.injections[0].matrix
                else:
                    f = sum(int(a) * h.matrix for a, h in zip(coeff, res.cocycles)) % p
                    e, inc_hom, _ = extension_from_cocycle(res, ModuleHom(res.cocycles[0].source, n, f))
                    inc = inc_hom.matrix
                t = TripleModule(g, x, e, inc)
                t.tensor = base.tensor
                consider(t, label)

    return GPCensus(g.gamma, total_dim_bound, reps, complete, strategy, triangular=g, seed=search.seed, notes=notes)


def census_for(g: TriangularAlgebra, total_dim_bound: int, config: CensusConfig = CensusConfig(),
               r_strategy: str = "auto", s_strategy: str = "auto", r_supplied=None, s_supplied=None) -> GPCensus:
    """Census with base lists derived by strategy and structural condition checks."""
    from .triangular import check_condition1, check_condition2

    r_base = gp_base_list(g.r, total_dim_bound, r_strategy, r_supplied, config.bound)
    s_base = gp_base_list(g.s, total_dim_bound, s_strategy, s_supplied, config.bound)
    r_list = [_named(c) for c in r_base]
    s_list = [_named(c) for c in s_base]
    c1 = check_condition1(g.m, r_list)
    c2 = check_condition2(g.m, s_list)
    return enumerate_gp_gamma(g, r_list, s_list, total_dim_bound, c1, c2, config)


def _named(c: CertifiedModule) -> Module:
    m = c.module
    if not m.name:
        m.name = c.label
    return m


# ---------------------------------------------------------------------------
# Checks on censuses.


@dataclass
class FormMatchReport:
    ok: bool
    matches: list[tuple[int, str]]  # (census index, description of the matching form)
    unmatched: list[int]


def match_cm_free_forms(census: GPCensus, r_projectives: Optional[Sequence[Module]] = None,
                  s_list: Optional[Sequence[Module]] = None) -> FormMatchReport:
    """With R CM-free, match each representative with e1_lambda(P) or (0, C)_0."""
    g = census.triangular
    if g is None:
        raise ValueError("census is not over a triangular algebra")
    if r_projectives is None:
        r_projectives = [pr.module for pr in indecomposable_projectives(g.r)]
    if s_list is None:
        s_list = gp_base_list(g.s, census.bound)
        s_list = [c.module for c in s_list]
    forms = [(e1_lambda(g, pm).to_module(), f"e1_lambda(P{k})") for k, pm in enumerate(r_projectives)]
    forms += [(e2_lambda(g, c).to_module(), f"(0, {c.name or f'C{k}'})_0") for k, c in enumerate(s_list)]
    matches, unmatched = [], []
    for k, e in enumerate(census.entries):
        for mod, desc in forms:
            if mod.dim == e.module.dim and is_isomorphic(mod, e.module) is not None:
                matches.append((k, desc))
                break
        else:
            unmatched.append(k)
    return FormMatchReport(not unmatched, matches, unmatched)


def census_sound(census: GPCensus, bound: int = DEFAULT_BOUND, seed: int = 1) -> list[str]:
    """Re-verify a census: oracle certificates and pairwise non-isomorphism under another seed."""
    errs = []
    search = SearchConfig(seed=seed)
    for k, e in enumerate(census.entries):
        v = gp_oracle(e.module, bound)
        if v.tag is not Tag.PROVEN_GP:
            errs.append(f"entry {k} ({e.label}): oracle says {v}")
    for i, j in itertools.combinations(range(len(census.entries)), 2):
        a, b = census.entries[i].module, census.entries[j].module
        if a.dim == b.dim and is_isomorphic(a, b, search) is not None:
            errs.append(f"entries {i} and {j} are isomorphic")
    return errs


# ---------------------------------------------------------------------------
# Raw exhaustive sweep (tiny scale oracle).


def square_zero_matrices(p: int, n: int) -> np.ndarray:
    """All n x n matrices N over F_p with N^2 = 0, shape (count, n, n)."""
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    allm = la.coefficient_vectors(n * n, p).reshape(-1, n, n)
    sq = np.matmul(allm, allm) % p
    return allm[~sq.reshape(sq.shape[0], -1).any(axis=1)]


def raw_modules_lambda2(a: Algebra, n: int) -> list[Module]:
    """Every Λ_2-module structure on F_p^n (one per square-zero matrix)."""
    if a.meta.get("family") != "truncated" or a.meta.get("t") != 2:
        raise ValueError("raw sweep is for F_p[x]/(x^2)")
    out = []
    for mat in square_zero_matrices(a.p, n):
        out.append(Module(a, np.stack([la.identity(n), mat])))
    return out


def raw_gp_sweep_t2_lambda2(g: TriangularAlgebra, total_dim_bound: int,
                            search: SearchConfig = DEFAULT_SEARCH) -> list[Module]:
    """Iso classes of indecomposable GP triples from all action-matrix solutions.

    Over T_2(Λ_2) the GP filter reduces to phi mono (every Λ_2-module is GP).
    """
    from .modules import hom_space

    p = g.p
    raw = {n: raw_modules_lambda2(g.r, n) for n in range(total_dim_bound + 1)}
    classes: list[Module] = []
    keys: list[tuple] = []
    for dx in range(total_dim_bound + 1):
        for dy in range(total_dim_bound + 1 - dx):
            if dx + dy == 0:
                continue
            for x in raw[dx]:
                tens = tensor_MX(g.m, x)
                for y in raw[dy]:
                    homs = hom_space(tens.module, y)
                    k = len(homs)
                    if tens.module.dim > dy:
                        continue  # phi cannot be mono
                    basis = np.array([h.matrix for h in homs]).reshape(k, dy, tens.module.dim)
                    coeffs = la.coefficient_vectors(k, p) if k else la.zeros(1, 0)
                    for c in coeffs:
                        phi = np.tensordot(c, basis, axes=1) % p if k else la.zeros(dy, tens.module.dim)
                        if la.rank(phi, p) != tens.module.dim:
                            continue
                        t = TripleModule(g, x, y, phi)
                        t.tensor = tens
                        z = t.to_module()
                        key = (dx, dy, action_ranks(z))
                        if any(kk == key and is_isomorphic(z, m, search) is not None
                               for kk, m in zip(keys, classes)):
                            continue
                        if not is_indecomposable(z, search):
                            continue
                        classes.append(z)
                        keys.append(key)
    return classes
