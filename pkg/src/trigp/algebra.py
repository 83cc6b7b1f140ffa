"""Finite-dimensional associative unital algebras over F_p.

An algebra is stored by structure constants: ``table[i, j]`` is the
coordinate vector of the product ``e_i * e_j``. The Jacobson radical is not
computed; constructors supply it (arrow ideal, span of x, ...) and
:func:`validate_algebra` checks that the supplied span is a nilpotent
two-sided ideal.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la


@dataclass(eq=False)
class Algebra:
    p: int
    table: np.ndarray  # (d, d, d)
    unit: np.ndarray  # (d,)
    radical: np.ndarray  # (r, d) row basis of the radical
    idempotents: Optional[np.ndarray] = None  # (n, d) complete primitive orthogonal set
    generators: Optional[tuple[int, ...]] = None  # basis indices generating the algebra
    name: str = ""
    meta: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.p = la.check_prime(self.p)
        self.table = np.asarray(self.table, dtype=np.int64) % self.p
        d = self.table.shape[0]
        self.unit = np.asarray(self.unit, dtype=np.int64).reshape(d) % self.p
        self.radical = np.asarray(self.radical, dtype=np.int64).reshape(-1, d) % self.p
        if self.idempotents is not None:
            self.idempotents = np.asarray(self.idempotents, dtype=np.int64).reshape(-1, d) % self.p
        if self.generators is None:
            self.generators = tuple(range(d))

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mult(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.table) % self.p

    def left_mult_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``v -> a v`` on coordinate columns."""
        return np.einsum("i,ijk->kj", a, self.table) % self.p

    def right_mult_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``v -> v a`` on coordinate columns."""
        return np.einsum("j,ijk->ki", a, self.table) % self.p

    def opposite(self) -> "Algebra":
        """Opposite algebra; ``a.opposite().opposite() is a``."""
        if "opposite" not in self._cache:
            op = Algebra(
                self.p,
                self.table.transpose(1, 0, 2).copy(),
                self.unit.copy(),
                self.radical.copy(),
                None if self.idempotents is None else self.idempotents.copy(),
                self.generators,
                name=f"{self.name}^op" if self.name else "",
                meta=dict(self.meta) if self.is_commutative() else {"opposite": True},
            )
            op._cache["opposite"] = self
            self._cache["opposite"] = op
        return self._cache["opposite"]

    def is_commutative(self) -> bool:
        return bool((self.table == self.table.transpose(1, 0, 2)).all())

    @property
    def digest(self) -> str:
        if "digest" not in self._cache:
            h = hashlib.sha256()
            h.update(f"p={self.p};d={self.dim};".encode())
            h.update(self.table.astype("<i8").tobytes())
            h.update(self.unit.astype("<i8").tobytes())
            self._cache["digest"] = h.hexdigest()[:16]
        return self._cache["digest"]

    def same_as(self, other: "Algebra") -> bool:
        return self is other or (self.p == other.p and self.dim == other.dim and self.digest == other.digest)

    def __repr__(self):
        label = self.name or "Algebra"
        return f"<{label} over F_{self.p}, dim {self.dim}>"


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _ideal_product(a: Algebra, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    if left.shape[0] == 0 or right.shape[0] == 0:
        return la.zeros(0, a.dim)
    prods = np.einsum("ui,vj,ijk->uvk", left, right, a.table).reshape(-1, a.dim) % a.p
    return la.row_basis(prods, a.p)


def validate_algebra(a: Algebra) -> ValidationReport:
    """Check associativity, unit laws, and the supplied radical; stop at the first failure."""
    p, d, t = a.p, a.dim, a.table
    if t.shape != (d, d, d):
        return ValidationReport(False, [f"structure table has shape {t.shape}, expected {(d, d, d)}"])
    lhs = np.einsum("ijl,lkm->ijkm", t, t) % p
    rhs = np.einsum("jkl,ilm->ijkm", t, t) % p
    bad = np.argwhere((lhs != rhs).any(axis=3))
    if bad.size:
        i, j, k = bad[0]
        return ValidationReport(False, [f"associativity fails for basis triple ({i}, {j}, {k})"])
    eye = la.identity(d)
    left_unit = np.einsum("i,ijk->jk", a.unit, t) % p
    right_unit = np.einsum("j,ijk->ik", a.unit, t) % p
    for name, mat in (("left unit law", left_unit), ("right unit law", right_unit)):
        wrong = np.flatnonzero((mat != eye).any(axis=1))
        if wrong.size:
            return ValidationReport(False, [f"{name} fails at basis element e_{wrong[0]}"])
    rad = la.row_basis(a.radical, p) if a.radical.shape[0] else la.zeros(0, d)
    r = rad.shape[0]
    if r:
        full = la.identity(d)
        for side, prod in (("left", _ideal_product(a, full, rad)), ("right", _ideal_product(a, rad, full))):
            if prod.shape[0] and la.rank(np.vstack([rad, prod]), p) > r:
                return ValidationReport(False, [f"radical is not closed under {side} multiplication"])
        power = rad
        for _ in range(d + 1):
            power = _ideal_product(a, power, rad)
            if power.shape[0] == 0:
                break
        else:
            return ValidationReport(False, ["radical is not nilpotent"])
        if la.rank(np.vstack([rad, a.unit.reshape(1, -1)]), p) == r:
            return ValidationReport(False, ["radical contains the unit"])
    if a.idempotents is not None:
        es = a.idempotents
        for i, j in itertools.product(range(es.shape[0]), repeat=2):
            prod = a.mult(es[i], es[j])
            want = es[i] if i == j else np.zeros(d, dtype=np.int64)
            if (prod != want).any():
                return ValidationReport(False, [f"idempotents {i}, {j} are not orthogonal idempotents"])
        if es.shape[0] and ((es.sum(axis=0) - a.unit) % p).any():
            return ValidationReport(False, ["idempotents do not sum to the unit"])
    return ValidationReport(True)


def field_algebra(p: int) -> Algebra:
    """The prime field as a 1-dimensional algebra."""
    table = np.ones((1, 1, 1), dtype=np.int64)
    return Algebra(p, table, [1], np.zeros((0, 1)), np.ones((1, 1)), (0,), name=f"F_{p}",
                   meta={"family": "truncated", "t": 1})


def truncated_polynomial(p: int, t: int) -> Algebra:
    """``F_p[x]/(x^t)`` with basis 1, x, ..., x^(t-1)."""
    if t < 1:
        raise ValueError("t must be at least 1")
    table = np.zeros((t, t, t), dtype=np.int64)
    for i in range(t):
        for j in range(t - i):
            table[i, j, i + j] = 1
    rad = np.eye(t, dtype=np.int64)[1:]
    gens = (0, 1) if t > 1 else (0,)
    return Algebra(p, table, np.eye(t, dtype=np.int64)[0], rad, np.eye(t, dtype=np.int64)[:1], gens,
                   name=f"F_{p}[x]/(x^{t})" if t > 1 else f"F_{p}", meta={"family": "truncated", "t": t})


@dataclass
class QuiverPresentation:
    """A bound quiver.

    Paths are tuples of arrow indices in traversal order. The product ``u * v``
    is "v, then u" so left modules are representations of the quiver.
    ``relations`` holds dicts ``{path: coefficient}``.
    """

    vertices: int
    arrows: list[tuple[int, int]]
    relations: list[dict] = field(default_factory=list)
    truncation: Optional[int] = None

    def source(self, path: tuple, vertex: Optional[int] = None) -> int:
        return self.arrows[path[0]][0] if path else vertex

    def target(self, path: tuple, vertex: Optional[int] = None) -> int:
        return self.arrows[path[-1]][1] if path else vertex


def _paths(q: QuiverPresentation, max_len: int) -> list[tuple[int, tuple]]:
    """All paths as (vertex, arrows) up to ``max_len``; vertex is used only for trivial paths.

    Ordered by (length, lexicographic).
    """
    out = [(v, ()) for v in range(q.vertices)]
    layer = list(out)
    for _ in range(max_len):
        nxt = []
        for v, path in layer:
            end = q.target(path, v)
            for a, (s, _t) in enumerate(q.arrows):
                if s == end:
                    nxt.append((q.arrows[a][0] if not path else v, path + (a,)))
        nxt.sort(key=lambda vp: vp[1])
        out.extend(nxt)
        layer = nxt
    return out


def _longest_path(q: QuiverPresentation) -> Optional[int]:
    """Length of the longest path, or None if the quiver has an oriented cycle."""
    n = q.vertices
    longest = [0] * n
    for _ in range(n + 1):
        changed = False
        for s, t in q.arrows:
            if longest[s] + 1 > longest[t]:
                longest[t] = longest[s] + 1
                changed = True
        if not changed:
            return max(longest) if n else 0
        if max(longest) > n:
            return None
    return None


def quotient_path_algebra(q: QuiverPresentation, p: int) -> Algebra:
    """Path algebra modulo an admissible ideal, basis ordered by (length, lexicographic)."""
    p = la.check_prime(p)
    for rel in q.relations:
        ends = set()
        for path, _c in rel.items():
            path = tuple(path)
            if len(path) < 2:
                raise ValueError(f"non-admissible relation: path {path} has length < 2")
            for a, b in zip(path, path[1:]):
                if q.arrows[a][1] != q.arrows[b][0]:
                    raise ValueError(f"relation path {path} is not composable")
            ends.add((q.arrows[path[0]][0], q.arrows[path[-1]][1]))
        if len(ends) > 1:
            raise ValueError("relation terms do not share source and target")
    L = q.truncation
    if L is None:
        L = _longest_path(q)
        if L is None:
            raise ValueError("quiver has oriented cycles: a truncation degree is required")
        L += 1
    paths = _paths(q, L)
    index = {path if path else ("v", v): k for k, (v, path) in enumerate(paths)}

    def key(v, path):
        return path if path else ("v", v)

    n = len(paths)
    # ideal generated by the relations inside span(paths of length <= L)
    gens = []
    for rel in q.relations:
        tail = tuple(next(iter(rel)))
        s, t = q.arrows[tail[0]][0], q.arrows[tail[-1]][1]
        for _, u in paths:
            if u and q.arrows[u[0]][0] != t:
                continue
            for _, w in paths:
                if w and q.arrows[w[-1]][1] != s:
                    continue
                if len(u) + len(w) + 2 > L:
                    continue
                vec = np.zeros(n, dtype=np.int64)
                for path, c in rel.items():
                    full = tuple(w) + tuple(path) + tuple(u)
                    if len(full) <= L:
                        vec[index[full]] += c
                if vec.any():
                    gens.append(vec % p)
    order = sorted(range(n), key=lambda k: (len(paths[k][1]), paths[k][1], paths[k][0]), reverse=True)
    perm = np.array(order)
    ideal = np.array(gens, dtype=np.int64).reshape(-1, n)[:, perm] if gens else la.zeros(0, n)
    reps, proj = la.quotient_basis(ideal, n, p)
    # proj acts on permuted coordinates; residues of surviving paths are the basis.
    survivors = [int(perm[np.flatnonzero(r)[0]]) for r in reps]
    for k, (v, path) in enumerate(paths):
        if len(path) == L:
            col = np.zeros(n, dtype=np.int64)
            col[np.flatnonzero(perm == k)[0]] = 1
            if (proj @ col % p).any():
                raise ValueError(f"arrow ideal not nilpotent modulo relations at truncation degree {L}")
    survivors.sort(key=lambda k: (len(paths[k][1]), paths[k][1], paths[k][0]))
    pos_of_survivor_in_proj = {int(perm[np.flatnonzero(r)[0]]): i for i, r in enumerate(reps)}
    to_basis = np.zeros((len(survivors), len(reps)), dtype=np.int64)
    for b, k in enumerate(survivors):
        to_basis[b, pos_of_survivor_in_proj[k]] = 1

    def reduce(path_key) -> np.ndarray:
        col = np.zeros(n, dtype=np.int64)
        if path_key in index:
            col[np.flatnonzero(perm == index[path_key])[0]] = 1
        return to_basis @ (proj @ col % p) % p

    d = len(survivors)
    table = np.zeros((d, d, d), dtype=np.int64)
    for i, ki in enumerate(survivors):
        vi, pi = paths[ki]
        for j, kj in enumerate(survivors):
            vj, pj = paths[kj]
            # e_i * e_j = "path j, then path i"
            if q.target(pj, vj) != q.source(pi, vi):
                continue
            if not pj:
                table[i, j] = reduce(key(vi, pi))
            elif not pi:
                table[i, j] = reduce(key(vj, pj))
            else:
                full = pj + pi
                if len(full) <= L:
                    table[i, j] = reduce(full)
    unit = np.zeros(d, dtype=np.int64)
    idem = np.zeros((q.vertices, d), dtype=np.int64)
    for b, k in enumerate(survivors):
        if not paths[k][1]:
            unit[b] = 1
            idem[paths[k][0], b] = 1
    rad = np.array([np.eye(d, dtype=np.int64)[b] for b, k in enumerate(survivors) if paths[k][1]],
                   dtype=np.int64).reshape(-1, d)
    arrows_pos = tuple(b for b, k in enumerate(survivors) if len(paths[k][1]) <= 1)
    return Algebra(p, table, unit, rad, idem, arrows_pos, name="kQ/I",
                   meta={"family": "quiver", "paths": [paths[k] for k in survivors]})


def linear_quiver(n: int) -> QuiverPresentation:
    """A_n: 0 -> 1 -> ... -> n-1."""
    return QuiverPresentation(n, [(i, i + 1) for i in range(n - 1)])


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


def product_algebra(parts: Sequence[Algebra]) -> Algebra:
    """Direct product of algebras over the same field."""
    p = parts[0].p
    d = sum(a.dim for a in parts)
    table = np.zeros((d, d, d), dtype=np.int64)
    unit = np.zeros(d, dtype=np.int64)
    rads, idems, gens = [], [], []
    off = 0
    for a in parts:
        s = slice(off, off + a.dim)
        table[s, s, s] = a.table
        unit[s] = a.unit
        for r in a.radical:
            v = np.zeros(d, dtype=np.int64)
            v[s] = r
            rads.append(v)
        for e in (a.idempotents if a.idempotents is not None else []):
            v = np.zeros(d, dtype=np.int64)
            v[s] = e
            idems.append(v)
        gens.extend(off + g for g in a.generators)
        off += a.dim
    have_idem = all(a.idempotents is not None for a in parts)
    return Algebra(p, table, unit, np.array(rads, dtype=np.int64).reshape(-1, d),
                   np.array(idems, dtype=np.int64).reshape(-1, d) if have_idem else None,
                   tuple(gens), name=" x ".join(a.name for a in parts))
