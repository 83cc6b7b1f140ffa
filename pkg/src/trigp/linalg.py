"""Dense exact linear algebra over prime fields F_p.

Matrices are plain ``numpy`` int64 arrays with entries reduced into [0, p).
Vectors act as columns: ``m @ v``. Subspaces handed to or returned from this
module as "row bases" have one basis vector per row.

Since p < 2**16, every product of two residues fits below 2**32 and a dot
product of a few million terms still fits in int64 before reduction.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(p: int) -> bool:
    """Deterministic trial-division primality check (p is small)."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not (2 <= p < MAX_PRIME) or not is_prime(p):
        raise ValueError(f"characteristic must be a prime in [2, 2^16), got {p}")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Table of inverses mod p, with 0 mapped to 0."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def as_matrix(m, p: int, shape: Optional[tuple[int, int]] = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, 0), dtype=np.int64)
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row-echelon form with first-nonzero pivoting.

    Returns ``(reduced, pivot_columns, rank)``.
    """
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = a.shape
    inv = inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        if a[r, c] != 1:
            a[r] = (a[r] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: np.ndarray, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return rref(m, p)[2]


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Rows of the rref spanning the row space of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0:
        return zeros(0, m.shape[1])
    red, _, r = rref(m, p)
    return red[:r]


def column_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the column space of ``m`` (reduced, as columns)."""
    m = np.asarray(m, dtype=np.int64)
    return row_basis(m.T, p).T.copy()


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Row basis of the right null space ``{v : m v = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    red, pivots, r = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = zeros(len(free), cols)
    for k, f in enumerate(free):
        out[k, f] = 1
        for row, pc in enumerate(pivots):
            out[k, pc] = (-red[row, f]) % p
    return out


def solve(m: np.ndarray, targets: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Particular solution ``C`` of ``m C = targets`` (free variables zero), or None."""
    m = np.asarray(m, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    if targets.ndim == 1:
        targets = targets.reshape(-1, 1)
    if m.shape[0] != targets.shape[0]:
        raise ValueError(f"dimension mismatch: {m.shape} vs targets {targets.shape}")
    rows, cols = m.shape
    k = targets.shape[1]
    if rows == 0:
        return zeros(cols, k)
    aug = np.concatenate([m % p, targets % p], axis=1)
    red, pivots, r = rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    out = zeros(cols, k)
    for row, pc in enumerate(pivots):
        out[pc] = red[row, cols:]
    return out


def inverse(m: np.ndarray, p: int) -> Optional[np.ndarray]:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if rank(m, p) < n:
        return None
    return solve(m, identity(n), p)


def quotient_basis(subspace_rows: np.ndarray, ambient_dim: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Complement of a row space, chosen on the non-pivot coordinates.

    Returns ``(representatives, projection)``: ``representatives`` has one
    row per quotient basis vector (a unit vector on a non-pivot column);
    ``projection`` is ``q x ambient_dim`` and maps ambient column vectors to
    quotient coordinates. ``projection @ representatives.T`` is the identity
    and the kernel of ``projection`` is the row space.
    """
    if ambient_dim == 0:
        return zeros(0, 0), zeros(0, 0)
    sub = np.asarray(subspace_rows, dtype=np.int64).reshape(-1, ambient_dim)
    if sub.shape[0]:
        red, pivots, r = rref(sub, p)
        red = red[:r]
    else:
        red, pivots = zeros(0, ambient_dim), []
    pivset = set(pivots)
    free = [c for c in range(ambient_dim) if c not in pivset]
    reps = zeros(len(free), ambient_dim)
    proj = zeros(len(free), ambient_dim)
    for k, f in enumerate(free):
        reps[k, f] = 1
        proj[k, f] = 1
    for row, pc in enumerate(pivots):
        proj[:, pc] = (-red[row, free]) % p
    return reps, proj


def kronecker(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p


def in_span(vectors_rows: np.ndarray, v: np.ndarray, p: int) -> bool:
    base = rank(vectors_rows, p) if vectors_rows.shape[0] else 0
    return rank(np.vstack([vectors_rows, v.reshape(1, -1)]), p) == base


# ---------------------------------------------------------------------------
# Batched kernels (stacks of square matrices), used by exhaustive sweeps.


def batch_matpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    """``a[b] ** e`` for a stack ``a`` of shape (B, n, n)."""
    n = a.shape[-1]
    result = np.broadcast_to(identity(n), a.shape).copy()
    base = a % p
    while e:
        if e & 1:
            result = np.matmul(result, base) % p
        e >>= 1
        if e:
            base = np.matmul(base, base) % p
    return result


def batch_invertible(a: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of the invertible matrices in a stack of shape (B, n, n)."""
    a = np.array(a, dtype=np.int64) % p
    b, n, _ = a.shape
    ok = np.ones(b, dtype=bool)
    if n == 0:
        return ok
    inv = inverse_table(p)
    idx = np.arange(b)
    for c in range(n):
        nz = a[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = np.argmax(nz, axis=1) + c
        row_c = a[idx, c].copy()
        a[idx, c] = a[idx, piv]
        a[idx, piv] = row_c
        scale = inv[a[idx, c, c]]
        a[:, c, :] = (a[:, c, :] * scale[:, None]) % p
        fac = a[:, :, c].copy()
        fac[:, c] = 0
        a = (a - fac[:, :, None] * a[:, c, None, :]) % p
    return ok


def coefficient_vectors(k: int, p: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Base-p digit vectors of the integers in [start, stop), shape (count, k)."""
    total = p ** k
    stop = total if stop is None else min(stop, total)
    n = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((n.size, k), dtype=np.int64)
    for j in range(k):
        out[:, j] = n % p
        n = n // p
    return out
