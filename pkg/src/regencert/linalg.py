"""Dense linear algebra over prime fields GF(p).

Matrices are plain ``numpy`` int64 arrays with entries reduced mod ``p``.
Subspaces carry a canonical basis (reduced column echelon form), so two
subspaces are equal exactly when their bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool) or not is_prime(int(p)):
        raise ValueError(f"q must be prime (got {p!r})")
    return int(p)


def as_matrix(m, p: int) -> np.ndarray:
    """Copy ``m`` into a 2-D int64 array reduced mod ``p``."""
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a % p


def rref(m, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of ``m`` over GF(p).

    Returns:
        (R, pivots): R has the same shape as ``m``; ``pivots`` lists the
        pivot column of each nonzero row of R, so ``len(pivots)`` is the rank.
    """
    a = as_matrix(m, p)
    rows, cols = a.shape
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
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        factors = a[:, c].copy()
        factors[r] = 0
        a = (a - np.outer(factors, a[r])) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank(m, p: int) -> int:
    return len(rref(m, p)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^ambient_dim.

    ``basis`` is an ``ambient_dim x dim`` array whose columns are in reduced
    column echelon form. Build instances with :func:`column_space`; the
    constructor does not re-canonicalize.
    """

    p: int
    ambient_dim: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis.shape, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(p={self.p}, ambient_dim={self.ambient_dim}, dim={self.dim})"

    def contains(self, other: Subspace) -> bool:
        _check_compatible(self, other)
        return span_sum(self, other).dim == self.dim


def column_space(m, p: int, ambient_dim: int | None = None) -> Subspace:
    """Canonical subspace spanned by the columns of ``m``."""
    a = as_matrix(m, p)
    if ambient_dim is None:
        ambient_dim = a.shape[0]
    if a.size == 0:
        return zero_subspace(ambient_dim, p)
    if a.shape[0] != ambient_dim:
        raise ValueError(f"columns have length {a.shape[0]}, expected {ambient_dim}")
    r, piv = rref(a.T, p)
    basis = np.ascontiguousarray(r[: len(piv)].T)
    basis.setflags(write=False)
    return Subspace(p, ambient_dim, basis)


def zero_subspace(ambient_dim: int, p: int) -> Subspace:
    basis = np.zeros((ambient_dim, 0), dtype=np.int64)
    basis.setflags(write=False)
    return Subspace(p, ambient_dim, basis)


def full_space(ambient_dim: int, p: int) -> Subspace:
    return column_space(np.eye(ambient_dim, dtype=np.int64), p, ambient_dim)


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.p != b.p:
        raise ValueError(f"field mismatch: GF({a.p}) vs GF({b.p})")
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def span_sum(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise ValueError("span_sum needs at least one subspace")
    first = spaces[0]
    for s in spaces[1:]:
        _check_compatible(first, s)
    cols = np.hstack([s.basis for s in spaces])
    return column_space(cols, first.p, first.ambient_dim)


def kernel(m, p: int) -> Subspace:
    """Right null space {x : m x = 0} as a subspace of GF(p)^cols."""
    a = as_matrix(m, p)
    cols = a.shape[1]
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    vecs = np.zeros((cols, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        vecs[f, t] = 1
        for row, pc in enumerate(piv):
            vecs[pc, t] = -r[row, f] % p
    return column_space(vecs, p, cols)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of [A | -B]: A x = B y."""
    _check_compatible(a, b)
    p = a.p
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.ambient_dim, p)
    ker = kernel(np.hstack([a.basis, -b.basis % p]), p)
    coeffs = ker.basis[: a.dim]
    return column_space(a.basis @ coeffs % p, p, a.ambient_dim)
