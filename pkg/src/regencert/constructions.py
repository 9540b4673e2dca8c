"""Concrete code families: layered, repair-by-transfer MBR, MDS-as-MSR, replication.

Plus seeded random subspace systems for property tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .entropy import Node, VariableSystem, Whole
from .linalg import check_prime, column_space, full_space, is_prime, rank, rref
from .model import CodeParams, RegenCode


def next_prime(m: int) -> int:
    p = max(2, m)
    while not is_prime(p):
        p += 1
    return p


def vandermonde(rows: int, points, q: int) -> np.ndarray:
    """rows x len(points) matrix with entry (r, c) = points[c]**r mod q (0**0 = 1)."""
    pts = [int(x) % q for x in points]
    if len(set(pts)) != len(pts):
        raise ValueError("Vandermonde evaluation points must be distinct mod q")
    return np.array([[pow(x, r, q) for x in pts] for r in range(rows)], dtype=np.int64)


def _selector(size: int, picks) -> np.ndarray:
    m = np.zeros((size, len(picks)), dtype=np.int64)
    for c, r in enumerate(picks):
        m[r, c] = 1
    return m


def layered(n: int, w: int, q: int = 2) -> RegenCode:
    """Layered code on n nodes with layer size w.

    Each w-subset of nodes (lexicographic order) is a layer holding w-1
    message symbols under a single-parity [w, w-1] code; node t of a layer
    stores its coded symbol. k = d = n-1.
    """
    if not 2 <= w <= n:
        raise ValueError(f"layered code needs 2 <= w <= n (got n={n}, w={w})")
    check_prime(q)
    layers = list(itertools.combinations(range(1, n + 1), w))
    B = (w - 1) * len(layers)
    alpha = comb(n - 1, w - 1)
    beta = comb(n - 2, w - 2)
    node_cols: dict[int, list[np.ndarray]] = {j: [] for j in range(1, n + 1)}
    node_layers: dict[int, list[tuple]] = {j: [] for j in range(1, n + 1)}
    for t, layer in enumerate(layers):
        base = t * (w - 1)
        for pos, j in enumerate(layer):
            col = np.zeros(B, dtype=np.int64)
            if pos < w - 1:
                col[base + pos] = 1
            else:
                col[base: base + w - 1] = 1
            node_cols[j].append(col)
            node_layers[j].append(layer)
    gen = np.column_stack([c for j in range(1, n + 1) for c in node_cols[j]])
    repair = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                picks = [r for r, layer in enumerate(node_layers[i]) if j in layer]
                repair[(i, j)] = _selector(alpha, picks)
    params = CodeParams(N=n, k=n - 1, d=n - 1, alpha=alpha, beta=beta, q=q)
    return RegenCode(params, gen, repair, f"layered(n={n},w={w},q={q})")


def rbt_mbr(n: int, k: int, q: int | None = None) -> RegenCode:
    """Repair-by-transfer MBR code with d = n-1, alpha = n-1, beta = 1.

    B = k(n-1) - C(k,2) message symbols are encoded by a Vandermonde MDS code
    into one symbol per node pair; node i stores the symbols of all pairs
    containing i and sends symbol {i,j} to repair node j.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"rbt_mbr needs 1 <= k <= n-1 (got n={n}, k={k})")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if q is None:
        q = next_prime(len(pairs))
    check_prime(q)
    B = k * (n - 1) - comb(k, 2)
    if B == len(pairs):
        outer = np.eye(B, dtype=np.int64)
    else:
        if q < len(pairs):
            raise ValueError(f"rbt_mbr(n={n}) needs q >= C(n,2) = {len(pairs)} (got q={q})")
        outer = vandermonde(B, range(len(pairs)), q)
    index = {pr: c for c, pr in enumerate(pairs)}
    cols, stored = [], {}
    for i in range(1, n + 1):
        stored[i] = [j for j in range(1, n + 1) if j != i]
        cols += [outer[:, index[tuple(sorted((i, j)))]] for j in stored[i]]
    gen = np.column_stack(cols)
    repair = {(i, j): _selector(n - 1, [stored[i].index(j)])
              for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    params = CodeParams(N=n, k=k, d=n - 1, alpha=n - 1, beta=1, q=q)
    return RegenCode(params, gen, repair, f"rbt_mbr(n={n},k={k},q={q})")


def mds_msr(n: int, k: int, d: int | None = None, q: int | None = None) -> RegenCode:
    """[n, k] Vandermonde MDS code viewed as an MSR code with alpha = beta = 1.

    Each helper sends its whole symbol; any d >= k helpers decode and re-encode.
    """
    d = k if d is None else d
    if not 1 <= k <= d <= n - 1:
        raise ValueError(f"mds_msr needs 1 <= k <= d <= n-1 (got n={n}, k={k}, d={d})")
    if q is None:
        q = next_prime(n)
    check_prime(q)
    if q < n:
        raise ValueError(f"mds_msr(n={n}) needs q >= n (got q={q})")
    gen = vandermonde(k, range(n), q)
    one = np.ones((1, 1), dtype=np.int64)
    repair = {(i, j): one for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    params = CodeParams(N=n, k=k, d=d, alpha=1, beta=1, q=q)
    return RegenCode(params, gen, repair, f"mds_msr(n={n},k={k},d={d},q={q})")


def replication(n: int, size: int = 1, k: int = 1, d: int | None = None, q: int = 2) -> RegenCode:
    """Every node stores the whole file of ``size`` symbols; every helper sends all of it.

    Any k >= 1 and d >= k are valid declarations since a single node already
    suffices for access and repair.
    """
    if n < 2:
        raise ValueError(f"replication needs n >= 2 (got {n})")
    d = n - 1 if d is None else d
    check_prime(q)
    gen = np.hstack([np.eye(size, dtype=np.int64)] * n)
    ident = np.eye(size, dtype=np.int64)
    repair = {(i, j): ident for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    params = CodeParams(N=n, k=k, d=d, alpha=size, beta=size, q=q)
    return RegenCode(params, gen, repair, f"replication(n={n},size={size},k={k},d={d},q={q})")


def scrambled(code: RegenCode, seed: int) -> RegenCode:
    """An equivalent code under a random change of message basis and per-node bases.

    All entropy quantities are invariant; used to exercise the engine on
    codes whose matrices are not 0/1 selectors.
    """
    rng = np.random.default_rng(seed)
    q, P = code.params.q, code.params
    T = _random_invertible(code.B, q, rng)
    blocks, inv = [], {}
    for j in range(1, P.N + 1):
        A = _random_invertible(P.alpha, q, rng)
        blocks.append(T @ code.block(j) @ A % q)
        inv[j] = _inverse(A, q)
    repair = {(i, j): inv[i] @ c % q for (i, j), c in code.repair.items()}
    return RegenCode(P, np.hstack(blocks), repair, f"scrambled({code.name},seed={seed})")


def _random_invertible(size: int, q: int, rng) -> np.ndarray:
    while True:
        m = rng.integers(0, q, size=(size, size))
        if rank(m, q) == size:
            return m.astype(np.int64)


def _inverse(m: np.ndarray, q: int) -> np.ndarray:
    size = m.shape[0]
    r, piv = rref(np.hstack([m, np.eye(size, dtype=np.int64)]), q)
    if piv[:size] != tuple(range(size)):
        raise ValueError("matrix is singular")
    return r[:, size:]


def random_subspace_system(seed: int, ambient_dim: int, count: int, q: int) -> VariableSystem:
    """``count`` random subspaces of GF(q)^ambient_dim, named W1..W{count}, plus M.

    Dimensions are drawn uniformly from 0..ambient_dim before spanning, so
    dependent and repeated subspaces occur often.
    """
    if ambient_dim < 1:
        raise ValueError("ambient_dim must be >= 1")
    check_prime(q)
    rng = np.random.default_rng(seed)
    variables = {Whole(): full_space(ambient_dim, q)}
    for t in range(1, count + 1):
        cols = int(rng.integers(0, ambient_dim + 1))
        m = rng.integers(0, q, size=(ambient_dim, cols))
        variables[Node(t)] = column_space(m, q, ambient_dim)
    return VariableSystem(q, ambient_dim, variables)


FAMILIES = ("layered", "rbt_mbr", "mds_msr", "replication")


@dataclass(frozen=True)
class ConstructionSpec:
    """Family name plus the parameters that family reads; ``q=None`` picks the family default."""

    family: str
    n: int
    w: int | None = None
    k: int | None = None
    d: int | None = None
    size: int = 1
    q: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        need = {"layered": "w", "rbt_mbr": "k", "mds_msr": "k"}.get(self.family)
        if need and getattr(self, need) is None:
            raise ValueError(f"{self.family} needs {need}")

    def build(self) -> RegenCode:
        if self.family == "layered":
            return layered(self.n, self.w, 2 if self.q is None else self.q)
        if self.family == "rbt_mbr":
            return rbt_mbr(self.n, self.k, self.q)
        if self.family == "mds_msr":
            return mds_msr(self.n, self.k, self.d, self.q)
        return replication(self.n, self.size, self.k or 1, self.d, 2 if self.q is None else self.q)
