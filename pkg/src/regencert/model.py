"""Linear regenerating codes: parameters, generator, repair maps, verification, file format."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .entropy import Helper, Node, VariableSystem, Whole
from .linalg import as_matrix, check_prime, column_space, full_space, rank

FORMAT_VERSION = 1


class CodeFormatError(ValueError):
    """Raised for malformed or inconsistent code files and code objects."""


@dataclass(frozen=True)
class CodeParams:
    """(N, k, d) with secondary parameters alpha, beta over GF(q).

    alpha and beta may be Fractions when the parameters are only used for
    bound evaluation; codes themselves need integers.
    """

    N: int
    k: int
    d: int
    alpha: int | Fraction
    beta: int | Fraction
    q: int = 2

    def __post_init__(self):
        if not 1 <= self.k <= self.N:
            raise ValueError(f"need 1 <= k <= N (got k={self.k}, N={self.N})")
        if not self.k <= self.d <= self.N - 1:
            raise ValueError(f"need k <= d <= N-1 (got k={self.k}, d={self.d}, N={self.N})")
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError(f"alpha and beta must be positive (got {self.alpha}, {self.beta})")
        check_prime(self.q)


@dataclass(frozen=True, eq=False)
class RegenCode:
    """A linear exact-repair regenerating code.

    ``generator`` is B x (N*alpha); block j (1-based) holds the columns of
    node j. ``repair[(i, j)]`` is an alpha x beta coefficient matrix; the data
    node i sends to node j is block_i @ repair[(i, j)], which lies inside
    node i's column space by construction.
    """

    params: CodeParams
    generator: np.ndarray
    repair: dict = field(repr=False)
    name: str = ""

    def __post_init__(self):
        P = self.params
        q = P.q
        if not isinstance(P.alpha, int) or not isinstance(P.beta, int):
            raise CodeFormatError("code alpha and beta must be integers")
        g = as_matrix(self.generator, q)
        if g.ndim != 2 or g.shape[1] != P.N * P.alpha:
            raise CodeFormatError(
                f"generator must have N*alpha = {P.N * P.alpha} columns (got shape {g.shape})")
        r = rank(g, q)
        if r != g.shape[0]:
            raise CodeFormatError(
                f"generator rank defect: rank {r} < B = {g.shape[0]} rows")
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)
        coeffs = {}
        for i in range(1, P.N + 1):
            for j in range(1, P.N + 1):
                if i == j:
                    continue
                if (i, j) not in self.repair:
                    raise CodeFormatError(f"missing repair pair from={i} to={j}")
                c = as_matrix(self.repair[(i, j)], q)
                if c.shape != (P.alpha, P.beta):
                    raise CodeFormatError(
                        f"repair {i}->{j} must be {P.alpha}x{P.beta} (got {c.shape})")
                c.setflags(write=False)
                coeffs[(i, j)] = c
        extra = set(self.repair) - set(coeffs)
        if extra:
            raise CodeFormatError(f"unexpected repair pairs: {sorted(extra)}")
        object.__setattr__(self, "repair", coeffs)

    @property
    def B(self) -> int:
        return self.generator.shape[0]

    @property
    def N(self) -> int:
        return self.params.N

    def block(self, j: int) -> np.ndarray:
        a = self.params.alpha
        return self.generator[:, (j - 1) * a: j * a]

    def helper_matrix(self, i: int, j: int) -> np.ndarray:
        return self.block(i) @ self.repair[(i, j)] % self.params.q

    def relabeled(self, perm) -> RegenCode:
        """The same code with node ``t`` of the result being node ``perm[t-1]`` of this one."""
        perm = tuple(perm)
        if sorted(perm) != list(range(1, self.N + 1)):
            raise ValueError(f"not a permutation of 1..{self.N}: {perm}")
        g = np.hstack([self.block(s) for s in perm])
        rep = {(a, b): self.repair[(perm[a - 1], perm[b - 1])]
               for a in range(1, self.N + 1) for b in range(1, self.N + 1) if a != b}
        return RegenCode(self.params, g, rep, self.name)

    def same_as(self, other: RegenCode) -> bool:
        return (self.params == other.params
                and np.array_equal(self.generator, other.generator)
                and self.repair.keys() == other.repair.keys()
                and all(np.array_equal(self.repair[k], other.repair[k]) for k in self.repair))


def to_variable_system(code: RegenCode, nodes=None, memo: bool = True) -> VariableSystem:
    """Variables M, W_j and S_{i->j} as column spaces in GF(q)^B.

    ``nodes`` optionally restricts and renames: local index t refers to
    original node ``nodes[t-1]``.
    """
    q, B = code.params.q, code.B
    nodes = tuple(range(1, code.N + 1)) if nodes is None else tuple(nodes)
    variables = {Whole(): full_space(B, q)}
    for t, s in enumerate(nodes, 1):
        variables[Node(t)] = column_space(code.block(s), q, B)
    for a, s in enumerate(nodes, 1):
        for b, r in enumerate(nodes, 1):
            if a != b:
                variables[Helper(a, b)] = column_space(code.helper_matrix(s, r), q, B)
    return VariableSystem(q, B, variables, memo=memo)


@dataclass
class VerificationReport:
    storage_ok: dict[int, bool]
    exact_alpha: dict[int, bool]
    access_ok: dict[tuple[int, ...], bool]
    repair_ok: dict[tuple[int, tuple[int, ...]], bool]
    helper_ok: dict[tuple[int, int], bool]
    sampled: bool = False

    @property
    def passed(self) -> bool:
        return (all(self.access_ok.values()) and all(self.repair_ok.values())
                and all(self.storage_ok.values()) and all(self.helper_ok.values()))

    def failures(self) -> list[str]:
        out = [f"storage: dim W{j} exceeds alpha" for j, ok in self.storage_ok.items() if not ok]
        out += [f"helper: dim S_{i}_{j} exceeds beta" for (i, j), ok in self.helper_ok.items() if not ok]
        out += [f"access: nodes {list(J)} do not recover M" for J, ok in self.access_ok.items() if not ok]
        out += [f"repair: node {j} not rebuilt from helpers {list(I)}"
                for (j, I), ok in self.repair_ok.items() if not ok]
        return out

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "sampled": self.sampled,
            "storage_ok": {str(j): v for j, v in self.storage_ok.items()},
            "exact_alpha": {str(j): v for j, v in self.exact_alpha.items()},
            "access_checked": len(self.access_ok),
            "access_failed": [list(J) for J, ok in self.access_ok.items() if not ok],
            "repair_checked": len(self.repair_ok),
            "repair_failed": [{"node": j, "helpers": list(I)}
                              for (j, I), ok in self.repair_ok.items() if not ok],
            "helper_failed": [[i, j] for (i, j), ok in self.helper_ok.items() if not ok],
        }


def _subsets(universe, size, sample, rng):
    combos = list(itertools.combinations(universe, size))
    if sample is not None and len(combos) > sample:
        combos = sorted(rng.sample(combos, sample))
    return combos


def verify(code: RegenCode, sample: int | None = None, seed: int = 0) -> VerificationReport:
    """Check the storage, access and repair axioms by rank computations.

    Every k-subset and every (j, d-subset) pair is checked unless ``sample``
    caps the number of subsets examined per family. Larger helper sets follow
    by monotonicity and are not enumerated.
    """
    P = code.params
    sys = to_variable_system(code)
    rng = random.Random(seed)
    nodes = range(1, P.N + 1)

    storage, exact = {}, {}
    for j in nodes:
        h = sys.H(Node(j))
        storage[j] = h <= P.alpha
        exact[j] = h == P.alpha
    helper = {(i, j): sys.H(Helper(i, j)) <= P.beta for i in nodes for j in nodes if i != j}
    access = {J: sys.H_cond(Whole(), [Node(t) for t in J]) == 0
              for J in _subsets(nodes, P.k, sample, rng)}
    repair = {}
    for j in nodes:
        others = [i for i in nodes if i != j]
        for I in _subsets(others, P.d, sample, rng):
            repair[(j, I)] = sys.H_cond(Node(j), [Helper(i, j) for i in I]) == 0
    return VerificationReport(storage, exact, access, repair, helper, sampled=sample is not None)


def B_of(code: RegenCode, subset) -> int:
    """Information content H(W_J) of the node set ``subset``."""
    subset = list(subset)
    if not subset:
        return 0
    bad = [s for s in subset if not 1 <= s <= code.N]
    if bad:
        raise ValueError(f"nodes out of range 1..{code.N}: {bad}")
    return rank(np.hstack([code.block(s) for s in subset]), code.params.q)


def to_json(code: RegenCode) -> str:
    P = code.params
    doc = {
        "format_version": FORMAT_VERSION,
        "q": P.q,
        "params": {"N": P.N, "k": P.k, "d": P.d, "alpha": P.alpha, "beta": P.beta},
        "B": code.B,
        "generator": code.generator.tolist(),
        "repair": [
            {"from": i, "to": j, "coeffs": code.repair[(i, j)].tolist()}
            for i in range(1, P.N + 1) for j in range(1, P.N + 1) if i != j
        ],
    }
    if code.name:
        doc["name"] = code.name
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> RegenCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CodeFormatError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise CodeFormatError("top level must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise CodeFormatError(f"unsupported format_version {doc.get('format_version')!r}")
    try:
        q = doc["q"]
        pd = doc["params"]
        B = doc["B"]
        gen = doc["generator"]
        rep = doc["repair"]
    except (KeyError, TypeError) as e:
        raise CodeFormatError(f"missing field {e}") from e
    try:
        check_prime(q)
    except ValueError as e:
        raise CodeFormatError(str(e)) from e
    try:
        params = CodeParams(pd["N"], pd["k"], pd["d"], pd["alpha"], pd["beta"], q)
    except (KeyError, TypeError, ValueError) as e:
        raise CodeFormatError(f"bad params: {e}") from e
    if not _int_grid(gen, q) or len(gen) != B:
        raise CodeFormatError(f"generator must be {B} rows of integers in [0, {q})")
    if any(len(row) != params.N * params.alpha for row in gen):
        raise CodeFormatError(f"generator rows must have N*alpha = {params.N * params.alpha} entries")
    repair = {}
    for entry in rep:
        try:
            key = (entry["from"], entry["to"])
            coeffs = entry["coeffs"]
        except (KeyError, TypeError) as e:
            raise CodeFormatError(f"bad repair entry: {e}") from e
        if key in repair:
            raise CodeFormatError(f"duplicate repair pair from={key[0]} to={key[1]}")
        if not _int_grid(coeffs, q):
            raise CodeFormatError(f"repair {key[0]}->{key[1]} coefficients must be integers in [0, {q})")
        repair[key] = np.array(coeffs, dtype=np.int64).reshape(len(coeffs), -1)
    return RegenCode(params, np.array(gen, dtype=np.int64).reshape(B, -1), repair, doc.get("name", ""))


def _int_grid(rows, q) -> bool:
    if not isinstance(rows, list):
        return False
    for row in rows:
        if not isinstance(row, list):
            return False
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < q:
                return False
    return True


def save(code: RegenCode, path) -> None:
    Path(path).write_text(to_json(code), encoding="utf-8")


def load(path) -> RegenCode:
    return from_json(Path(path).read_text(encoding="utf-8"))
