"""Entropy as subspace dimension.

For uniformly drawn vectors from subspaces, joint entropy is the dimension
of the sum, conditional entropy is a difference of such dimensions and
mutual information is the dimension of an intersection. All values here are
exact integers.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Union

from .linalg import Subspace, span_sum, zero_subspace


@dataclass(frozen=True)
class Node:
    j: int

    def __post_init__(self):
        if self.j < 1:
            raise ValueError(f"node index must be >= 1 (got {self.j})")

    @property
    def label(self) -> str:
        return f"W{self.j}"


@dataclass(frozen=True)
class Helper:
    """Repair data sent by node ``i`` to node ``j``."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ValueError(f"helper indices must be >= 1 (got {self.i}, {self.j})")
        if self.i == self.j:
            raise ValueError(f"helper S_{self.i}_{self.j} needs distinct nodes")

    @property
    def label(self) -> str:
        return f"S_{self.i}_{self.j}"


@dataclass(frozen=True)
class Virtual:
    u: int

    def __post_init__(self):
        if self.u < 1:
            raise ValueError(f"virtual index must be >= 1 (got {self.u})")

    @property
    def label(self) -> str:
        return f"V{self.u}"


@dataclass(frozen=True)
class Whole:
    @property
    def label(self) -> str:
        return "M"


VarName = Union[Node, Helper, Virtual, Whole]

_NAME_RE = re.compile(r"^(?:W(\d+)|S_(\d+)_(\d+)|V(\d+)|M)$")


def parse_var(text: str) -> VarName:
    """Parse ``W3``, ``S_1_2``, ``V1`` or ``M``."""
    m = _NAME_RE.match(text.strip())
    if m is None:
        raise ValueError(f"unrecognized variable name {text!r}")
    if m.group(1):
        return Node(int(m.group(1)))
    if m.group(2):
        return Helper(int(m.group(2)), int(m.group(3)))
    if m.group(4):
        return Virtual(int(m.group(4)))
    return Whole()


def parse_vars(text: str) -> frozenset:
    """Parse a comma- or space-separated list of variable names."""
    parts = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    return frozenset(parse_var(t) for t in parts)


Vars = Union[VarName, Iterable[VarName]]


def _as_set(vs: Vars) -> frozenset:
    if isinstance(vs, (Node, Helper, Virtual, Whole)):
        return frozenset((vs,))
    if isinstance(vs, str):
        return parse_vars(vs)
    return frozenset(parse_var(v) if isinstance(v, str) else v for v in vs)


class VariableSystem:
    """A named family of subspaces of a common ambient space GF(p)^ambient_dim.

    Joint entropies are memoized by the sorted tuple of variable labels; the
    cache only stores values that a fresh computation would return.
    """

    def __init__(self, p: int, ambient_dim: int, variables: Mapping[VarName, Subspace],
                 memo: bool = True):
        self.p = p
        self.ambient_dim = ambient_dim
        for name, s in variables.items():
            if s.ambient_dim != ambient_dim or s.p != p:
                raise ValueError(f"{name.label} does not live in GF({p})^{ambient_dim}")
        self.variables = dict(variables)
        self._memo: dict[tuple[str, ...], int] | None = {} if memo else None

    def __contains__(self, name) -> bool:
        return name in self.variables

    def extended(self, extra: Mapping[VarName, Subspace]) -> VariableSystem:
        """A new system with ``extra`` variables added (existing names may not change)."""
        clash = [n.label for n in extra if n in self.variables and self.variables[n] != extra[n]]
        if clash:
            raise ValueError(f"variables already defined differently: {clash}")
        return VariableSystem(self.p, self.ambient_dim, {**self.variables, **extra},
                              memo=self._memo is not None)

    def span(self, vs: Vars) -> Subspace:
        names = _as_set(vs)
        missing = [n for n in names if n not in self.variables]
        if missing:
            raise KeyError(f"unknown variable(s): {sorted(n.label for n in missing)}")
        if not names:
            return zero_subspace(self.ambient_dim, self.p)
        return span_sum(*(self.variables[n] for n in names))

    def H(self, vs: Vars = ()) -> int:
        names = _as_set(vs)
        if self._memo is None:
            return self.span(names).dim
        key = tuple(sorted(n.label for n in names))
        value = self._memo.get(key)
        if value is None:
            value = self.span(names).dim
            self._memo[key] = value
        return value

    def H_cond(self, a: Vars, b: Vars = ()) -> int:
        a, b = _as_set(a), _as_set(b)
        return self.H(a | b) - self.H(b)

    def mutual(self, a: Vars, b: Vars, given: Vars = ()) -> int:
        """I(a; b | given)."""
        a, b, c = _as_set(a), _as_set(b), _as_set(given)
        return self.H(a | c) + self.H(b | c) - self.H(a | b | c) - self.H(c)


@dataclass(frozen=True)
class ExchangeReport:
    j: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def lemma1_check(sys: VariableSystem, xs: list, j: int) -> ExchangeReport:
    """Evaluate both sides of the chain-rule exchange identity at position ``j``.

    ``xs`` is the ordered sequence X_1..X_n; each entry is a variable name or
    a set of names (treated as one joint variable). Both sides are reported;
    they agree for every input.
    """
    n = len(xs)
    if not 1 <= j <= n:
        raise ValueError(f"j must satisfy 1 <= j <= {n} (got {j})")
    X = [_as_set(x) for x in xs]

    def joint(idx) -> frozenset:
        out = frozenset()
        for t in idx:
            out |= X[t - 1]
        return out

    def after(i: int, skip: int | None = None) -> frozenset:
        return joint(t for t in range(i + 1, n + 1) if t != skip)

    lhs = sys.H_cond(X[j - 1], after(j))
    lhs += sum(sys.H_cond(X[i - 1], after(i)) for i in range(1, j))
    rhs = sum(sys.H_cond(X[i - 1], after(i, skip=j)) for i in range(1, j))
    rhs += sys.H_cond(X[j - 1], joint(t for t in range(1, n + 1) if t != j))
    return ExchangeReport(j, lhs, rhs)


def chain_sequence(j: int, n: int, v: int = 0) -> list[VarName]:
    """X_i = S_{i->j} for i < j, W_i for j <= i <= n, then virtual nodes V1..Vv."""
    if not 1 <= j <= n:
        raise ValueError(f"j must satisfy 1 <= j <= n={n} (got {j})")
    seq: list[VarName] = [Helper(i, j) for i in range(1, j)]
    seq += [Node(i) for i in range(j, n + 1)]
    seq += [Virtual(u) for u in range(1, v + 1)]
    return seq
