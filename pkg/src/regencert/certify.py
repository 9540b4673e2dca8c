"""Certificates for the chain-rule outer bounds, evaluated on a concrete code.

Every quantity is an exact subspace dimension. An ordering fixes which
nodes form the shortened subcode: the last ``n`` entries of the permutation,
relabeled 1..n in that order. Helper data S_{i->j} is only used for i < j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .bounds import fr_bound, theorem3_bound
from .entropy import Helper, Node, VariableSystem, Virtual
from .linalg import Subspace, intersect, span_sum, zero_subspace
from .model import RegenCode, to_variable_system


class CertificationError(Exception):
    """An inequality that must hold evaluated with negative slack."""

    def __init__(self, message: str, certificate: Certificate):
        super().__init__(message)
        self.certificate = certificate


class HypothesisError(ValueError):
    """The virtual nodes supplied do not satisfy the required condition."""

    def __init__(self, message: str, report: ConditionReport):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Ordering:
    perm: tuple[int, ...]
    n: int
    ell: int

    def __post_init__(self):
        N = len(self.perm)
        if sorted(self.perm) != list(range(1, N + 1)):
            raise ValueError(f"not a permutation of 1..{N}: {self.perm}")
        if not 0 <= self.ell <= self.n <= N:
            raise ValueError(f"need 0 <= ell <= n <= N (got ell={self.ell}, n={self.n}, N={N})")

    @classmethod
    def identity(cls, N: int, n: int, ell: int) -> Ordering:
        return cls(tuple(range(1, N + 1)), n, ell)

    @property
    def nodes(self) -> tuple[int, ...]:
        """Original node numbers of local nodes 1..n."""
        return self.perm[len(self.perm) - self.n:]

    def to_dict(self) -> dict:
        return {"perm": list(self.perm), "n": self.n, "ell": self.ell, "nodes": list(self.nodes)}


@dataclass
class Step:
    description: str
    lhs: int | Fraction
    rhs: int | Fraction
    relation: str = "<="

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack == 0 if self.relation == "=" else self.slack >= 0


@dataclass
class Certificate:
    theorem: str
    code: str
    ordering: Ordering
    v: int
    lhs: int | Fraction
    rhs: int | Fraction
    steps: list[Step]
    terms: dict = field(default_factory=dict)
    virtual_dims: list[int] = field(default_factory=list)

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= 0 and all(s.holds for s in self.steps)


def _system(code: RegenCode, ordering: Ordering) -> VariableSystem:
    if len(ordering.perm) != code.N:
        raise ValueError(f"ordering has {len(ordering.perm)} nodes, code has {code.N}")
    return to_variable_system(code, ordering.nodes)


def _W(a: int, b: int) -> list:
    return [Node(t) for t in range(a, b + 1)]


def _V(a: int, b: int) -> list:
    return [Virtual(u) for u in range(a, b + 1)]


def _S_into(j: int, helpers) -> list:
    return [Helper(i, j) for i in helpers if i != j]


def _need_repair_range(code: RegenCode, ordering: Ordering) -> None:
    if ordering.n > code.params.d + 1:
        raise ValueError(f"need n <= d+1 (got n={ordering.n}, d={code.params.d})")


def _finish(cert: Certificate) -> Certificate:
    if not cert.holds:
        bad = [s.description for s in cert.steps if not s.holds]
        raise CertificationError(f"{cert.theorem} violated on {cert.code}: {bad}", cert)
    return cert


def delta(code: RegenCode, ordering: Ordering, sys: VariableSystem | None = None):
    """Sum over 1 <= i < j <= ell of H(S_{i->j} | W_[i+1,n]), with per-pair terms."""
    sys = _system(code, ordering) if sys is None else sys
    n, ell = ordering.n, ordering.ell
    parts = {(i, j): sys.H_cond(Helper(i, j), _W(i + 1, n))
             for j in range(1, ell + 1) for i in range(1, j)}
    return sum(parts.values()), parts


def theorem1_certify(code: RegenCode, ordering: Ordering) -> Certificate:
    """B(n) + Delta <= middle expression <= B_ell(n), plus the per-node steps behind it."""
    _need_repair_range(code, ordering)
    sys = _system(code, ordering)
    n, ell = ordering.n, ordering.ell
    Bn = sys.H(_W(1, n))
    dl, parts = delta(code, ordering, sys)
    tail = sys.H(_W(ell + 1, n))
    helpers = sum(sys.H(Helper(i, j)) for j in range(1, ell + 1) for i in range(1, j))
    residual = {j: sys.H_cond(Node(j), _S_into(j, range(1, n + 1))) for j in range(1, ell + 1)}
    middle = tail + helpers + sum(residual.values())
    outer = fr_bound(code.params, n, ell)
    P = code.params
    steps = []
    for j in range(1, ell + 1):
        left = sys.H_cond(Node(j), _W(j + 1, n)) + sum(parts[(i, j)] for i in range(1, j))
        right = sum(sys.H(Helper(i, j)) for i in range(1, j)) + residual[j]
        steps.append(Step(f"node {j}: H(W{j}|W[{j + 1},{n}]) + sum_i<{j} H(S_i_{j}|W[i+1,{n}])"
                          f" <= sum_i<{j} H(S_i_{j}) + H(W{j}|S_[1,{n}]\\{j}->{j})", left, right))
    steps += [
        Step("B(n) + Delta <= H(W[ell+1,n]) + sum H(S_i_j) + sum H(W_j|S_[1,n]\\j->j)", Bn + dl, middle),
        Step("H(W[ell+1,n]) <= (n-ell) alpha", tail, (n - ell) * Fraction(P.alpha)),
        Step("sum_{i<j<=ell} H(S_i_j) <= C(ell,2) beta", helpers, comb(ell, 2) * Fraction(P.beta)),
        Step("sum_{j<=ell} H(W_j|S_[1,n]\\j->j) <= ell (d+1-n) beta", sum(residual.values()),
             ell * (P.d + 1 - n) * Fraction(P.beta)),
        Step("middle <= B_ell(n)", middle, outer),
    ]
    terms = {"B(n)": Bn, "Delta": dl, "H(W[ell+1,n])": tail, "sum H(S_i_j)": helpers,
             "sum H(W_j|S)": sum(residual.values()), "middle": middle, "B_ell(n)": outer,
             "Delta_terms": {f"S_{i}_{j}": t for (i, j), t in parts.items()}}
    return _finish(Certificate("theorem1", code.name, ordering, 0, Bn + dl, outer, steps, terms))


@dataclass
class GapTerms:
    j: int
    c1: dict[int, int]
    c2: dict[int, int]
    c3: int
    identities_hold: bool


def gap_terms(code: RegenCode, ordering: Ordering, j: int, sys: VariableSystem | None = None) -> GapTerms:
    """The three nonnegative gaps lost when the chain-rule identity becomes an inequality.

    C1[i] = I(S_{i->j}; W_[i+1,j-1] | S_{[i+1,j-1]->j} W_[j,n])
    C2[i] = I(S_{i->j}; S_{[i+1,j-1]->j} W_[j+1,n])
    C3    = I(W_j; W_[j+1,n] | S_{[1,n]\\j->j})
    """
    if not 1 <= j <= ordering.ell:
        raise ValueError(f"need 1 <= j <= ell={ordering.ell} (got {j})")
    sys = _system(code, ordering) if sys is None else sys
    n = ordering.n
    c1, c2 = {}, {}
    ok = True
    for i in range(1, j):
        S = Helper(i, j)
        mid_helpers = _S_into(j, range(i + 1, j))
        c1[i] = sys.mutual(S, _W(i + 1, j - 1), mid_helpers + _W(j, n))
        c2[i] = sys.mutual(S, mid_helpers + _W(j + 1, n))
        ok &= sys.H_cond(S, mid_helpers + _W(j, n)) == sys.H_cond(S, _W(i + 1, n)) + c1[i]
        ok &= sys.H_cond(S, mid_helpers + _W(j + 1, n)) == sys.H(S) - c2[i]
    all_helpers = _S_into(j, range(1, n + 1))
    c3 = sys.mutual(Node(j), _W(j + 1, n), all_helpers)
    ok &= (sys.H_cond(Node(j), _S_into(j, range(1, j)) + _W(j + 1, n))
           == sys.H_cond(Node(j), all_helpers) - c3)
    return GapTerms(j, c1, c2, c3, bool(ok))


def build_virtual_nodes(code: RegenCode, ordering: Ordering, v: int) -> list[Subspace]:
    """W_{n+u} = < W_i  intersect  W_[i+1,n+u-1] : i <= ell > for u = 1..v."""
    if v < 0:
        raise ValueError(f"v must be >= 0 (got {v})")
    sys = _system(code, ordering)
    n, ell = ordering.n, ordering.ell
    out: list[Subspace] = []
    zero = zero_subspace(sys.ambient_dim, sys.p)
    for _ in range(v):
        parts = [zero]
        for i in range(1, ell + 1):
            later = [sys.variables[x] for x in _W(i + 1, n)] + out
            if later:
                parts.append(intersect(sys.variables[Node(i)], span_sum(*later)))
        out.append(span_sum(*parts))
    return out


def _with_virtuals(code, ordering, virtuals) -> VariableSystem:
    sys = _system(code, ordering)
    return sys.extended({Virtual(u): s for u, s in enumerate(virtuals, 1)})


@dataclass
class ConditionReport:
    checks: list[tuple[int, int, int, int, int]]  # (i, j, u, lhs, rhs)

    @property
    def passed(self) -> bool:
        return all(lhs <= rhs for *_, lhs, rhs in self.checks)

    def failures(self):
        return [c for c in self.checks if c[3] > c[4]]


def check_condition_W(code: RegenCode, ordering: Ordering, virtuals) -> ConditionReport:
    """H(S_{i->j} | W_{n+u}) <= H(S_{i->j} | W_[i+1,n+u-1]) for 1 <= i < j <= ell, all u."""
    sys = _with_virtuals(code, ordering, virtuals)
    n, ell = ordering.n, ordering.ell
    checks = []
    for u in range(1, len(virtuals) + 1):
        for j in range(1, ell + 1):
            for i in range(1, j):
                S = Helper(i, j)
                checks.append((i, j, u, sys.H_cond(S, Virtual(u)),
                               sys.H_cond(S, _W(i + 1, n) + _V(1, u - 1))))
    return ConditionReport(checks)


@dataclass
class VirtualDimRow:
    u: int
    dim: int
    chain_bound: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.dim <= self.chain_bound <= self.bound


def lemma3_check(code: RegenCode, ordering: Ordering, virtuals) -> list[VirtualDimRow]:
    """H(W_{n+u}) <= u (sum_{i<=ell} H(W_i) + H(W_[ell+1,n]) - B(n)) <= u min(ell alpha, n alpha - B(n))."""
    sys = _with_virtuals(code, ordering, virtuals)
    n, ell = ordering.n, ordering.ell
    a = code.params.alpha
    Bn = sys.H(_W(1, n))
    per = sum(sys.H(Node(i)) for i in range(1, ell + 1)) + sys.H(_W(ell + 1, n)) - Bn
    cap = min(ell * a, n * a - Bn)
    rows = [VirtualDimRow(u, sys.H(Virtual(u)), u * per, u * cap) for u in range(1, len(virtuals) + 1)]
    bad = [r.u for r in rows if not r.holds]
    if bad:
        raise AssertionError(f"virtual-node dimension bound violated for u in {bad} on {code.name}")
    return rows


def _resolve_virtuals(code, ordering, v, virtuals):
    if virtuals is None:
        virtuals = build_virtual_nodes(code, ordering, v)
    elif len(virtuals) != v:
        raise ValueError(f"expected {v} virtual nodes, got {len(virtuals)}")
    cond = check_condition_W(code, ordering, virtuals)
    if not cond.passed:
        raise HypothesisError(
            f"virtual nodes fail the helper-conditioning condition at (i, j, u) = "
            f"{[c[:3] for c in cond.failures()]}", cond)
    return virtuals


def theorem2_certify(code: RegenCode, ordering: Ordering, v: int, virtuals=None) -> Certificate:
    """(1+v) B(n) <= the implicit bound with v virtual nodes.

    When ``virtuals`` is None the intersection-span construction is used.
    Supplied virtual nodes are checked against the hypothesis first; a
    failure raises :class:`HypothesisError` instead of certifying.
    """
    virtuals = _resolve_virtuals(code, ordering, v, virtuals)
    sys = _with_virtuals(code, ordering, virtuals)
    n, ell = ordering.n, ordering.ell
    Bn = sys.H(_W(1, n))
    tail = sys.H(_W(ell + 1, n))
    helpers = sum(sys.H(Helper(i, j)) for j in range(1, ell + 1) for i in range(1, j))
    into = {j: _S_into(j, range(1, n + 1)) for j in range(1, ell + 1)}
    residual = sum(sys.H_cond(Node(j), into[j]) for j in range(1, ell + 1))
    brackets = []
    for u in range(1, v + 1):
        extra = sys.H_cond(Virtual(u), _W(ell + 1, n))
        res_u = sum(sys.H_cond(Node(j), into[j] + [Virtual(u)]) for j in range(1, ell + 1))
        brackets.append({"u": u, "H(W[ell+1,n])": tail, "H(W_n+u|W[ell+1,n])": extra,
                         "sum H(W_j|S,W_n+u)": res_u, "total": tail + extra + res_u})
    rhs = tail + helpers + residual + sum(b["total"] for b in brackets)
    steps = []
    for j in range(1, ell + 1):
        left = sum(sys.H_cond(Node(j), _W(j + 1, n) + _V(1, u)) for u in range(v + 1))
        left += sum(sys.H_cond(Helper(i, j), _W(i + 1, n) + _V(1, v)) for i in range(1, j))
        right = sum(sys.H(Helper(i, j)) for i in range(1, j))
        right += sum(sys.H_cond(Node(j), into[j] + _V(u, u) if u else into[j]) for u in range(v + 1))
        steps.append(Step(f"node {j}: sum_u H(W{j}|W[{j + 1},n+u]) + sum_i H(S_i_{j}|W[i+1,n+v])"
                          f" <= sum_i H(S_i_{j}) + sum_u H(W{j}|S->{j},W_n+u)", left, right))
    steps.append(Step("(1+v) B(n) <= implicit right-hand side", (1 + v) * Bn, rhs))
    terms = {"B(n)": Bn, "H(W[ell+1,n])": tail, "sum H(S_i_j)": helpers,
             "sum H(W_j|S)": residual, "virtual_brackets": brackets}
    cert = Certificate("theorem2", code.name, ordering, v, (1 + v) * Bn, rhs, steps, terms,
                       [s.dim for s in virtuals])
    return _finish(cert)


def corollary2_certify(code: RegenCode, ordering: Ordering, v: int, virtuals=None) -> Certificate:
    """(v+1) B(n) <= (v+1) B_ell(n) + sum_u (H(W_{n+u}) - C(ell,2) beta), and the conditional variant."""
    _need_repair_range(code, ordering)
    virtuals = _resolve_virtuals(code, ordering, v, virtuals)
    sys = _with_virtuals(code, ordering, virtuals)
    n, ell = ordering.n, ordering.ell
    P = code.params
    Bn = sys.H(_W(1, n))
    B_tail = sys.H(_W(ell + 1, n))
    fr = fr_bound(P, n, ell)
    extra = sum(sys.H(Virtual(u)) - comb(ell, 2) * Fraction(P.beta) for u in range(1, v + 1))
    rhs = (v + 1) * fr + extra
    rem_lhs = (v + 1) * (Bn - B_tail)
    rem_rhs = (v + 1) * (fr - (n - ell) * Fraction(P.alpha)) + extra
    steps = [
        Step("(v+1)(B(n) - B(n-ell)) <= (v+1)(B_ell(n) - (n-ell) alpha) + sum_u (H(W_n+u) - C(ell,2) beta)",
             rem_lhs, rem_rhs),
        Step("B(n-ell) <= (n-ell) alpha", B_tail, (n - ell) * Fraction(P.alpha)),
        Step("(v+1) B(n) <= (v+1) B_ell(n) + sum_u (H(W_n+u) - C(ell,2) beta)", (v + 1) * Bn, rhs),
    ]
    terms = {"B(n)": Bn, "B(n-ell)": B_tail, "B_ell(n)": fr, "virtual_sum": extra,
             "remark_lhs": rem_lhs, "remark_rhs": rem_rhs}
    cert = Certificate("corollary2", code.name, ordering, v, (v + 1) * Bn, rhs, steps, terms,
                       [s.dim for s in virtuals])
    return _finish(cert)


def theorem3_certify(code: RegenCode, ordering: Ordering, v: int) -> Certificate:
    """C(v+2,2) B(n) <= (v+1) B_ell(n) + C(v+1,2) n alpha - v C(ell,2) beta, via the virtual-node route."""
    _need_repair_range(code, ordering)
    cor = corollary2_certify(code, ordering, v)
    rows = lemma3_check(code, ordering, build_virtual_nodes(code, ordering, v))
    n, ell = ordering.n, ordering.ell
    Bn = cor.terms["B(n)"]
    scale = comb(v + 2, 2)
    rhs = scale * theorem3_bound(code.params, n, ell, v)
    steps = cor.steps + [
        Step(f"H(W_n+{r.u}) <= {r.u} (n alpha - B(n))", r.dim,
             r.u * (n * code.params.alpha - Bn)) for r in rows
    ] + [Step("C(v+2,2) B(n) <= (v+1) B_ell(n) + C(v+1,2) n alpha - v C(ell,2) beta", scale * Bn, rhs)]
    cert = Certificate("theorem3", code.name, ordering, v, scale * Bn, rhs, steps,
                       {"B(n)": Bn, "bound": rhs / scale}, cor.virtual_dims)
    return _finish(cert)


def search_orderings(code: RegenCode, n: int, ell: int, max_nodes: int = 8) -> dict:
    """Exhaust all choices and orders of the last n nodes.

    Returns the ordering with the largest Delta and the one whose
    outer-bound certificate has the smallest slack.
    """
    N = code.N
    if N > max_nodes:
        raise ValueError(f"ordering search limited to N <= {max_nodes} (got {N})")
    worst_delta = tightest = None
    for tail in itertools.permutations(range(1, N + 1), n):
        rest = tuple(s for s in range(1, N + 1) if s not in tail)
        o = Ordering(rest + tail, n, ell)
        cert = theorem1_certify(code, o)
        dl = cert.terms["Delta"]
        if worst_delta is None or dl > worst_delta[1]:
            worst_delta = (o, dl)
        if tightest is None or cert.slack < tightest[1]:
            tightest = (o, cert.slack)
    return {"max_delta": worst_delta, "min_slack": tightest}
