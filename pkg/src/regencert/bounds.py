"""Closed-form outer bounds on the file size, evaluated as exact rationals.

``params`` arguments only need ``d``, ``alpha`` and ``beta`` attributes
(a :class:`~regencert.model.CodeParams` works).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb

FR = "FR"
THM3 = "Thm3"
PK15 = "PK15"


@dataclass(frozen=True)
class BoundEntry:
    n: int
    ell: int
    v: int
    value: Fraction
    source: str


@dataclass
class BoundReport:
    entries: list[BoundEntry]
    min_value: Fraction = field(init=False)
    argmin: list[BoundEntry] = field(init=False)
    stationary_v: dict[tuple[int, int], float | None] = field(default_factory=dict)

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty bound report")
        self.min_value = min(e.value for e in self.entries)
        self.argmin = [e for e in self.entries if e.value == self.min_value]


def _check(params, n: int, ell: int) -> None:
    if not 0 <= ell <= n:
        raise ValueError(f"need 0 <= ell <= n (got ell={ell}, n={n})")
    if n > params.d + 1:
        raise ValueError(f"need n <= d+1 (got n={n}, d={params.d})")


def fr_bound(params, n: int, ell: int) -> Fraction:
    """B_ell(n) = (n-ell) alpha + C(ell,2) beta + ell (d+1-n) beta."""
    _check(params, n, ell)
    a, b = Fraction(params.alpha), Fraction(params.beta)
    return (n - ell) * a + comb(ell, 2) * b + ell * (params.d + 1 - n) * b


def fr_bound_min(params, n: int) -> BoundReport:
    return BoundReport([BoundEntry(n, ell, 0, fr_bound(params, n, ell), FR) for ell in range(n + 1)])


def theorem3_bound(params, n: int, ell: int, v: int) -> Fraction:
    """[(v+1) B_ell(n) + C(v+1,2) n alpha - v C(ell,2) beta] / C(v+2,2), valid for linear codes."""
    if v < 0:
        raise ValueError(f"v must be >= 0 (got {v})")
    base = fr_bound(params, n, ell)
    num = ((v + 1) * base + comb(v + 1, 2) * n * Fraction(params.alpha)
           - v * comb(ell, 2) * Fraction(params.beta))
    return num / comb(v + 2, 2)


def pk15_bound(n: int, alpha, beta, v: int) -> Fraction:
    """[C(v+1,2) n alpha + C(n,2) beta] / C(v+2,2), for n = k+1 = d+1."""
    if v < 0:
        raise ValueError(f"v must be >= 0 (got {v})")
    return (comb(v + 1, 2) * n * Fraction(alpha) + comb(n, 2) * Fraction(beta)) / comb(v + 2, 2)


def stationary_v(params, n: int, ell: int) -> float | None:
    """Real v >= 0 where theorem3_bound(ell, v) is stationary, if any.

    With t = v+1 the bound is (b t^2 + e t + 2c) / (t^2 + t) for
    a = B_ell(n), b = n alpha, c = C(ell,2) beta, e = 2a - b - 2c; the
    derivative vanishes where (b - e) t^2 - 4c t - 2c = 0.
    """
    a = fr_bound(params, n, ell)
    b = n * Fraction(params.alpha)
    c = comb(ell, 2) * Fraction(params.beta)
    e = 2 * a - b - 2 * c
    A = b - e
    if c == 0 or A == 0:
        return None
    disc = 16 * c * c + 8 * A * c
    if disc < 0:
        return None
    roots = [(4 * c + s * math.sqrt(disc)) / (2 * A) for s in (1, -1)]
    vs = [float(t) - 1 for t in roots if t - 1 >= 0]
    return min(vs) if vs else None


def best_linear_bound(params, n: int, v_max: int = 8) -> BoundReport:
    """Minimum of the linear-code bound over 0 <= ell <= n and 0 <= v <= v_max.

    v = 0 rows are the FR bound. PK15 rows are added when n = k+1 = d+1 and
    ``params`` carries ``k``.
    """
    if v_max < 0:
        raise ValueError(f"v_max must be >= 0 (got {v_max})")
    entries = [BoundEntry(n, ell, 0, fr_bound(params, n, ell), FR) for ell in range(n + 1)]
    entries += [BoundEntry(n, ell, v, theorem3_bound(params, n, ell, v), THM3)
                for v in range(1, v_max + 1) for ell in range(n + 1)]
    if getattr(params, "k", None) is not None and n == params.k + 1 == params.d + 1:
        entries += [BoundEntry(n, n, v, pk15_bound(n, params.alpha, params.beta, v), PK15)
                    for v in range(v_max + 1)]
    report = BoundReport(entries)
    report.stationary_v = {(n, ell): stationary_v(params, n, ell) for ell in range(n + 1)}
    return report


def bound_table(params, ns=None, v_max: int = 8) -> BoundReport:
    """best_linear_bound merged over several shortened lengths.

    Each B(n) with n >= k equals B, so by default every n in k..min(N, d+1)
    contributes a valid bound on the file size.
    """
    if ns is None:
        ns = range(params.k, min(params.N, params.d + 1) + 1)
    entries, stationary = [], {}
    for n in ns:
        rep = best_linear_bound(params, n, v_max)
        entries += rep.entries
        stationary.update(rep.stationary_v)
    report = BoundReport(entries)
    report.stationary_v = stationary
    return report


@dataclass(frozen=True)
class _Section4Params:
    k: int
    d: int
    alpha: int
    beta: int


@dataclass
class Section4Row:
    p: int
    fr_min: Fraction
    fr_argmin: list[int]
    fr_closed_form: Fraction
    thm3_value: Fraction
    improvement: Fraction
    improvement_closed_form: Fraction
    claimed_improvement: Fraction
    matches_claim: bool
    best_linear: Fraction
    best_linear_at: list[tuple[int, int]]
    d14_reference: str
    d14_reference_value: Fraction


def section4_table(p: int, v_max: int = 8) -> Section4Row:
    """The (k=2p, d=3p, alpha=2p, beta=1) family at n = k.

    Reports the FR minimum, the linear-code bound at ell = n, v = 1, the
    exact improvement (p^2 - 3p)/6 and the p^2/6 figure quoted alongside.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1 (got {p})")
    P = _Section4Params(k=2 * p, d=3 * p, alpha=2 * p, beta=1)
    n = P.k
    fr = fr_bound_min(P, n)
    t3 = theorem3_bound(P, n, n, 1)
    improvement = fr.min_value - t3
    claimed = Fraction(p * p, 6)
    best = best_linear_bound(P, n, v_max)
    return Section4Row(
        p=p,
        fr_min=fr.min_value,
        fr_argmin=[e.ell for e in fr.argmin],
        fr_closed_form=Fraction(7 * p * p + p, 2),
        thm3_value=t3,
        improvement=improvement,
        improvement_closed_form=Fraction(p * p - 3 * p, 6),
        claimed_improvement=claimed,
        matches_claim=improvement == claimed,
        best_linear=best.min_value,
        best_linear_at=[(e.ell, e.v) for e in best.argmin],
        d14_reference="(p^2-1)/16",
        d14_reference_value=Fraction(p * p - 1, 16),
    )


def tradeoff(params, betas, n: int | None = None, v_max: int = 8) -> list[tuple[Fraction, Fraction, Fraction]]:
    """(beta, FR minimum, best linear bound) for each beta.

    Without ``n`` both columns are minimized over n in k..min(N, d+1).
    """
    ns = range(params.k, min(params.N, params.d + 1) + 1) if n is None else [n]
    rows = []
    for b in betas:
        P = replace(params, beta=Fraction(b))
        fr = min(fr_bound_min(P, m).min_value for m in ns)
        rows.append((Fraction(b), fr, bound_table(P, ns, v_max).min_value))
    return rows
