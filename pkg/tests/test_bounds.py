from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regencert.bounds import (FR, PK15, THM3, best_linear_bound, bound_table, fr_bound, fr_bound_min,
                              pk15_bound, section4_table, stationary_v, theorem3_bound, tradeoff)
from regencert.model import CodeParams


def fr_oracle(n, d, alpha, beta, ell):
    """Cut-set sum: n-ell full nodes, then the i-th repaired node adds (d - n + i) beta."""
    return (n - ell) * Fraction(alpha) + sum((d - n + i) * Fraction(beta) for i in range(1, ell + 1))


def thm3_oracle(n, d, alpha, beta, ell, v):
    """Largest B with (v+1) B <= (v+1) B_ell + sum_u (u (n alpha - B) - C(ell,2) beta), solved by hand."""
    fr = fr_oracle(n, d, alpha, beta, ell)
    const = (v + 1) * fr + sum(u * n * Fraction(alpha) - comb(ell, 2) * Fraction(beta)
                               for u in range(1, v + 1))
    coeff = (v + 1) + sum(range(1, v + 1))
    return const / coeff


@st.composite
def params_and_n(draw):
    N = draw(st.integers(2, 8))
    k = draw(st.integers(1, N - 1))
    d = draw(st.integers(k, N - 1))
    P = CodeParams(N, k, d, draw(st.integers(1, 6)), draw(st.integers(1, 6)))
    n = draw(st.integers(1, min(N, d + 1)))
    return P, n


def test_fr_examples():
    P = CodeParams(4, 3, 3, 2, 1)
    assert fr_bound_min(P, 4).min_value == 5
    assert [fr_bound(P, 4, ell) for ell in range(5)] == [8, 6, 5, 5, 6]
    P2 = CodeParams(7, 4, 6, 4, 1)
    table = [fr_bound(P2, 4, ell) for ell in range(5)]
    assert table == [16, 15, 15, 16, 18]
    rep = fr_bound_min(P2, 4)
    assert rep.min_value == 15 and {e.ell for e in rep.argmin} == {1, 2}


def test_fr_range_errors():
    P = CodeParams(4, 3, 3, 2, 1)
    with pytest.raises(ValueError):
        fr_bound(P, 5, 1)
    with pytest.raises(ValueError):
        fr_bound(P, 3, 4)
    with pytest.raises(ValueError):
        theorem3_bound(P, 4, 4, -1)


def test_theorem3_examples():
    assert theorem3_bound(CodeParams(4, 3, 3, 3, 2), 4, 4, 1) == 8
    assert theorem3_bound(CodeParams(4, 3, 3, 2, 1), 4, 4, 1) == Fraction(14, 3)
    assert pk15_bound(4, 2, 1, 1) == Fraction(14, 3)


def test_best_linear_example():
    rep = best_linear_bound(CodeParams(4, 3, 3, 2, 1), 4, v_max=2)
    assert rep.min_value == Fraction(14, 3)
    assert {(e.ell, e.v, e.source) for e in rep.argmin} == {(4, 1, THM3), (4, 1, PK15)}


def test_bound_table_covers_all_lengths():
    rep = bound_table(CodeParams(4, 3, 3, 2, 1), v_max=1)
    assert {e.n for e in rep.entries} == {3, 4}
    assert {e.source for e in rep.entries} == {FR, THM3, PK15}


@given(params_and_n())
@settings(max_examples=200, deadline=None)
def test_fr_matches_oracle(pn):
    P, n = pn
    for ell in range(n + 1):
        assert fr_bound(P, n, ell) == fr_oracle(n, P.d, P.alpha, P.beta, ell)


@given(params_and_n(), st.integers(0, 5))
@settings(max_examples=200, deadline=None)
def test_theorem3_matches_oracle_and_reduces_to_fr(pn, v):
    P, n = pn
    for ell in range(n + 1):
        assert theorem3_bound(P, n, ell, v) == thm3_oracle(n, P.d, P.alpha, P.beta, ell, v)
        assert theorem3_bound(P, n, ell, 0) == fr_bound(P, n, ell)


@given(st.integers(3, 6), st.integers(0, 4), st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=200, deadline=None)
def test_pk15_agrees_with_theorem3_at_full_ell(n, v, a, b):
    P = CodeParams(n, n - 1, n - 1, a, b)
    assert pk15_bound(n, a, b, v) == theorem3_bound(P, n, n, v)


@given(params_and_n(), st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_best_linear_monotone_in_vmax(pn, v):
    P, n = pn
    a = best_linear_bound(P, n, v).min_value
    b = best_linear_bound(P, n, v + 1).min_value
    assert b <= a <= fr_bound_min(P, n).min_value


@given(params_and_n())
@settings(max_examples=100, deadline=None)
def test_stationary_point_is_critical(pn):
    P, n = pn
    for ell in range(n + 1):
        v = stationary_v(P, n, ell)
        if v is None:
            continue
        a = float(fr_bound(P, n, ell))
        b, c = n * float(P.alpha), comb(ell, 2) * float(P.beta)

        def g(t):
            return (b * t * t + (2 * a - b - 2 * c) * t + 2 * c) / (t * t + t)

        t, h = v + 1, 1e-6
        assert v >= 0
        assert abs(g(t + h) - g(t - h)) / (2 * h) < 1e-5 * max(1.0, abs(g(t)))


@pytest.mark.parametrize("p", [1, 2, 3, 4, 6])
def test_section4_closed_forms(p):
    row = section4_table(p, v_max=4)
    assert row.fr_min == Fraction(7 * p * p + p, 2) == row.fr_closed_form
    assert p in row.fr_argmin
    assert row.thm3_value == Fraction(10 * p * p + 3 * p, 3)
    assert row.improvement == Fraction(p * p - 3 * p, 6) == row.improvement_closed_form
    assert row.claimed_improvement == Fraction(p * p, 6)
    assert row.matches_claim is False
    assert row.best_linear <= min(row.fr_min, row.thm3_value)


def test_section4_p4():
    row = section4_table(4)
    assert (row.fr_min, row.thm3_value, row.improvement) == (58, Fraction(172, 3), Fraction(2, 3))
    assert row.claimed_improvement == Fraction(8, 3)


def test_tradeoff_rows():
    P = CodeParams(4, 3, 3, 6, 2)
    rows = tradeoff(P, [Fraction(2), Fraction(3), Fraction(4)])
    assert rows == [(2, 12, 12), (3, 15, 14), (4, 16, 16)]
    for beta, fr, lin in rows:
        assert lin <= fr
