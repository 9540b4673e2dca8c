from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regencert.constructions import (ConstructionSpec, layered, mds_msr, next_prime, random_subspace_system, rbt_mbr,
                                     replication, scrambled, vandermonde)
from regencert.entropy import Helper, Node
from regencert.model import to_variable_system, verify

from oracles import naive_rank


def _declared(code):
    P = code.params
    return (P.N, P.k, P.d, P.alpha, P.beta, code.B)


def test_declared_parameters():
    assert _declared(layered(4, 3, 2)) == (4, 3, 3, 3, 2, 8)
    assert _declared(rbt_mbr(5, 3, 11)) == (5, 3, 4, 4, 1, 9)
    assert _declared(mds_msr(6, 3, 3, 7)) == (6, 3, 3, 1, 1, 3)
    assert _declared(replication(3)) == (3, 1, 2, 1, 1, 1)


@pytest.mark.parametrize("n,w", [(3, 2), (3, 3), (4, 2), (4, 3), (4, 4), (5, 3)])
def test_layered_family(n, w):
    code = layered(n, w)
    assert _declared(code) == (n, n - 1, n - 1, comb(n - 1, w - 1), comb(n - 2, w - 2),
                               (w - 1) * comb(n, w))
    rep = verify(code)
    assert rep.passed and all(rep.exact_alpha.values())


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 4)])
def test_rbt_mbr_family(n, k):
    code = rbt_mbr(n, k)
    d = n - 1
    assert code.B == k * d - comb(k, 2)
    rep = verify(code)
    assert rep.passed and all(rep.exact_alpha.values())
    s = to_variable_system(code)
    assert all(s.H(Helper(i, j)) == 1 for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


@pytest.mark.parametrize("n,k,d", [(4, 2, 2), (4, 2, 3), (5, 3, 4), (6, 3, 3)])
def test_mds_msr_family(n, k, d):
    code = mds_msr(n, k, d)
    assert code.B == k
    assert verify(code).passed


def test_replication_options():
    code = replication(4, size=3, k=2, d=2, q=5)
    assert _declared(code) == (4, 2, 2, 3, 3, 3)
    assert verify(code).passed


def test_bad_arguments():
    with pytest.raises(ValueError):
        layered(3, 1)
    with pytest.raises(ValueError):
        rbt_mbr(4, 4)
    with pytest.raises(ValueError, match="q >= C"):
        rbt_mbr(5, 3, 7)
    with pytest.raises(ValueError):
        mds_msr(6, 3, 3, 5)
    with pytest.raises(ValueError, match="prime"):
        layered(4, 3, 4)
    with pytest.raises(ValueError, match="distinct"):
        vandermonde(2, [1, 6], 5)


def test_next_prime():
    assert [next_prime(m) for m in (0, 2, 4, 10, 14)] == [2, 2, 5, 11, 17]


def test_vandermonde_any_k_columns_independent():
    V = vandermonde(3, range(7), 7)
    for cols in combinations(range(7), 3):
        assert naive_rank(V[:, cols].T.tolist(), 7) == 3


def test_random_subspace_system_is_seeded():
    a = random_subspace_system(5, 6, 4, 3)
    b = random_subspace_system(5, 6, 4, 3)
    assert all(a.variables[Node(t)] == b.variables[Node(t)] for t in range(1, 5))


@given(st.integers(0, 2**32 - 1), st.sampled_from(["layered", "rbt"]))
@settings(max_examples=25, deadline=None)
def test_scrambling_preserves_entropies(seed, family):
    code = layered(4, 3, 2) if family == "layered" else rbt_mbr(4, 2, 7)
    sc = scrambled(code, seed)
    a, b = to_variable_system(code), to_variable_system(sc)
    names = [Node(1), Node(3), Helper(2, 1), Helper(4, 1), Helper(3, 2)]
    for x in names:
        for y in names:
            assert a.H([x, y]) == b.H([x, y])
    assert verify(sc).passed


def test_construction_spec():
    assert ConstructionSpec("layered", 4, w=3).build().same_as(layered(4, 3, 2))
    assert ConstructionSpec("rbt_mbr", 5, k=3, q=11).build().B == 9
    assert ConstructionSpec("replication", 3).build().params.k == 1
    with pytest.raises(ValueError, match="needs w"):
        ConstructionSpec("layered", 4)
    with pytest.raises(ValueError, match="unknown family"):
        ConstructionSpec("polar", 4)
