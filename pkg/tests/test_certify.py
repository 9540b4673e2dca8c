import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regencert.bounds import fr_bound
from regencert.certify import (CertificationError, HypothesisError, Ordering, build_virtual_nodes,
                               check_condition_W, corollary2_certify, delta, gap_terms, lemma3_check,
                               search_orderings, theorem1_certify, theorem2_certify,
                               theorem3_certify)
from regencert.constructions import layered, mds_msr, rbt_mbr
from regencert.linalg import full_space, zero_subspace
from regencert.model import RegenCode

from codes import code_ids, constructed_codes
from oracles import columns, naive_rank

CODES = constructed_codes()


def orderings(code, n, ell, count=20, seed=0):
    rng = random.Random(seed)
    yield Ordering.identity(code.N, n, ell)
    for _ in range(count):
        perm = list(range(1, code.N + 1))
        rng.shuffle(perm)
        yield Ordering(tuple(perm), n, ell)


def lengths(code):
    return range(1, min(code.N, code.params.d + 1) + 1)


def delta_oracle(code, o):
    """Delta from raw generator blocks with list-based elimination."""
    q, nodes = code.params.q, o.nodes
    total = 0
    for j in range(1, o.ell + 1):
        for i in range(1, j):
            later = sum((columns(code.block(nodes[t - 1])) for t in range(i + 1, o.n + 1)), [])
            s = columns(code.helper_matrix(nodes[i - 1], nodes[j - 1]))
            total += naive_rank(s + later, q) - (naive_rank(later, q) if later else 0)
    return total


def test_ordering_validation():
    with pytest.raises(ValueError):
        Ordering((1, 2, 2), 2, 1)
    with pytest.raises(ValueError):
        Ordering((1, 2, 3), 2, 3)
    assert Ordering((3, 1, 2, 4), 2, 1).nodes == (2, 4)


@pytest.mark.parametrize("code", CODES, ids=code_ids())
def test_theorem1_sweep(code):
    for n in lengths(code):
        for ell in range(n + 1):
            for o in orderings(code, n, ell, seed=n * 10 + ell):
                cert = theorem1_certify(code, o)
                assert cert.slack >= 0
                assert cert.terms["Delta"] == delta_oracle(code, o)
                if ell <= 1:
                    assert cert.terms["Delta"] == 0


def test_theorem1_layered_values():
    code = layered(4, 3, 2)
    seen = []
    for ell in range(5):
        c = theorem1_certify(code, Ordering.identity(4, 4, ell))
        seen.append((c.lhs, c.rhs, c.terms["Delta"]))
    assert seen == [(8, 12, 0), (8, 9, 0), (8, 8, 0), (9, 9, 1), (12, 12, 4)]


def test_rbt_mbr_delta_zero_at_k():
    code = rbt_mbr(5, 3, 11)
    for n in range(3, 6):
        for o in orderings(code, n, 3, count=10, seed=n):
            assert delta(code, o)[0] == 0
    c = theorem1_certify(rbt_mbr(4, 3, 7), Ordering.identity(4, 3, 3))
    assert c.terms["B(n)"] == 6


def test_mds_msr_ell0_is_tight():
    code = mds_msr(6, 3, 3, 7)
    for n in range(3, 5):
        c = theorem1_certify(code, Ordering.identity(6, n, 0))
        assert (c.lhs, c.rhs) == (3, n)


def test_repair_range_enforced():
    code = mds_msr(6, 3, 3, 7)
    with pytest.raises(ValueError, match="n <= d\\+1"):
        theorem1_certify(code, Ordering.identity(6, 5, 1))


@pytest.mark.parametrize("code", CODES, ids=code_ids())
def test_gap_identities(code):
    n = min(code.N, code.params.d + 1)
    for o in orderings(code, n, n, count=3):
        for j in range(1, n + 1):
            g = gap_terms(code, o, j)
            assert g.identities_hold
            assert min([g.c3, *g.c1.values(), *g.c2.values()], default=0) >= 0


def test_gaps_vanish_on_layered():
    code = layered(4, 3, 2)
    o = Ordering.identity(4, 4, 4)
    for j in range(1, 5):
        g = gap_terms(code, o, j)
        assert g.c3 == 0 and not any(g.c1.values()) and not any(g.c2.values())
    with pytest.raises(ValueError):
        gap_terms(code, Ordering.identity(4, 4, 2), 3)


def test_virtual_nodes_layered():
    code = layered(4, 3, 2)
    o = Ordering.identity(4, 4, 4)
    vs = build_virtual_nodes(code, o, 2)
    assert [s.dim for s in vs] == [4, 8]
    assert vs[1].contains(vs[0])
    assert check_condition_W(code, o, vs).passed
    assert [(r.dim, r.chain_bound, r.bound) for r in lemma3_check(code, o, vs)] == [(4, 4, 4), (8, 8, 8)]


def test_condition_with_trivial_virtuals():
    code = layered(4, 3, 2)
    o = Ordering.identity(4, 4, 4)
    full = [full_space(code.B, 2)]
    assert check_condition_W(code, o, full).passed
    zero = [zero_subspace(code.B, 2)]
    rep = check_condition_W(code, o, zero)
    assert not rep.passed and rep.failures()
    with pytest.raises(HypothesisError):
        theorem2_certify(code, o, 1, virtuals=zero)
    with pytest.raises(ValueError):
        theorem2_certify(code, o, 2, virtuals=full)


@pytest.mark.parametrize("code", CODES, ids=code_ids())
@pytest.mark.parametrize("v", [1, 2])
def test_virtual_node_theorems_sweep(code, v):
    for n in lengths(code):
        for ell in range(n + 1):
            for o in orderings(code, n, ell, count=2, seed=ell):
                vs = build_virtual_nodes(code, o, v)
                assert check_condition_W(code, o, vs).passed
                assert all(r.holds for r in lemma3_check(code, o, vs))
                assert theorem2_certify(code, o, v).slack >= 0
                cor = corollary2_certify(code, o, v)
                assert all(s.holds for s in cor.steps)
                t3 = theorem3_certify(code, o, v)
                assert t3.slack >= 0


def test_layered_equalities():
    code = layered(4, 3, 2)
    o = Ordering.identity(4, 4, 4)
    t2 = theorem2_certify(code, o, 1)
    assert (t2.lhs, t2.rhs) == (16, 16)
    cor = corollary2_certify(code, o, 1)
    assert (cor.lhs, cor.rhs) == (16, 16)
    assert cor.virtual_dims == [4]
    assert (cor.terms["remark_lhs"], cor.terms["remark_rhs"]) == (16, 16)
    t3 = theorem3_certify(code, o, 1)
    assert (t3.lhs, t3.rhs) == (24, 24)
    assert theorem3_certify(code, o, 2).slack == 0


def test_certification_error_carries_certificate():
    # Zeroed repair coefficients: the code no longer repairs, so the residual step fails.
    code = layered(4, 3, 2)
    zero = np.zeros((3, 2), dtype=np.int64)
    broken = RegenCode(code.params, code.generator, {key: zero for key in code.repair})
    with pytest.raises(CertificationError) as info:
        theorem1_certify(broken, Ordering.identity(4, 4, 2))
    cert = info.value.certificate
    assert not cert.holds and any(not s.holds for s in cert.steps)


def test_search_orderings():
    code = layered(4, 3, 2)
    found = search_orderings(code, 4, 3)
    assert found["max_delta"][1] == 1
    assert found["min_slack"][1] >= 0
    with pytest.raises(ValueError):
        search_orderings(mds_msr(10, 3, 3, 11), 4, 2)


@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
@settings(max_examples=30, deadline=None)
def test_theorem1_random_orderings_layered(seed, ell):
    code = layered(4, 3, 2)
    perm = tuple(int(x) + 1 for x in np.random.default_rng(seed).permutation(4))
    o = Ordering(perm, 4, ell)
    cert = theorem1_certify(code, o)
    assert cert.terms["B(n)"] + cert.terms["Delta"] <= fr_bound(code.params, 4, ell)


def test_virtual_node_vanishes_on_independent_blocks():
    code = mds_msr(6, 3, 3, 7)
    for ell in range(4):
        vs = build_virtual_nodes(code, Ordering.identity(6, 3, ell), 2)
        assert [s.dim for s in vs] == [0, 0]
