import pytest

from regencert.constructions import layered, mds_msr, rbt_mbr, replication, scrambled
from regencert.model import to_variable_system
from regencert.proofs import appendix_proof_check, evaluate


def test_evaluate_grammar():
    s = to_variable_system(layered(4, 3, 2))
    assert evaluate(s, "B") == 8
    assert evaluate(s, "3B") == evaluate(s, "3*B") == 24
    assert evaluate(s, "H(W1) + H(W2|W1)") == evaluate(s, "H(W1,W2)") == 6
    assert evaluate(s, "H(W1,W2) - B") == -2
    assert evaluate(s, "-B + 2 H(W1)") == -2
    assert evaluate(s, "I(W1;W2)") == 0
    assert evaluate(s, "I(W1;W2,W3)") == 1
    assert evaluate(s, "I(W1;W2|W3)") == evaluate(s, "H(W1|W3) - H(W1|W2,W3)")
    for bad in ("H(W1", "I(W1,W2)", "X"):
        with pytest.raises(ValueError):
            evaluate(s, bad)


@pytest.mark.parametrize("proof", [1, 2, 3])
def test_layered_is_tight(proof):
    t = appendix_proof_check(layered(4, 3, 2), proof)
    assert t.holds
    assert all(s.slack >= 0 for s in t.steps)
    assert (t.final_lhs, t.final_rhs) == (24, 24)
    if proof == 3:
        assert t.checks["H(W5)"] == t.checks["sum H(W_j) - B"] == 4


@pytest.mark.parametrize("proof", [1, 2, 3])
@pytest.mark.parametrize("perm", [None, (2, 4, 1, 3), (4, 3, 2, 1)])
def test_other_433_codes(proof, perm):
    for code in (rbt_mbr(4, 3, 7), scrambled(layered(4, 3, 2), 5), replication(4, size=2, k=3, d=3, q=3)):
        t = appendix_proof_check(code, proof, perm)
        assert t.holds, [s.description for s in t.steps if not s.holds]


def test_replication_w5_is_strict():
    t = appendix_proof_check(replication(4, k=3, d=3), 3)
    assert t.holds
    assert t.checks["H(W5)"] < t.checks["sum H(W_j) - B"]
    assert t.checks["W5 dimension equality"] is False


def test_wrong_shape_rejected():
    with pytest.raises(ValueError, match="N=4, k=3, d=3"):
        appendix_proof_check(mds_msr(4, 2, 3, 5), 1)
    with pytest.raises(ValueError):
        appendix_proof_check(layered(4, 3, 2), 4)
