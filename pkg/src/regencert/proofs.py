"""Replay of the three (4,3,3) outer-bound proofs on a concrete code.

Each displayed line of a proof is written as an entropy expression in the
command-line variable syntax and evaluated on the code's variable system,
so every transcript step can be audited against the printed derivation.

Expression grammar::

    expr := ["-"] term (("+" | "-") term)*
    term := [int ["*"]] atom
    atom := "B" | "H(" vars ["|" vars] ")" | "I(" vars ";" vars ["|" vars] ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .certify import Ordering, Step, build_virtual_nodes
from .entropy import Node, VariableSystem, Virtual, Whole, parse_vars
from .model import RegenCode, to_variable_system

_SPLIT_RE = re.compile(r"([+-]?)\s*([^+-]+)")
_TERM_RE = re.compile(r"\s*(\d+)?\s*\*?\s*(B|H\(([^)]*)\)|I\(([^)]*)\))\s*$")


def evaluate(sys: VariableSystem, expr: str) -> int:
    """Evaluate a signed sum of entropy terms such as ``H(W4|W3,S_1_2) + H(W3,S_1_2)``."""
    total = 0
    for sign, raw in _SPLIT_RE.findall(expr):
        m = _TERM_RE.match(raw)
        if m is None:
            raise ValueError(f"cannot parse term {raw.strip()!r} in {expr!r}")
        coef = int(m.group(1) or 1)
        if m.group(2) == "B":
            value = sys.H(Whole())
        elif m.group(3) is not None:
            body = m.group(3)
            a, _, b = body.partition("|")
            value = sys.H_cond(parse_vars(a), parse_vars(b))
        else:
            body = m.group(4)
            ab, _, c = body.partition("|")
            a, sep, b = ab.partition(";")
            if not sep:
                raise ValueError(f"mutual information needs ';' in {raw.strip()!r}")
            value = sys.mutual(parse_vars(a), parse_vars(b), parse_vars(c))
        total += -coef * value if sign == "-" else coef * value
    return total


@dataclass
class ProofTranscript:
    proof_id: int
    code: str
    steps: list[Step]
    final_lhs: int
    final_rhs: int
    checks: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.steps) and self.final_lhs <= self.final_rhs


def _sum(terms) -> str:
    return " + ".join(terms)


ALL_W = _sum(f"H(W{j})" for j in range(1, 5))
ALL_S = _sum(f"H(S_{i}_{j})" for i in range(1, 5) for j in range(i + 1, 5))
FINAL = ("3B", ALL_W + " + " + ALL_S)

# Each proof is a list of (lhs, relation, rhs, justification).
PROOF1 = [
    ("B", "=", "H(W4|W3,S_1_2) + H(W3,S_1_2)", "W3, W4, S_1_2 rebuild W2 and thus recover M"),
    ("H(W4|W3,S_1_2)", "<=", "H(W4|S_3_4)", "S_3_4 is a function of W3"),
    ("B", "=", "H(S_2_3|W1,S_2_4,S_3_4) + H(W1,S_2_4,S_3_4)",
     "W1, S_2_4, S_3_4 rebuild W4; then W1, W4, S_2_3 rebuild W3"),
    ("H(S_2_3|W1,S_2_4,S_3_4)", "<=", "H(S_2_3|W4,S_3_4)", "W4 is a function of W1, S_2_4, S_3_4"),
    ("H(W1,S_2_4,S_3_4)", "<=", "H(W1,S_2_4) + H(S_3_4)", "subadditivity"),
    ("B", "=", "H(S_1_3|W2,S_1_4,S_3_4) + H(W2,S_1_4,S_3_4)",
     "W2, S_1_4, S_3_4 rebuild W4; then S_1_3, W2, W4 rebuild W3"),
    ("H(S_1_3|W2,S_1_4,S_3_4)", "<=", "H(S_1_3|S_2_3,W4,S_3_4)",
     "W4 is a function of W2, S_1_4, S_3_4 and S_2_3 of W2"),
    ("3B", "<=", "H(W4|S_3_4) + H(W3,S_1_2) + H(S_2_3|W4,S_3_4) + H(W1,S_2_4) + H(S_3_4)"
     " + H(S_1_3|S_2_3,W4,S_3_4) + H(W2,S_1_4,S_3_4)", "sum of the three bounds"),
    ("H(W4|S_3_4) + H(S_2_3|W4,S_3_4) + H(S_1_3|S_2_3,W4,S_3_4) + H(S_3_4)", "=",
     "H(S_1_3,S_2_3,W4,S_3_4)", "chain rule"),
    ("H(S_1_3,S_2_3,W4,S_3_4)", "=", "H(S_1_3,S_2_3,W4)", "S_1_3, S_2_3, W4 rebuild W3 which contains S_3_4"),
    ("3B", "<=", "H(S_1_3,S_2_3,W4) + H(W3,S_1_2) + H(W1,S_2_4) + H(W2,S_1_4,S_3_4)", "combined"),
    ("H(S_1_3,S_2_3,W4) + H(W3,S_1_2) + H(W1,S_2_4) + H(W2,S_1_4,S_3_4)", "<=", FINAL[1], "subadditivity"),
]

PROOF2 = [
    ("B", "<=", "H(W3,W4) + H(S_1_2)", "W3, W4, S_1_2 rebuild W2 and recover M"),
    ("B", "<=", "H(S_2_3,S_2_4) + H(W1,S_3_4)", "W1, S_2_4, S_3_4 rebuild W4; then W3 follows"),
    ("B", "=", "H(W3,W4|W2) + H(W2)", "any three nodes recover M"),
    ("H(W3,W4|W2)", "<=", "H(W3,W4|S_2_3,S_2_4)", "S_2_3, S_2_4 are functions of W2"),
    ("3B", "<=", "H(W3,W4,S_2_3,S_2_4) + H(W3,W4) + H(S_1_2) + H(W1,S_3_4) + H(W2)",
     "sum of the three bounds with the chain rule"),
    ("H(W3,W4,S_2_3,S_2_4) + H(W3,W4)", "<=", "H(W3,W4,S_2_3) + H(W3,W4,S_2_4)", "submodularity"),
    ("H(W3,W4,S_2_3)", "<=", "H(W4,S_1_3,S_2_3)", "W4, S_1_3, S_2_3 rebuild W3"),
    ("H(W3,W4,S_2_4)", "<=", "H(W3,S_1_4,S_2_4)", "W3, S_1_4, S_2_4 rebuild W4"),
    ("3B", "<=", "H(W4,S_1_3,S_2_3) + H(W3,S_1_4,S_2_4) + H(S_1_2) + H(W1,S_3_4) + H(W2)", "combined"),
    ("H(W4,S_1_3,S_2_3) + H(W3,S_1_4,S_2_4) + H(S_1_2) + H(W1,S_3_4) + H(W2)", "<=", FINAL[1],
     "subadditivity"),
]


def _proof3() -> list[tuple[str, str, str, str]]:
    pairs = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]

    def later(i, extra=""):
        names = [f"W{t}" for t in range(i + 1, 5)] + ([extra] if extra else [])
        return ",".join(names)

    cond4 = _sum(f"H(S_{i}_{j}|{later(i)})" for i, j in pairs)
    cond5 = _sum(f"H(S_{i}_{j}|{later(i, 'V1')})" for i, j in pairs)
    given5 = _sum(f"H(S_{i}_{j}|V1)" for i, j in pairs)
    steps = [
        ("H(W1,W2,W3,W4) + " + cond4, "<=", ALL_S, "columns without the virtual row"),
        ("H(W1,W2,W3,W4|V1) + " + cond5, "<=", given5, "columns including the virtual row"),
    ]
    steps += [(f"H(S_{i}_{j}|V1)", "<=", f"H(S_{i}_{j}|{later(i)})", "virtual node condition")
              for i, j in pairs]
    steps += [
        ("B + H(W1,W2,W3,W4|V1)", "<=", "B + " + given5, "drop the nonnegative conditional helper terms"),
        ("B + " + given5, "<=", ALL_S, "virtual node condition and the first column comparison"),
        ("H(V1)", "<=", ALL_W + " - B", "V1 is spanned by the node intersections"),
        ("3B", "<=", FINAL[1], "2B - H(V1) <= sum H(S_i_j)"),
    ]
    return steps


def _evaluate_steps(sys, spec) -> list[Step]:
    out = []
    for lhs, rel, rhs, why in spec:
        out.append(Step(f"{lhs} {rel} {rhs}  [{why}]", evaluate(sys, lhs), evaluate(sys, rhs), rel))
    return out


def appendix_proof_check(code: RegenCode, proof_id: int, perm=None) -> ProofTranscript:
    """Evaluate every line of proof 1, 2 or 3 for a code with N=4, k=3, d=3.

    ``perm`` relabels nodes (local node t is original node perm[t-1]).
    Proof 3 adds the virtual node W5 = V1 spanned by W_j intersect W_[j+1,4].
    """
    P = code.params
    if (P.N, P.k, P.d) != (4, 3, 3):
        raise ValueError(f"the (4,3,3) proofs need N=4, k=3, d=3 (got N={P.N}, k={P.k}, d={P.d})")
    if proof_id not in (1, 2, 3):
        raise ValueError(f"proof_id must be 1, 2 or 3 (got {proof_id})")
    perm = tuple(range(1, 5)) if perm is None else tuple(perm)
    sys = to_variable_system(code, perm)
    checks = {}
    if proof_id == 3:
        ordering = Ordering(perm, 4, 4)
        w5 = build_virtual_nodes(code, ordering, 1)[0]
        sys = sys.extended({Virtual(1): w5})
        node_sum = sum(sys.H(Node(j)) for j in range(1, 5))
        checks = {"H(W5)": w5.dim, "sum H(W_j) - B": node_sum - sys.H(Whole()),
                  "W5 dimension equality": w5.dim == node_sum - sys.H(Whole())}
        spec = _proof3()
    else:
        spec = PROOF1 if proof_id == 1 else PROOF2
    steps = _evaluate_steps(sys, spec)
    final_lhs = evaluate(sys, FINAL[0])
    final_rhs = evaluate(sys, FINAL[1])
    return ProofTranscript(proof_id, code.name, steps, final_lhs, final_rhs, checks)
