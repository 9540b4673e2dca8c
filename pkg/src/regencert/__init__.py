"""Exact-repair regenerating codes as linear objects over GF(p), with certified outer bounds."""

from .bounds import (best_linear_bound, fr_bound, fr_bound_min, pk15_bound, section4_table,
                     theorem3_bound)
from .certify import (Ordering, build_virtual_nodes, check_condition_W, corollary2_certify, delta,
                      gap_terms, lemma3_check, theorem1_certify, theorem2_certify, theorem3_certify)
from .constructions import ConstructionSpec, layered, mds_msr, random_subspace_system, rbt_mbr, replication
from .entropy import Helper, Node, VariableSystem, Virtual, Whole, lemma1_check
from .model import CodeParams, RegenCode, load, save, to_variable_system, verify
from .proofs import appendix_proof_check

__all__ = [
    "CodeParams", "ConstructionSpec", "Helper", "Node", "Ordering", "RegenCode", "VariableSystem", "Virtual", "Whole",
    "appendix_proof_check", "best_linear_bound", "build_virtual_nodes", "check_condition_W",
    "corollary2_certify", "delta", "fr_bound", "fr_bound_min", "gap_terms", "layered", "lemma1_check",
    "lemma3_check", "load", "mds_msr", "pk15_bound", "random_subspace_system", "rbt_mbr",
    "replication", "save", "section4_table", "theorem1_certify", "theorem2_certify",
    "theorem3_bound", "theorem3_certify", "to_variable_system", "verify",
]
