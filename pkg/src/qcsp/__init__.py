"""Finite-model workbench for CSP and QCSP: homomorphisms, cores, near-unanimity
polymorphisms, collapsings and the c-valid microcosm reductions."""

from .collapse import (NotACore, apply_collapsing, build_collapse_structure, chen_reduction,
                       qcsp_via_collapsibility)
from .logic import (EXISTS, FORALL, And, Atom, Const, Eq, FOSentence, Not, Or,
                    PartitionedStructure, PHSentence, canonical_database, canonical_query,
                    from_partitioned, normalize_alternation, to_partitioned)
from .microcosm import backward_reduce, forward_reduce, microcosm_structure
from .polymorphism import OperationTable, find_nu, is_near_unanimity, is_polymorphism
from .solvers import BudgetExceeded, csp_eval, eval_fo, qcsp_eval
from .structures import (Signature, SignatureMismatch, Structure, core_of, find_homomorphism,
                         is_core, is_isomorphic, power_structure, reduct)

__version__ = "0.1.0"

__all__ = [
    "NotACore", "apply_collapsing", "build_collapse_structure", "chen_reduction",
    "qcsp_via_collapsibility", "EXISTS", "FORALL", "And", "Atom", "Const", "Eq",
    "FOSentence", "Not", "Or", "PartitionedStructure", "PHSentence", "canonical_database",
    "canonical_query", "from_partitioned", "normalize_alternation", "to_partitioned",
    "backward_reduce", "forward_reduce", "microcosm_structure", "OperationTable", "find_nu",
    "is_near_unanimity", "is_polymorphism", "BudgetExceeded", "csp_eval", "eval_fo",
    "qcsp_eval", "Signature", "SignatureMismatch", "Structure", "core_of",
    "find_homomorphism", "is_core", "is_isomorphic", "power_structure", "reduct",
]
