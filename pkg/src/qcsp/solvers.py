"""Ground-truth decision procedures.

``csp_eval`` goes through the canonical database and homomorphism search,
``qcsp_eval`` plays out the quantifier game by plain recursion, and
``eval_fo`` is a Tarskian model checker for prenex first-order sentences.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from .logic import (EXISTS, FORALL, And, Atom, Const, Eq, FOSentence, Not, Or,
                    PHSentence, canonical_database, formula_symbols)
from .structures import Structure, find_homomorphism


class BudgetExceeded(RuntimeError):
    """The game search visited more nodes than its budget allows."""


def _check_constants(b: Structure, phi: PHSentence):
    for c in phi.constants:
        if not 0 <= c < b.size:
            raise ValueError(f"constant @{c} outside domain 0..{b.size - 1}")


def csp_eval(b: Structure, phi: PHSentence) -> bool:
    if phi.is_bottom:
        return False
    if not phi.is_primitive_positive:
        raise ValueError("csp_eval takes primitive positive sentences")
    _check_constants(b, phi)
    phi.check_signature(b.signature)
    if not phi.variables and not phi.constants:
        return True
    db, pins = canonical_database(phi, b.signature)
    return find_homomorphism(db, b, pins) is not None


def qcsp_eval(b: Structure, phi: PHSentence, budget: Optional[int] = None) -> bool:
    """Decide ``b ⊨ phi`` by recursion over the prefix.

    Universal variables range over the whole domain conjunctively, existential
    ones disjunctively.  An atom is checked as soon as its last variable is
    bound, which only cuts branches whose leaves would all fail anyway.
    ``budget`` caps the number of visited game nodes.
    """
    if phi.is_bottom:
        return False
    _check_constants(b, phi)
    phi.check_signature(b.signature)

    position = {v: i for i, v in enumerate(phi.variables)}
    ready: List[List[Atom]] = [[] for _ in range(len(position) + 1)]
    for a in phi.body:
        last = max((position[v] + 1 for v in a.variables), default=0)
        ready[last].append(a)
    prefix = phi.prefix
    rels = b.relations
    assignment: Dict[str, int] = {}
    visited = 0

    def satisfied(atoms):
        return all(
            tuple(t.value if isinstance(t, Const) else assignment[t] for t in a.args) in rels[a.symbol]
            for a in atoms)

    def play(i: int) -> bool:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(f"game search exceeded {budget} nodes")
        if i == len(prefix):
            return True
        q, v = prefix[i]
        want = q == EXISTS
        for x in b.elements:
            assignment[v] = x
            ok = satisfied(ready[i + 1]) and play(i + 1)
            if ok == want:
                del assignment[v]
                return want
        del assignment[v]
        return not want

    if not satisfied(ready[0]):
        return False
    return play(0)


def eval_fo(d: Structure, theta: FOSentence) -> bool:
    unknown = formula_symbols(theta.matrix) - set(d.signature.names)
    if unknown:
        raise KeyError(f"symbols {sorted(unknown)} not in the structure's signature")

    def value(term, env):
        if isinstance(term, Const):
            if not 0 <= term.value < d.size:
                raise ValueError(f"constant {term} outside domain")
            return term.value
        return env[term]

    def holds(f, env) -> bool:
        if isinstance(f, Atom):
            return tuple(value(t, env) for t in f.args) in d.relations[f.symbol]
        if isinstance(f, Eq):
            return value(f.left, env) == value(f.right, env)
        if isinstance(f, Not):
            return not holds(f.arg, env)
        if isinstance(f, And):
            return all(holds(g, env) for g in f.args)
        if isinstance(f, Or):
            return any(holds(g, env) for g in f.args)
        raise TypeError(f"not a formula: {f!r}")

    def quantify(i, env) -> bool:
        if i == len(theta.prefix):
            return holds(theta.matrix, env)
        q, v = theta.prefix[i]
        branches = (quantify(i + 1, {**env, v: x}) for x in d.elements)
        return all(branches) if q == FORALL else any(branches)

    return quantify(0, {})
