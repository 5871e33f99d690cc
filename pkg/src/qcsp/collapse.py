"""Collapsings, the pair-variable CSP instance built from a collapsing, and
the collapse structures used to decide QCSP over collapsible cores.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Tuple

from .logic import EXISTS, FORALL, Const, PHSentence, sentence_from_atoms
from .structures import Structure, find_homomorphism, is_core

Assignment = Tuple[Tuple[str, int], ...]


class NotACore(ValueError):
    pass


def apply_collapsing(phi: PHSentence, survivors: Iterable[str], a: int) -> PHSentence:
    """Instantiate every universal not in ``survivors`` by the constant ``a``."""
    if phi.is_bottom:
        return phi
    if phi.constants:
        raise ValueError("collapsings are taken of constant-free sentences")
    survivors = set(survivors)
    unknown = survivors - set(phi.universals)
    if unknown:
        raise ValueError(f"survivors {sorted(unknown)} are not universal variables")
    collapsed = {u: Const(a) for u in phi.universals if u not in survivors}
    prefix = tuple((q, v) for q, v in phi.prefix if v not in collapsed)
    return PHSentence(prefix, tuple(atom.substitute(collapsed) for atom in phi.body))


def pair_name(var: str, alpha: Assignment) -> str:
    """Variable name for the pair (var, alpha), e.g. ``v2[u1=0,u3=1]``."""
    return f"{var}[{','.join(f'{u}={x}' for u, x in alpha)}]"


def _preceding_universals(phi: PHSentence) -> Dict[str, List[str]]:
    seen: List[str] = []
    before: Dict[str, List[str]] = {}
    for q, v in phi.prefix:
        if q == FORALL:
            seen.append(v)
        else:
            before[v] = list(seen)
    return before


def chen_reduction(phi_prime: PHSentence, domain_size: int,
                   max_survivors: Optional[int] = None) -> PHSentence:
    """Primitive positive instance equivalent to the collapsed sentence ``phi_prime``.

    Existential ``v`` becomes one variable per assignment to the universals
    quantified before it; each atom is copied once per assignment to all
    universals, which are replaced by their assigned constants.
    """
    if phi_prime.is_bottom:
        return phi_prime
    if domain_size is None or domain_size < 1:
        raise ValueError("a positive domain size is needed to enumerate assignments")
    survivors = phi_prime.universals
    if max_survivors is not None and len(survivors) > max_survivors:
        raise ValueError(f"{len(survivors)} surviving universals exceed the bound {max_survivors}")
    before = _preceding_universals(phi_prime)
    elements = range(domain_size)

    prefix = []
    for v in phi_prime.existentials:
        for values in itertools.product(elements, repeat=len(before[v])):
            prefix.append((EXISTS, pair_name(v, tuple(zip(before[v], values)))))

    atoms = []
    for values in itertools.product(elements, repeat=len(survivors)):
        alpha = dict(zip(survivors, values))
        sub = {u: Const(x) for u, x in alpha.items()}
        for v, us in before.items():
            sub[v] = pair_name(v, tuple((u, alpha[u]) for u in us))
        atoms.extend(atom.substitute(sub) for atom in phi_prime.body)
    return sentence_from_atoms(prefix, atoms)


def collapse_labels(b: Structure, phi: PHSentence, survivors: Iterable[str], a: int) -> List[str]:
    """Names of the elements of the collapse structure, in index order."""
    chen = chen_reduction(apply_collapsing(phi, survivors, a), b.size)
    return [f"@{x}" for x in b.elements] + chen.variables


def build_collapse_structure(b: Structure, phi: PHSentence, survivors: Iterable[str],
                             a: int = 0, check_core: bool = True) -> Structure:
    """The structure D(survivors): constants of ``b`` at ``0..m-1``, pair elements after.

    It carries the atoms of the pair-variable instance of the collapsing, with
    constants read as the corresponding elements, plus all tuples of ``b`` on
    the constant elements.  Homomorphisms D -> b then fix the constants up to
    an automorphism, which is why ``b`` must be a core.
    """
    if check_core and not is_core(b):
        raise NotACore("collapse structures are only sound over cores")
    if phi.is_bottom:
        raise ValueError("the bottom sentence has no collapse structure")
    if not 0 <= a < b.size:
        raise ValueError(f"collapse element {a} outside domain")
    phi.check_signature(b.signature)
    chen = chen_reduction(apply_collapsing(phi, survivors, a), b.size)
    index = {v: b.size + i for i, v in enumerate(chen.variables)}

    def element(t):
        return t.value if isinstance(t, Const) else index[t]

    rels = {name: set(ts) for name, ts in b.relations.items()}
    for atom in chen.body:
        rels[atom.symbol].add(tuple(element(t) for t in atom.args))
    return Structure(b.signature, b.size + len(index), rels)


def survivor_sets(phi: PHSentence, j: int) -> List[Tuple[str, ...]]:
    universals = phi.universals
    return list(itertools.combinations(universals, min(j, len(universals))))


def qcsp_via_collapsibility(b: Structure, phi: PHSentence, j: int, a: int = 0) -> bool:
    """True iff every collapse structure with ``min(j, #universals)`` survivors maps to ``b``.

    Always implied by ``b ⊨ phi``; equivalent to it when ``b`` is
    (j, a)-collapsible.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    if not is_core(b):
        raise NotACore("collapsibility decisions are only sound over cores")
    if phi.is_bottom:
        return False
    if phi.constants:
        raise ValueError("qcsp_via_collapsibility takes constant-free sentences")
    for lam in survivor_sets(phi, j):
        d = build_collapse_structure(b, phi, lam, a, check_core=False)
        if find_homomorphism(d, b) is None:
            return False
    return True
