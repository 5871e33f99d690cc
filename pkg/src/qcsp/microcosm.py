"""Reductions between QCSP(B) and QCSP(C) for the c-valid structure C built from B.

C has domain ``B ∪ {c}`` with ``c = m``.  Every relation of B is widened by
all tuples touching ``c``, and a fresh binary relation F holds everywhere
except on pairs ``(x, c)`` with ``x`` in B.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Set

from .logic import (EXISTS, FORALL, PartitionedStructure, PHSentence, fresh_names,
                    from_partitioned, to_partitioned)
from .structures import Signature, Structure, reduct

F_SYMBOL = "F"


def microcosm_structure(b: Structure, f_name: str = F_SYMBOL) -> Structure:
    if f_name in b.signature:
        raise ValueError(f"symbol {f_name!r} already in the signature")
    c = b.size
    domain = range(b.size + 1)
    rels = {}
    for name, arity in b.signature:
        with_c = (t for t in itertools.product(domain, repeat=arity) if c in t)
        rels[name] = set(b.relations[name]) | set(with_c)
    rels[f_name] = {(x, y) for x in domain for y in domain if y != c or x == c}
    return Structure(b.signature.extend(f_name, 2), b.size + 1, rels)


def forward_reduce(phi: PHSentence, f_name: str = F_SYMBOL,
                   signature: Optional[Signature] = None) -> PHSentence:
    """Map an instance over B to an equivalent instance over C.

    A new outermost universal ``a`` is added (with an empty existential block
    after it), and F-edges run from ``a`` and from every universal to every
    existential, and between all pairs of existentials.
    """
    if phi.is_bottom:
        raise ValueError("forward_reduce is undefined on the bottom sentence")
    if phi.constants:
        raise ValueError("forward_reduce takes constant-free sentences")
    if signature is None:
        signature = phi.infer_signature()
    if f_name in signature:
        raise ValueError(f"symbol {f_name!r} already in the signature")

    new_var = "a" if "a" not in phi.variables else next(fresh_names("a", phi.variables))
    # prepend the new universal so that even variable-free inputs have a domain
    widened = PHSentence(((FORALL, new_var),) + phi.prefix, phi.body)
    p = to_partitioned(widened, signature)
    a = 0
    universals = [x for x in p.universal_elements if x != a]
    existentials = p.existential_elements

    edges = [(a, y) for y in existentials]
    edges += [(y, z) for y in existentials for z in existentials]
    edges += [(x, y) for x in universals for y in existentials]
    rels = dict(p.base.relations)
    rels[f_name] = edges
    base = Structure(signature.extend(f_name, 2), p.base.size, rels)
    blocks = ((FORALL, a), (EXISTS, None)) + p.blocks[1:]
    return from_partitioned(PartitionedStructure(base, blocks, p.names))


def _successors(base: Structure, f_name: str) -> Dict[int, Set[int]]:
    succ: Dict[int, Set[int]] = {x: set() for x in base.elements}
    for x, y in base.relations[f_name]:
        succ[x].add(y)
    return succ


def _reach_from(starts, succ) -> Set[int]:
    """Elements at the end of an F-path of length >= 1 from some start."""
    seen: Set[int] = set()
    stack = [y for x in starts for y in succ[x]]
    while stack:
        y = stack.pop()
        if y not in seen:
            seen.add(y)
            stack.extend(succ[y])
    return seen


def backward_reduce(phi: PHSentence, f_name: str = F_SYMBOL,
                    signature: Optional[Signature] = None) -> PHSentence:
    """Map an instance over C to an equivalent instance over B.

    Existentials not reached by an F-path from a universal are dropped with
    all their atoms (they can be played as ``c``).  If the remaining F-paths
    let the universal player win outright (see :func:`_universal_loses`), the
    result is the bottom sentence; otherwise it is the F-free part of what
    remains.  F self-loops on universals hold in C and never reject.
    """
    if phi.is_bottom:
        raise ValueError("backward_reduce is undefined on the bottom sentence")
    if signature is None:
        arities = phi.symbols()
        arities.setdefault(f_name, 2)
        signature = Signature.of(arities)
    if f_name not in signature:
        raise KeyError(f"symbol {f_name!r} missing from the signature")
    if signature.arity(f_name) != 2:
        raise ValueError(f"symbol {f_name!r} must be binary")
    sigma = [name for name in signature.names if name != f_name]
    if not phi.prefix:
        return PHSentence((), tuple(x for x in phi.body if x.symbol != f_name))

    p = to_partitioned(phi, signature)
    universals = p.universal_elements
    reached = _reach_from(universals, _successors(p.base, f_name))
    keep = [x for x in p.base.elements if x in universals or x in reached]
    if not keep:
        return PHSentence()

    pruned = _prune(p, keep)
    if _universal_loses(pruned, f_name):
        return PHSentence.bottom()
    sigma_part = PartitionedStructure(reduct(pruned.base, sigma), pruned.blocks, pruned.names)
    return from_partitioned(sigma_part)


def _universal_loses(p: PartitionedStructure, f_name: str) -> bool:
    """Detect F-paths that let the universal player force an F-atom onto (x, c).

    A path from universal ``x`` to a different universal ``u`` loses: play
    ``x`` in B and ``u`` as ``c``.  A cycle through a single universal ``u``
    loses only if it passes an existential quantified before ``u``; otherwise
    that existential can follow ``u`` into ``c``.
    """
    succ = _successors(p.base, f_name)
    pred: Dict[int, Set[int]] = {x: set() for x in p.base.elements}
    for x, ys in succ.items():
        for y in ys:
            pred[y].add(x)
    position = {occ: i for i, (_, occ) in enumerate(p.blocks) if occ is not None}
    universals = p.universal_elements
    for u in universals:
        forward = _reach_from([u], succ)
        if any(x in forward for x in universals if x != u):
            return True
        cycle = forward & _reach_from([u], pred)
        if any(position[y] < position[u] for y in cycle):
            return True
    return False


def _prune(p: PartitionedStructure, keep: List[int]) -> PartitionedStructure:
    index = {x: i for i, x in enumerate(keep)}
    blocks = tuple((tag, index.get(occ)) for tag, occ in p.blocks)
    names = tuple(p.names[x] for x in keep) if p.names is not None else None
    return PartitionedStructure(p.base.induced(keep), blocks, names)
