"""Bounded-exhaustive and seeded random instance generation."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, List, Optional, Sequence, Tuple

from .logic import EXISTS, FORALL, Atom, PHSentence
from .structures import Signature


def quantifier_sequences(universals: int, existentials: int) -> Iterator[Tuple[str, ...]]:
    n = universals + existentials
    for positions in itertools.combinations(range(n), universals):
        yield tuple(FORALL if i in positions else EXISTS for i in range(n))


def name_variables(quants: Sequence[str]) -> List[Tuple[str, str]]:
    """Pair each quantifier with a name: u1, u2, ... for universals, v1, ... for existentials."""
    counts = {FORALL: 0, EXISTS: 0}
    prefix = []
    for q in quants:
        counts[q] += 1
        prefix.append((q, ("u" if q == FORALL else "v") + str(counts[q])))
    return prefix


def all_atoms(signature: Signature, variables: Sequence[str]) -> List[Atom]:
    return [Atom(name, args) for name, arity in signature
            for args in itertools.product(variables, repeat=arity)]


def exhaustive_sentences(signature: Signature, max_universals: int, max_existentials: int,
                         max_atoms: int) -> Iterator[PHSentence]:
    """Every constant-free sentence within the bounds, up to renaming of variables.

    Bodies are sets of distinct atoms; the variable names are fixed by
    :func:`name_variables`.
    """
    for nu in range(max_universals + 1):
        for ne in range(max_existentials + 1):
            for quants in quantifier_sequences(nu, ne):
                prefix = name_variables(quants)
                atoms = all_atoms(signature, [v for _, v in prefix])
                for size in range(max_atoms + 1):
                    for body in itertools.combinations(atoms, size):
                        yield PHSentence(tuple(prefix), body)


def exhaustive_pp(signature: Signature, max_vars: int, max_atoms: int) -> Iterator[PHSentence]:
    """Constant-free primitive positive sentences with 1..max_vars variables.

    The variable-free sentence is left out: its canonical database would have
    an empty domain.
    """
    return (phi for phi in exhaustive_sentences(signature, 0, max_vars, max_atoms) if phi.variables)


def random_atoms(rng: random.Random, signature: Signature, variables: Sequence[str],
                 count: int, weights: Optional[Sequence[float]] = None) -> List[Atom]:
    if not variables:
        return []
    symbols = list(signature)
    atoms = []
    for _ in range(count):
        name, arity = rng.choices(symbols, weights=weights)[0]
        atoms.append(Atom(name, tuple(rng.choice(variables) for _ in range(arity))))
    return atoms


def random_sentence(rng: random.Random, signature: Signature, max_vars: int = 8,
                    max_atoms: int = 6, max_universals: Optional[int] = None,
                    max_existentials: Optional[int] = None, min_vars: int = 0,
                    universal_prob: float = 0.5) -> PHSentence:
    """A random constant-free sentence; quantifiers are drawn independently per position."""
    n = rng.randint(min_vars, max_vars)
    caps = {FORALL: max_universals, EXISTS: max_existentials}
    other = {FORALL: EXISTS, EXISTS: FORALL}

    def full(q):
        return caps[q] is not None and quants.count(q) >= caps[q]

    quants: List[str] = []
    for _ in range(n):
        q = FORALL if rng.random() < universal_prob else EXISTS
        if full(q):
            q = other[q]
            if full(q):
                break
        quants.append(q)
    prefix = name_variables(quants)
    body = random_atoms(rng, signature, [v for _, v in prefix], rng.randint(0, max_atoms))
    return PHSentence(tuple(prefix), tuple(dict.fromkeys(body)))


def random_pp(rng: random.Random, signature: Signature, max_vars: int = 4,
              max_atoms: int = 4) -> PHSentence:
    return random_sentence(rng, signature, max_vars, max_atoms, universal_prob=0.0, min_vars=1)


def random_f_sentence(rng: random.Random, signature: Signature, f_name: str = "F",
                      max_vars: int = 6, max_atoms: int = 8) -> PHSentence:
    """A random sentence over ``signature`` (which includes ``f_name``), biased towards F-atoms.

    Roughly half of all atoms are F-atoms, so F self-loops, F-edges into
    universals and existentials unreachable from any universal all occur
    with useful frequency.
    """
    names = signature.names
    weights = [len(names) - 1 if name == f_name else 1 for name in names] if len(names) > 1 else None
    n = rng.randint(1, max_vars)
    prefix = name_variables([rng.choice((FORALL, EXISTS)) for _ in range(n)])
    body = random_atoms(rng, signature, [v for _, v in prefix], rng.randint(0, max_atoms), weights)
    return PHSentence(tuple(prefix), tuple(dict.fromkeys(body)))


def perturb_f_atoms(rng: random.Random, phi: PHSentence, f_name: str = "F",
                    drop_prob: float = 0.3, extra: int = 2) -> PHSentence:
    """Drop some F-atoms of ``phi`` and add a few random ones."""
    body = [a for a in phi.body if a.symbol != f_name or rng.random() >= drop_prob]
    variables = phi.variables
    for _ in range(rng.randint(0, extra)):
        body.append(Atom(f_name, (rng.choice(variables), rng.choice(variables))))
    return PHSentence(phi.prefix, tuple(dict.fromkeys(body)))
