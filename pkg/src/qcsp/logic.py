"""Sentences: positive Horn, primitive positive and prenex first-order.

Variables are strings; constants are :class:`Const` terms carrying an element
index.  Quantifiers are written ``"A"`` (universal) and ``"E"`` (existential),
matching the ``.ph`` file format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .structures import Signature, Structure

FORALL = "A"
EXISTS = "E"


@dataclass(frozen=True, order=True)
class Const:
    value: int

    def __str__(self):
        return f"@{self.value}"


Term = Union[str, Const]


def is_var(term: Term) -> bool:
    return isinstance(term, str)


@dataclass(frozen=True)
class Atom:
    symbol: str
    args: Tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return f"{self.symbol}({','.join(str(a) for a in self.args)})"

    @property
    def variables(self) -> List[str]:
        return [a for a in self.args if is_var(a)]

    def substitute(self, sub) -> "Atom":
        return Atom(self.symbol, tuple(sub.get(a, a) if is_var(a) else a for a in self.args))


@dataclass(frozen=True)
class PHSentence:
    """A positive Horn sentence: quantifier prefix over a conjunction of atoms.

    An all-existential prefix gives a primitive positive sentence.  The empty
    body is the true sentence; ``PHSentence.bottom()`` is the false one.
    """

    prefix: Tuple[Tuple[str, str], ...] = ()
    body: Tuple[Atom, ...] = ()
    is_bottom: bool = False

    def __post_init__(self):
        prefix = tuple((q, v) for q, v in self.prefix)
        body = tuple(self.body)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "body", body)
        if self.is_bottom and (prefix or body):
            raise ValueError("the bottom sentence has no prefix and no body")
        for q, _ in prefix:
            if q not in (FORALL, EXISTS):
                raise ValueError(f"unknown quantifier {q!r}")
        names = [v for _, v in prefix]
        if len(set(names)) != len(names):
            raise ValueError(f"prefix variables are not distinct: {names}")
        bound = set(names)
        for atom in body:
            for v in atom.variables:
                if v not in bound:
                    raise ValueError(f"variable {v!r} in {atom} is not quantified")

    @classmethod
    def bottom(cls) -> "PHSentence":
        return cls(is_bottom=True)

    def __str__(self):
        if self.is_bottom:
            return "false"
        quants = "".join(("∀" if q == FORALL else "∃") + v for q, v in self.prefix)
        body = " ∧ ".join(str(a) for a in self.body) or "true"
        return f"{quants} {body}".strip()

    @property
    def variables(self) -> List[str]:
        return [v for _, v in self.prefix]

    @property
    def universals(self) -> List[str]:
        return [v for q, v in self.prefix if q == FORALL]

    @property
    def existentials(self) -> List[str]:
        return [v for q, v in self.prefix if q == EXISTS]

    @property
    def is_primitive_positive(self) -> bool:
        return not self.universals

    @property
    def constants(self) -> List[int]:
        seen = dict.fromkeys(a.value for atom in self.body for a in atom.args if isinstance(a, Const))
        return sorted(seen)

    def symbols(self) -> Dict[str, int]:
        arities: Dict[str, int] = {}
        for atom in self.body:
            if arities.setdefault(atom.symbol, len(atom.args)) != len(atom.args):
                raise ValueError(f"symbol {atom.symbol!r} used with arities "
                                 f"{arities[atom.symbol]} and {len(atom.args)}")
        return arities

    def check_signature(self, signature: Signature):
        for atom in self.body:
            if atom.symbol not in signature:
                raise KeyError(f"symbol {atom.symbol!r} not in signature {signature.names}")
            if signature.arity(atom.symbol) != len(atom.args):
                raise ValueError(f"{atom} does not match arity {signature.arity(atom.symbol)}")

    def infer_signature(self) -> Signature:
        return Signature.of(self.symbols())


def pp(variables: Iterable[str], atoms: Iterable[Atom]) -> PHSentence:
    """Primitive positive sentence over ``variables``."""
    return PHSentence(tuple((EXISTS, v) for v in variables), tuple(atoms))


def atom(symbol: str, *args) -> Atom:
    """Atom shorthand: ints become constants, strings variables."""
    return Atom(symbol, tuple(Const(a) if isinstance(a, int) else a for a in args))


def fresh_names(stem: str, taken: Iterable[str]) -> Iterable[str]:
    taken = set(taken)
    for i in itertools.count(1):
        name = f"{stem}{i}"
        if name not in taken:
            yield name


# ---------------------------------------------------------------------------
# canonical database / query

class CanonicalDatabase(NamedTuple):
    structure: Structure
    pins: Dict[int, int]


def database_labels(phi: PHSentence) -> List[Term]:
    """Element order of ``canonical_database(phi)``: constants by value, then prefix variables."""
    return [Const(c) for c in phi.constants] + phi.variables


def canonical_database(phi: PHSentence, signature: Optional[Signature] = None) -> CanonicalDatabase:
    if phi.is_bottom:
        raise ValueError("the bottom sentence has no canonical database")
    if not phi.is_primitive_positive:
        raise ValueError("canonical databases are defined for primitive positive sentences")
    if signature is None:
        signature = phi.infer_signature()
    phi.check_signature(signature)
    labels = database_labels(phi)
    if not labels:
        raise ValueError("sentence has no variables or constants; the database would be empty")
    index = {label: i for i, label in enumerate(labels)}
    rels: Dict[str, list] = {name: [] for name in signature.names}
    for a in phi.body:
        rels[a.symbol].append(tuple(index[t] for t in a.args))
    pins = {index[Const(c)]: c for c in phi.constants}
    return CanonicalDatabase(Structure(signature, len(labels), rels), pins)


def canonical_query(s: Structure, var: str = "x") -> PHSentence:
    names = [f"{var}{i}" for i in s.elements]
    body = [Atom(name, tuple(names[x] for x in t))
            for name in s.signature.names for t in sorted(s.relations[name])]
    return pp(names, body)


# ---------------------------------------------------------------------------
# partitioned structures

@dataclass(frozen=True)
class PartitionedStructure:
    """A sentence viewed as a structure plus ordered singleton-or-empty A/E blocks.

    ``names`` optionally records a variable name per element so that reading
    the sentence back reproduces the original identifiers.
    """

    base: Structure
    blocks: Tuple[Tuple[str, Optional[int]], ...]
    names: Optional[Tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        blocks = tuple((tag, occ) for tag, occ in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.base.size or len(set(self.names)) != self.base.size:
                raise ValueError("names must give one distinct name per element")
        occupants = [occ for tag, occ in blocks if occ is not None]
        for tag, _ in blocks:
            if tag not in (FORALL, EXISTS):
                raise ValueError(f"unknown block tag {tag!r}")
        if len(set(occupants)) != len(occupants):
            raise ValueError("an element occupies more than one block")
        if sorted(occupants) != list(self.base.elements):
            raise ValueError("block occupants must cover the domain exactly")

    def _members(self, tag: str) -> List[int]:
        return [occ for t, occ in self.blocks if t == tag and occ is not None]

    @property
    def universal_elements(self) -> List[int]:
        return self._members(FORALL)

    @property
    def existential_elements(self) -> List[int]:
        return self._members(EXISTS)


def to_partitioned(phi: PHSentence, signature: Optional[Signature] = None) -> PartitionedStructure:
    if phi.is_bottom:
        raise ValueError("the bottom sentence has no partitioned structure")
    if phi.constants:
        raise ValueError("partitioned structures encode constant-free sentences only")
    if not phi.prefix:
        raise ValueError("sentence without variables has no partitioned structure")
    if signature is None:
        signature = phi.infer_signature()
    phi.check_signature(signature)
    names = phi.variables
    index = {v: i for i, v in enumerate(names)}
    rels: Dict[str, list] = {name: [] for name in signature.names}
    for a in phi.body:
        rels[a.symbol].append(tuple(index[v] for v in a.args))
    base = Structure(signature, len(names), rels)
    blocks = tuple((q, index[v]) for q, v in phi.prefix)
    return PartitionedStructure(base, blocks, tuple(names))


def from_partitioned(p: PartitionedStructure) -> PHSentence:
    names = p.names
    if names is None:
        counters = {FORALL: itertools.count(1), EXISTS: itertools.count(1)}
        generated = {}
        for tag, occ in p.blocks:
            if occ is not None:
                generated[occ] = ("u" if tag == FORALL else "v") + str(next(counters[tag]))
        names = tuple(generated[x] for x in p.base.elements)
    prefix = tuple((tag, names[occ]) for tag, occ in p.blocks if occ is not None)
    body = tuple(Atom(name, tuple(names[x] for x in t))
                 for name in p.base.signature.names for t in sorted(p.base.relations[name]))
    return PHSentence(prefix, body)


def normalize_alternation(phi: PHSentence) -> PHSentence:
    """Pad the prefix with vacuous variables into the shape ∀∃∀∃…∀∃."""
    if phi.is_bottom:
        raise ValueError("cannot normalize the bottom sentence")
    quants = [q for q, _ in phi.prefix]
    if all(q == (FORALL, EXISTS)[i % 2] for i, q in enumerate(quants)) and len(quants) % 2 == 0:
        return phi
    dummies = fresh_names("d", phi.variables)
    prefix: List[Tuple[str, str]] = []
    for q, v in phi.prefix:
        expected = (FORALL, EXISTS)[len(prefix) % 2]
        if q != expected:
            prefix.append((expected, next(dummies)))
        prefix.append((q, v))
    if len(prefix) % 2:
        prefix.append((EXISTS, next(dummies)))
    return PHSentence(tuple(prefix), phi.body)


# ---------------------------------------------------------------------------
# first-order sentences

@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: Tuple["Formula", ...]

    def __init__(self, *args):
        object.__setattr__(self, "args", tuple(args))


@dataclass(frozen=True)
class Or:
    args: Tuple["Formula", ...]

    def __init__(self, *args):
        object.__setattr__(self, "args", tuple(args))


Formula = Union[Atom, Eq, Not, And, Or]


def formula_variables(f: Formula) -> set:
    if isinstance(f, Atom):
        return set(f.variables)
    if isinstance(f, Eq):
        return {t for t in (f.left, f.right) if is_var(t)}
    if isinstance(f, Not):
        return formula_variables(f.arg)
    if isinstance(f, (And, Or)):
        return set().union(*(formula_variables(g) for g in f.args))
    raise TypeError(f"not a quantifier-free formula: {f!r}")


def formula_symbols(f: Formula) -> set:
    if isinstance(f, Atom):
        return {f.symbol}
    if isinstance(f, Eq):
        return set()
    if isinstance(f, Not):
        return formula_symbols(f.arg)
    return set().union(*(formula_symbols(g) for g in f.args))


@dataclass(frozen=True)
class FOSentence:
    """Prenex first-order sentence with a quantifier-free matrix."""

    prefix: Tuple[Tuple[str, str], ...]
    matrix: Formula

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple((q, v) for q, v in self.prefix))
        names = [v for _, v in self.prefix]
        if len(set(names)) != len(names):
            raise ValueError(f"prefix variables are not distinct: {names}")
        free = formula_variables(self.matrix) - set(names)
        if free:
            raise ValueError(f"free variables {sorted(free)} in matrix")


def sentence_from_atoms(prefix: Sequence[Tuple[str, str]], atoms: Iterable[Atom]) -> PHSentence:
    """Build a sentence, dropping duplicate atoms while keeping first-seen order."""
    return PHSentence(tuple(prefix), tuple(dict.fromkeys(atoms)))
