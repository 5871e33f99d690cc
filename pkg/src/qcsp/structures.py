"""Finite relational structures and homomorphism search.

Elements of a structure of size ``m`` are the integers ``0..m-1``.  A
homomorphism or pin assignment is a plain ``dict`` from source elements to
target elements.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

Hom = Dict[int, int]

DEFAULT_POWER_BOUND = 4096


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    symbols: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        names = [name for name, _ in symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation symbol in {names}")
        for name, arity in symbols:
            if arity < 1:
                raise ValueError(f"symbol {name!r} has arity {arity}; arities must be >= 1")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def of(cls, pairs: Iterable[Tuple[str, int]] | Mapping[str, int]) -> "Signature":
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        return cls(tuple(pairs))

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self.symbols]

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(n == name for n, _ in self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def extend(self, name: str, arity: int) -> "Signature":
        return Signature(self.symbols + ((name, arity),))

    def restrict(self, keep: Iterable[str]) -> "Signature":
        keep = set(keep)
        return Signature(tuple((n, a) for n, a in self.symbols if n in keep))

    def same_symbols(self, other: "Signature") -> bool:
        return dict(self.symbols) == dict(other.symbols)


@dataclass(frozen=True)
class Structure:
    """A finite structure: a signature, a domain size and one tuple set per symbol."""

    signature: Signature
    size: int
    relations: Mapping[str, frozenset]

    def __post_init__(self):
        if not isinstance(self.signature, Signature):
            object.__setattr__(self, "signature", Signature.of(self.signature))
        if self.size < 1:
            raise ValueError("structures must have a nonempty domain")
        unknown = set(self.relations) - set(self.signature.names)
        if unknown:
            raise ValueError(f"relations for unknown symbols {sorted(unknown)}")
        rels = {}
        for name, arity in self.signature:
            tuples = frozenset(tuple(int(x) for x in t) for t in self.relations.get(name, ()))
            for t in tuples:
                if len(t) != arity:
                    raise ValueError(f"tuple {t} in {name!r} does not have arity {arity}")
                if any(x < 0 or x >= self.size for x in t):
                    raise ValueError(f"tuple {t} in {name!r} leaves the domain 0..{self.size - 1}")
            rels[name] = tuples
        object.__setattr__(self, "relations", rels)

    def __hash__(self):
        return hash((self.signature, self.size, tuple(sorted(
            (name, tuple(sorted(ts))) for name, ts in self.relations.items()))))

    def __repr__(self):
        body = ", ".join(f"{name}={sorted(self.relations[name])}" for name in self.signature.names)
        return f"Structure(size={self.size}; {body})"

    @property
    def elements(self) -> range:
        return range(self.size)

    def tuples(self, name: str) -> frozenset:
        return self.relations[name]

    def holds(self, name: str, t: Sequence[int]) -> bool:
        return tuple(t) in self.relations[name]

    def induced(self, keep: Sequence[int]) -> "Structure":
        """Induced substructure on ``keep``, renumbered in the order given."""
        index = {x: i for i, x in enumerate(keep)}
        rels = {
            name: [tuple(index[x] for x in t) for t in ts if all(x in index for x in t)]
            for name, ts in self.relations.items()
        }
        return Structure(self.signature, len(index), rels)

    def relabel(self, perm: Mapping[int, int]) -> "Structure":
        rels = {name: [tuple(perm[x] for x in t) for t in ts] for name, ts in self.relations.items()}
        return Structure(self.signature, self.size, rels)

    def disjoint_union(self, other: "Structure") -> "Structure":
        _check_signatures(self, other)
        shift = self.size
        rels = {
            name: list(ts) + [tuple(x + shift for x in t) for t in other.relations[name]]
            for name, ts in self.relations.items()
        }
        return Structure(self.signature, self.size + other.size, rels)

    def with_isolated(self, count: int = 1) -> "Structure":
        return Structure(self.signature, self.size + count, self.relations)


def _check_signatures(src: Structure, dst: Structure):
    if not src.signature.same_symbols(dst.signature):
        raise SignatureMismatch(
            f"signatures differ: {src.signature.symbols} vs {dst.signature.symbols}")


def is_homomorphism(f: Mapping[int, int], src: Structure, dst: Structure) -> bool:
    _check_signatures(src, dst)
    if set(f) != set(src.elements) or any(v < 0 or v >= dst.size for v in f.values()):
        return False
    return all(
        tuple(f[x] for x in t) in dst.relations[name]
        for name, ts in src.relations.items() for t in ts
    )


# ---------------------------------------------------------------------------
# backtracking search with generalised arc consistency

class _Constraint:
    __slots__ = ("scope", "allowed", "vars", "eq_pairs")

    def __init__(self, scope: Tuple[int, ...], allowed: frozenset):
        self.scope = scope
        self.allowed = allowed
        self.vars = tuple(dict.fromkeys(scope))
        self.eq_pairs = [(i, j) for i, j in itertools.combinations(range(len(scope)), 2)
                         if scope[i] == scope[j]]


def _revise(c: _Constraint, domains: List[set]) -> Optional[List[int]]:
    """Prune the domains of ``c``'s variables; None on wipe-out, else changed vars."""
    support = {v: set() for v in c.vars}
    scope = c.scope
    for t in c.allowed:
        if any(t[i] != t[j] for i, j in c.eq_pairs):
            continue
        if all(t[i] in domains[v] for i, v in enumerate(scope)):
            for i, v in enumerate(scope):
                support[v].add(t[i])
    changed = []
    for v in c.vars:
        dom = domains[v]
        if len(support[v]) < len(dom):
            dom &= support[v]
            if not dom:
                return None
            changed.append(v)
    return changed


def _propagate(domains: List[set], constraints: List[_Constraint],
               watch: List[List[int]], queue: Iterable[int]) -> bool:
    queue = deque(queue)
    queued = set(queue)
    while queue:
        ci = queue.popleft()
        queued.discard(ci)
        changed = _revise(constraints[ci], domains)
        if changed is None:
            return False
        for v in changed:
            for cj in watch[v]:
                if cj != ci and cj not in queued:
                    queue.append(cj)
                    queued.add(cj)
    return True


def _build_problem(src: Structure, dst: Structure):
    constraints: Dict[Tuple[str, Tuple[int, ...]], _Constraint] = {}
    for name, ts in src.relations.items():
        allowed = dst.relations[name]
        for t in ts:
            constraints.setdefault((name, t), _Constraint(t, allowed))
    constraints = list(constraints.values())
    watch: List[List[int]] = [[] for _ in range(src.size)]
    for ci, c in enumerate(constraints):
        for v in c.vars:
            watch[v].append(ci)
    return constraints, watch


def iter_homomorphisms(src: Structure, dst: Structure,
                       pins: Optional[Mapping[int, int]] = None,
                       injective: bool = False) -> Iterator[Hom]:
    """Yield every homomorphism ``src -> dst`` extending ``pins``.

    Enumeration order is deterministic: variables are chosen by smallest
    remaining domain (ties to the lowest element), values in increasing order.
    """
    _check_signatures(src, dst)
    pins = dict(pins or {})
    for x, y in pins.items():
        if not 0 <= x < src.size:
            raise ValueError(f"pin source {x} outside source domain 0..{src.size - 1}")
        if not 0 <= y < dst.size:
            raise ValueError(f"pin target {y} outside target domain 0..{dst.size - 1}")
    if injective and src.size > dst.size:
        return
    if injective and len(set(pins.values())) < len(pins):
        return
    constraints, watch = _build_problem(src, dst)
    domains = [set(range(dst.size)) for _ in range(src.size)]
    for x, y in pins.items():
        domains[x] = {y}
    if not _propagate(domains, constraints, watch, range(len(constraints))):
        return
    yield from _extend(domains, constraints, watch, injective)


def _extend(domains, constraints, watch, injective) -> Iterator[Hom]:
    open_vars = [v for v, d in enumerate(domains) if len(d) > 1]
    if injective:
        fixed = [next(iter(d)) for d in domains if len(d) == 1]
        if len(set(fixed)) < len(fixed):
            return
    if not open_vars:
        yield {v: next(iter(d)) for v, d in enumerate(domains)}
        return
    var = min(open_vars, key=lambda v: (len(domains[v]), v))
    for value in sorted(domains[var]):
        branch = [set(d) for d in domains]
        branch[var] = {value}
        if injective:
            wiped = False
            for w in open_vars:
                if w != var:
                    branch[w].discard(value)
                    if not branch[w]:
                        wiped = True
                        break
            if wiped:
                continue
            queue = range(len(constraints))
        else:
            queue = watch[var]
        if _propagate(branch, constraints, watch, queue):
            yield from _extend(branch, constraints, watch, injective)


def find_homomorphism(src: Structure, dst: Structure,
                      pins: Optional[Mapping[int, int]] = None) -> Optional[Hom]:
    """First homomorphism extending ``pins``, or None if the exhaustive search fails."""
    return next(iter_homomorphisms(src, dst, pins), None)


def is_isomorphic(s: Structure, t: Structure) -> bool:
    _check_signatures(s, t)
    if s.size != t.size:
        return False
    if any(len(s.relations[name]) != len(t.relations[name]) for name in s.signature.names):
        return False
    # an injective homomorphism between equal-count structures is onto each relation
    return next(iter_homomorphisms(s, t, injective=True), None) is not None


def _shrinking_endomorphism(b: Structure) -> Optional[Hom]:
    """An endomorphism missing at least one element, if there is one."""
    if b.size == 1:
        return None
    for missing in b.elements:
        keep = [x for x in b.elements if x != missing]
        h = find_homomorphism(b, b.induced(keep))
        if h is not None:
            return {x: keep[y] for x, y in h.items()}
    return None


def is_core(b: Structure) -> bool:
    """True iff every endomorphism of ``b`` is an automorphism.

    On a finite structure a surjective endomorphism is a bijection that maps
    each relation injectively into itself, hence onto it; so it suffices to
    rule out endomorphisms that miss an element.
    """
    return _shrinking_endomorphism(b) is None


def core_retract(b: Structure) -> Tuple[Structure, List[int]]:
    """The core of ``b`` together with the original elements it is induced on."""
    kept = list(b.elements)
    current = b
    while True:
        h = _shrinking_endomorphism(current)
        if h is None:
            return current, kept
        image = sorted(set(h.values()))
        kept = [kept[i] for i in image]
        current = current.induced(image)


def core_of(b: Structure) -> Structure:
    return core_retract(b)[0]


def power_structure(b: Structure, k: int, max_size: int = DEFAULT_POWER_BOUND) -> Structure:
    """The ``k``-th direct power; element ``i`` is the ``i``-th k-tuple in lexicographic order."""
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    if b.size ** k > max_size:
        raise OverflowError(f"{b.size}^{k} elements exceeds the bound {max_size}")

    def index(coords):
        i = 0
        for x in coords:
            i = i * b.size + x
        return i

    rels = {}
    for name, arity in b.signature:
        rels[name] = [
            tuple(index(col) for col in zip(*rows))
            for rows in itertools.product(sorted(b.relations[name]), repeat=k)
        ]
    return Structure(b.signature, b.size ** k, rels)


def reduct(s: Structure, keep: Iterable[str]) -> Structure:
    keep = list(keep)
    unknown = [name for name in keep if name not in s.signature]
    if unknown:
        raise KeyError(f"unknown symbols {unknown}")
    sig = s.signature.restrict(keep)
    return Structure(sig, s.size, {name: s.relations[name] for name in sig.names})
