"""Polymorphisms and near-unanimity operations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .structures import DEFAULT_POWER_BOUND, Structure, find_homomorphism, power_structure


@dataclass(frozen=True)
class OperationTable:
    """A total ``arity``-ary operation on ``0..domain_size-1``.

    ``table[i]`` is the value on the ``i``-th argument tuple in lexicographic
    order, the same order :func:`power_structure` uses for its elements.
    """

    arity: int
    domain_size: int
    table: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(x) for x in self.table))
        if self.arity < 1 or self.domain_size < 1:
            raise ValueError("arity and domain size must be positive")
        if len(self.table) != self.domain_size ** self.arity:
            raise ValueError(f"table has {len(self.table)} cells, expected "
                             f"{self.domain_size}^{self.arity}")
        if any(not 0 <= x < self.domain_size for x in self.table):
            raise ValueError("table values must lie in the domain")

    @classmethod
    def from_function(cls, arity: int, domain_size: int,
                      fn: Callable[..., int]) -> "OperationTable":
        return cls(arity, domain_size,
                   tuple(fn(*args) for args in itertools.product(range(domain_size), repeat=arity)))

    def index(self, args: Sequence[int]) -> int:
        i = 0
        for x in args:
            i = i * self.domain_size + x
        return i

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise TypeError(f"expected {self.arity} arguments, got {len(args)}")
        return self.table[self.index(args)]

    def rows(self):
        for args in itertools.product(range(self.domain_size), repeat=self.arity):
            yield args, self.table[self.index(args)]


def majority(domain_size: int = 2) -> OperationTable:
    """Ternary majority; on three distinct arguments it returns the first."""
    def maj(x, y, z):
        return y if y == z else x
    return OperationTable.from_function(3, domain_size, maj)


def projection(arity: int, domain_size: int, coordinate: int = 0) -> OperationTable:
    return OperationTable.from_function(arity, domain_size, lambda *xs: xs[coordinate])


def is_polymorphism(b: Structure, f: OperationTable) -> bool:
    """Does ``f`` applied coordinatewise keep every relation of ``b`` closed?"""
    if f.domain_size != b.size:
        raise ValueError(f"operation on {f.domain_size} elements, structure has {b.size}")
    for name, _ in b.signature:
        rel = b.relations[name]
        for rows in itertools.product(rel, repeat=f.arity):
            if tuple(f(*col) for col in zip(*rows)) not in rel:
                return False
    return True


def nu_forced_value(args: Sequence[int]) -> Optional[int]:
    """The value an NU operation must take on ``args``, if the NU identities fix it."""
    k = len(args)
    for x in set(args):
        if args.count(x) >= k - 1:
            return x
    return None


def is_near_unanimity(f: OperationTable) -> bool:
    if f.arity < 3:
        raise ValueError("near-unanimity operations have arity at least 3")
    return all(
        value == forced
        for args, value in f.rows()
        if (forced := nu_forced_value(args)) is not None
    )


def find_nu(b: Structure, k: int, max_cells: int = DEFAULT_POWER_BOUND) -> Optional[OperationTable]:
    """Search for a ``k``-ary near-unanimity polymorphism of ``b``.

    Cells fixed by the NU identities are pinned; the free cells are then
    searched as a homomorphism from the ``k``-th power of ``b`` into ``b``.
    None means no such operation of this arity exists.
    """
    if k < 3:
        raise ValueError("near-unanimity operations have arity at least 3")
    if b.size ** k > max_cells:
        raise OverflowError(f"{b.size}^{k} table cells exceeds the bound {max_cells}")
    power = power_structure(b, k, max_size=max_cells)
    pins = {}
    for i, args in enumerate(itertools.product(range(b.size), repeat=k)):
        forced = nu_forced_value(args)
        if forced is not None:
            pins[i] = forced
    h = find_homomorphism(power, b, pins)
    if h is None:
        return None
    return OperationTable(k, b.size, tuple(h[i] for i in range(power.size)))
