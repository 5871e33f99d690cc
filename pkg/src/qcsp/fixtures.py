"""The fixed zoo of small structures used by examples, tests and the verify harness."""

from __future__ import annotations

from .structures import Signature, Structure

EDGE = Signature((("E", 2),))
UNARY_PAIR = Signature((("U0", 1), ("U1", 1)))


def complete_digraph(n: int) -> Structure:
    return Structure(EDGE, n, {"E": [(x, y) for x in range(n) for y in range(n) if x != y]})


K2 = complete_digraph(2)
K3 = complete_digraph(3)
P1 = Structure(EDGE, 2, {"E": [(0, 1)]})
U2 = Structure(UNARY_PAIR, 2, {"U0": [(0,)], "U1": [(1,)]})
L1 = Structure(EDGE, 1, {"E": [(0, 0)]})

FIXTURES = {"K2": K2, "K3": K3, "P1": P1, "U2": U2, "L1": L1}
