"""Brute-force reference implementations shared by the tests.

These deliberately avoid the package's search engine and game evaluator.
"""

import itertools

from qcsp.logic import EXISTS, Const


def all_maps(src_size, dst_size):
    for values in itertools.product(range(dst_size), repeat=src_size):
        yield dict(enumerate(values))


def preserves(f, src, dst):
    return all(tuple(f[x] for x in t) in dst.relations[name]
               for name, ts in src.relations.items() for t in ts)


def brute_homomorphisms(src, dst, pins=None):
    pins = pins or {}
    return [f for f in all_maps(src.size, dst.size)
            if all(f[x] == y for x, y in pins.items()) and preserves(f, src, dst)]


def brute_is_core(b):
    """Every endomorphism is bijective and reflects tuples."""
    for f in brute_homomorphisms(b, b):
        if len(set(f.values())) != b.size:
            return False
        for name, ts in b.relations.items():
            if {tuple(f[x] for x in t) for t in ts} != set(ts):
                return False
    return True


def brute_isomorphic(s, t):
    if s.size != t.size:
        return False
    for perm in itertools.permutations(range(t.size)):
        f = dict(enumerate(perm))
        if all({tuple(f[x] for x in tup) for tup in s.relations[name]} == set(t.relations[name])
               for name in s.signature.names):
            return True
    return False


def leaf_game(b, phi):
    """QCSP by full game-tree expansion; atoms are only checked at the leaves."""
    if phi.is_bottom:
        return False

    def value(term, env):
        return term.value if isinstance(term, Const) else env[term]

    def go(i, env):
        if i == len(phi.prefix):
            return all(tuple(value(t, env) for t in a.args) in b.relations[a.symbol]
                       for a in phi.body)
        q, v = phi.prefix[i]
        results = (go(i + 1, {**env, v: x}) for x in b.elements)
        return any(results) if q == EXISTS else all(results)

    return go(0, {})
