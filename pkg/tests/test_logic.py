import random

import pytest

from qcsp.fixtures import EDGE, FIXTURES, K2, L1, UNARY_PAIR
from qcsp.generate import random_sentence
from qcsp.logic import (EXISTS, FORALL, Atom, Const, PartitionedStructure, PHSentence, atom,
                        canonical_database, canonical_query, from_partitioned,
                        normalize_alternation, pp, to_partitioned)
from qcsp.solvers import csp_eval, qcsp_eval
from qcsp.structures import Structure, find_homomorphism


def A(v):
    return (FORALL, v)


def E(v):
    return (EXISTS, v)


def rename_invariant(phi):
    """Sentence shape with variables replaced by prefix positions."""
    pos = {v: i for i, v in enumerate(phi.variables)}
    return ([q for q, _ in phi.prefix],
            sorted((a.symbol, tuple(pos[t] for t in a.args)) for a in phi.body))


def test_sentence_validation():
    with pytest.raises(ValueError):
        PHSentence((E("x"), E("x")), ())
    with pytest.raises(ValueError):
        PHSentence((E("x"),), (atom("E", "x", "y"),))
    with pytest.raises(ValueError):
        PHSentence((E("x"),), (), is_bottom=True)
    assert PHSentence.bottom().is_bottom


def test_canonical_database_examples():
    db, pins = canonical_database(pp(["v1", "v2"], [atom("E", "v1", "v2")]))
    assert db == Structure(EDGE, 2, {"E": [(0, 1)]}) and pins == {}
    db, pins = canonical_database(pp(["v"], [atom("E", "v", "v")]))
    assert db == Structure(EDGE, 1, {"E": [(0, 0)]}) and pins == {}
    db, pins = canonical_database(pp(["v"], [atom("E", 1, "v")]), K2.signature)
    assert db == Structure(EDGE, 2, {"E": [(0, 1)]}) and pins == {0: 1}


def test_canonical_database_errors():
    with pytest.raises(ValueError):
        canonical_database(PHSentence.bottom())
    with pytest.raises(ValueError):
        canonical_database(PHSentence((A("u"),), ()))


def test_canonical_query_examples():
    q = canonical_query(K2)
    assert q.prefix == (E("x0"), E("x1"))
    assert set(q.body) == {atom("E", "x0", "x1"), atom("E", "x1", "x0")}
    assert canonical_query(L1) == pp(["x0"], [atom("E", "x0", "x0")])


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_canonical_query_true_on_itself(name):
    b = FIXTURES[name]
    assert csp_eval(b, canonical_query(b))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_adjunction_and_query_of_database(name):
    b = FIXTURES[name]
    rng = random.Random(name)
    for _ in range(150):
        phi = random_sentence(rng, b.signature, 4, 4, universal_prob=0.0, min_vars=1)
        db = canonical_database(phi, b.signature).structure
        assert csp_eval(b, phi) == (find_homomorphism(db, b) is not None)
        for other in FIXTURES.values():
            if other.signature.same_symbols(b.signature):
                assert csp_eval(other, canonical_query(db)) == csp_eval(other, phi)


def test_to_partitioned_examples():
    p = to_partitioned(PHSentence((A("u1"), E("v1")), (atom("E", "u1", "v1"),)))
    assert p.base == Structure(EDGE, 2, {"E": [(0, 1)]})
    assert p.blocks == ((FORALL, 0), (EXISTS, 1))
    p = to_partitioned(pp(["v1"], [atom("E", "v1", "v1")]))
    assert p.base == Structure(EDGE, 1, {"E": [(0, 0)]}) and p.blocks == ((EXISTS, 0),)
    p = to_partitioned(PHSentence((A("u1"), A("u2"), E("v1")), (atom("E", "u1", "v1"),)))
    assert p.blocks == ((FORALL, 0), (FORALL, 1), (EXISTS, 2))
    assert not any(1 in t for t in p.base.relations["E"])


def test_to_partitioned_errors():
    with pytest.raises(ValueError):
        to_partitioned(PHSentence.bottom())
    with pytest.raises(ValueError):
        to_partitioned(pp(["v"], [atom("E", "v", 0)]))


def test_from_partitioned_examples():
    base = Structure(EDGE, 2, {"E": [(0, 1)]})
    phi = from_partitioned(PartitionedStructure(base, ((FORALL, 0), (EXISTS, 1))))
    assert phi == PHSentence((A("u1"), E("v1")), (atom("E", "u1", "v1"),))
    loop = Structure(EDGE, 1, {"E": [(0, 0)]})
    phi = from_partitioned(PartitionedStructure(loop, ((FORALL, None), (EXISTS, 0))))
    assert phi == pp(["v1"], [atom("E", "v1", "v1")])
    original = PHSentence((A("u1"), E("v1")), (atom("E", "u1", "v1"),))
    assert from_partitioned(to_partitioned(original)) == original


def test_partition_invariant_rejected():
    base = Structure(EDGE, 2, {})
    with pytest.raises(ValueError):
        PartitionedStructure(base, ((FORALL, 0), (EXISTS, 0)))
    with pytest.raises(ValueError):
        PartitionedStructure(base, ((FORALL, 0),))
    with pytest.raises(ValueError):
        PartitionedStructure(base, (("X", 0), (EXISTS, 1)))


def test_partition_round_trip_random():
    rng = random.Random(3)
    for signature in (EDGE, UNARY_PAIR):
        for _ in range(300):
            phi = random_sentence(rng, signature, 6, 6, min_vars=1)
            p = to_partitioned(phi, signature)
            back = from_partitioned(p)
            assert back.prefix == phi.prefix and set(back.body) == set(phi.body)
            anonymous = PartitionedStructure(p.base, p.blocks)
            assert rename_invariant(from_partitioned(anonymous)) == rename_invariant(phi)


def test_normalize_alternation_examples():
    phi = pp(["v"], [atom("E", "v", "v")])
    assert normalize_alternation(phi) == PHSentence((A("d1"), E("v")), phi.body)
    body = (atom("E", "u1", "v"),)
    phi = PHSentence((A("u1"), A("u2"), E("v")), body)
    assert normalize_alternation(phi) == PHSentence((A("u1"), E("d1"), A("u2"), E("v")), body)
    phi = PHSentence((A("u"), E("v"), A("w"), E("z")), ())
    assert normalize_alternation(phi) is phi


def test_normalize_alternation_avoids_name_clash():
    phi = PHSentence((E("d1"),), (atom("E", "d1", "d1"),))
    out = normalize_alternation(phi)
    assert out.prefix == (A("d2"), E("d1"))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_normalize_alternation_preserves_truth(name):
    b = FIXTURES[name]
    rng = random.Random(f"norm-{name}")
    for _ in range(200):
        phi = random_sentence(rng, b.signature, 5, 5)
        out = normalize_alternation(phi)
        qs = [q for q, _ in out.prefix]
        assert qs == [FORALL, EXISTS] * (len(qs) // 2)
        assert qcsp_eval(b, out) == qcsp_eval(b, phi)


def test_const_and_atom_rendering():
    assert str(atom("E", "x", 3)) == "E(x,@3)"
    assert atom("E", "x", 3).args == ("x", Const(3))
    assert Atom("R", ["a"]).args == ("a",)
