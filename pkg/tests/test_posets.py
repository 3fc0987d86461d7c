import pytest

from app.homotopy.posets import (
    Poset,
    antichain,
    boolean_lattice,
    chain,
    empty_poset,
    inversion_set,
    poset_iso,
    poset_product,
    weak_order,
    weak_order_generated,
)


def test_chain_and_antichain():
    assert len(chain(3)) == 4
    assert len(chain(3).covers()) == 3
    assert antichain(3).covers() == []
    assert chain(2).rank_profile() == (1, 1, 1)


def test_boolean_lattice():
    B = boolean_lattice(2)
    assert set(B) == {"∅", "{1}", "{2}", "{1,2}"}
    assert B.minimum() == "∅"
    assert B.maximum() == "{1,2}"
    assert not B.le("{1}", "{2}")
    assert B.rank_profile() == (1, 2, 1)


def test_weak_order_of_s3():
    S3 = weak_order(3)
    assert len(S3) == 6
    assert len(S3.covers()) == 6
    assert S3.rank_profile() == (1, 2, 2, 1)
    assert S3.minimum() == "123"
    assert S3.maximum() == "321"


@pytest.mark.parametrize("n", range(5))
def test_weak_order_definitions_agree(n):
    assert weak_order(n).same_as(weak_order_generated(n))


def test_inversion_set():
    assert inversion_set((2, 1, 3)) == {(1, 2)}
    assert inversion_set((1, 2, 3)) == frozenset()


def test_relation_cycles_are_condensed():
    P = Poset.from_relation(["a", "b", "c"], [("a", "b"), ("b", "a"), ("b", "c")])
    assert P.elements == ("a", "c")
    assert P.condensed
    assert P.class_of("b") == "a"
    assert P.le("b", "c")
    assert not P.lt("a", "b")


def test_duplicate_labels_are_rejected():
    with pytest.raises(ValueError):
        Poset.from_relation(["a", "a"], [])


def test_isomorphism():
    assert poset_iso(boolean_lattice(2), poset_product(chain(1), chain(1)))
    assert poset_iso(empty_poset(), empty_poset())

    mismatch = poset_iso(chain(2), antichain(3))
    assert not mismatch
    assert mismatch.mismatch.startswith("Überdeckungen")
    assert poset_iso(chain(1), chain(2)).mismatch.startswith("Größen")


def test_subposet_keeps_order():
    S = weak_order(3).subposet(["123", "213", "321"])
    assert len(S) == 3
    assert S.le("123", "321")
    assert S.covers() == [("123", "213"), ("213", "321")]


def test_outputs():
    assert chain(1).to_json() == {"elements": ["0", "1"], "leq": [[0, 0], [0, 1], [1, 1]]}
    dot = chain(1).to_dot()
    assert dot.startswith('digraph "[1]" {')
    assert "rankdir=BT;" in dot
    assert '"0" -> "1";' in dot
