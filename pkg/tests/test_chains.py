import pytest

from app.complexes.chains import Chain, chain_label


def test_of_is_canonical():
    c = Chain.of(1, [("b", 2), ("a", 1), ("b", -2), ("c", 3)])
    assert c.terms == (("a", 1), ("c", 3))
    assert c == Chain.of(1, {"c": 3, "a": 1})


def test_positive_and_negative_parts():
    c = Chain.of(0, {"1": 1, "0": -1})
    assert not c.is_positive
    assert c.positive_part() == Chain.generator(0, "1")
    assert c.negative_part() == Chain.generator(0, "0")
    assert c.positive_part() - c.negative_part() == c


def test_arithmetic_checks_degree():
    with pytest.raises(ValueError):
        Chain.generator(0, "a") + Chain.generator(1, "e")


def test_str_and_label():
    assert str(Chain.of(1, {"01": 1, "12": 1})) == "01+12"
    assert str(Chain.of(1, {"02": -2, "01": 1})) == "01-2*02"
    assert chain_label(Chain.zero(1)) == "id"
    assert chain_label(Chain.generator(0, "⊥")) == "⊥"


def test_shifted_and_renamed():
    c = Chain.of(0, {"a": 1, "b": -1})
    assert c.shifted(1).degree == 1
    assert c.renamed({"a": "b"}).is_zero
