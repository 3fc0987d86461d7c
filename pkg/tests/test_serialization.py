import json

import pytest
from pydantic import ValidationError

from app.complexes.adc import validate_map
from app.complexes.serialization import (
    complex_to_json,
    dumps,
    load_complex,
    load_map,
    map_to_json,
)
from app.complexes.shapes import disk, oriental, simplicial_operator


def test_complex_document_layout():
    assert complex_to_json(oriental(1)) == {
        "name": "oriental(1)",
        "generators": [["0", "1"], ["01"]],
        "differential": {"01": [[-1, "0"], [1, "1"]]},
    }


def test_endpoints_are_written_when_present():
    document = complex_to_json(disk(1))
    assert document["endpoints"] == ["⊥", "⊤"]


def test_load_restores_complex():
    X = oriental(2)
    assert load_complex(dumps(complex_to_json(X))) == X


def test_dumps_is_deterministic():
    text = dumps(complex_to_json(oriental(2)))
    assert text.endswith("\n")
    assert text == dumps(json.loads(text))


def test_unknown_field_is_rejected():
    with pytest.raises(ValidationError):
        load_complex('{"name": "x", "generators": [], "bogus": 1}')


def test_differential_of_unknown_generator():
    with pytest.raises(ValueError):
        load_complex('{"name": "x", "generators": [["a"]], "differential": {"e": []}}')


def test_map_document():
    f = simplicial_operator(1, 2, [0, 2])
    g = load_map(dumps(map_to_json(f)), f.source, f.target)
    assert validate_map(g).ok
    assert g.image("01") == f.image("01")
    assert g.name == f.name
