import pytest

from app.cells.tables import OrientedBasePoint
from app.complexes.adc import ADCMap, compose_maps
from app.complexes.chains import Chain
from app.complexes.shapes import (
    collapse_map,
    identity_map,
    oriental,
    relabel,
    simplicial_operator,
)
from app.homotopy.fibers import InvalidObject, les_exactness_check, oriented_right_fiber_pi0
from app.homotopy.posets import chain, poset_iso

CAP = 2


def vertex(name: str) -> Chain:
    return Chain.generator(0, name)


def objects(a: str, b: str) -> OrientedBasePoint:
    return OrientedBasePoint(((vertex(a), vertex(b)),))


def face_02():
    return simplicial_operator(1, 2, [0, 2])


def test_fiber_of_face_over_top_vertex():
    P = oriented_right_fiber_pi0(face_02(), "2", CAP)
    assert set(P) == {"(0,02)", "(0,01+12)", "(1,id)"}
    assert len(P.covers()) == 2
    assert P.minimum() == "(0,02)"
    assert not P.le("(0,01+12)", "(1,id)")
    assert not P.le("(1,id)", "(0,01+12)")


def test_lax_fiber_is_a_chain():
    P = oriented_right_fiber_pi0(face_02(), "2", CAP, convention="lax")
    assert poset_iso(P, chain(2))
    assert P.minimum() == "(0,01+12)"
    assert P.maximum() == "(1,id)"


def test_fiber_of_collapse():
    P = oriented_right_fiber_pi0(collapse_map(oriental(2)), "•", CAP)
    assert poset_iso(P, chain(2))


def test_fiber_over_non_object():
    with pytest.raises(InvalidObject):
        oriented_right_fiber_pi0(face_02(), "7", CAP)
    with pytest.raises(InvalidObject):
        oriented_right_fiber_pi0(face_02(), "01", CAP)


def test_unknown_convention():
    with pytest.raises(ValueError):
        oriented_right_fiber_pi0(face_02(), "2", CAP, convention="sideways")


@pytest.mark.parametrize(
    "f, Z",
    [
        (identity_map(oriental(1)), objects("0", "1")),
        (collapse_map(oriental(2)), objects("0", "2")),
        (simplicial_operator(1, 2, [0, 2]), objects("0", "1")),
    ],
)
def test_exactness_at_level_zero(f, Z):
    report = les_exactness_check(f, Z, 0, CAP)
    assert report.ok, report.failures()
    assert report.to_json()["ok"]


def test_exactness_at_level_one():
    Z = objects("0", "2").extend(Chain.generator(1, "02"), Chain.of(1, {"01": 1, "12": 1}))
    report = les_exactness_check(identity_map(oriental(2)), Z, 1, CAP)
    assert report.ok
    assert len(report.fiber) == 2


def test_exactness_rejects_high_levels():
    with pytest.raises(ValueError):
        les_exactness_check(identity_map(oriental(1)), objects("0", "1"), 2, CAP)
    with pytest.raises(ValueError):
        les_exactness_check(identity_map(oriental(1)), objects("0", "1"), 1, CAP)


def test_exactness_detects_swapped_convention():
    report = les_exactness_check(face_02(), objects("0", "1"), 0, CAP, convention="lax")
    assert not report.ok
    assert {v.item for v in report.failures()} == {4}
    assert {v.element for v in report.failures()} == {"02 ≤ 01+12", "01+12 ≤ 02"}


def test_order_item_on_face():
    report = les_exactness_check(face_02(), objects("0", "1"), 0, CAP)
    order = [v for v in report.verdicts if v.item == 4]
    assert len(order) == 2
    assert {v.element: v.criterion for v in order} == {"02 ≤ 01+12": True, "01+12 ≤ 02": False}


def test_foot_of_wrong_degree():
    with pytest.raises(InvalidObject):
        oriented_right_fiber_pi0(
            identity_map(oriental(1)), Chain.generator(1, "1"), CAP, basepoint=objects("0", "1")
        )


def test_fiber_is_invariant_under_relabeling():
    renamed = relabel(oriental(1), {"0": "a", "1": "b", "01": "ab"})
    back = ADCMap(
        renamed,
        oriental(1),
        {"a": vertex("0"), "b": vertex("1"), "ab": Chain.generator(1, "01")},
    )
    P = oriented_right_fiber_pi0(compose_maps(face_02(), back), "2", CAP)
    assert poset_iso(P, oriented_right_fiber_pi0(face_02(), "2", CAP))
    assert P.minimum() == "(a,02)"
    assert set(P) == {"(a,02)", "(a,01+12)", "(b,id)"}
