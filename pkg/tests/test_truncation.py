import pytest

from app.acceptance import map_catalog
from app.complexes.adc import AugmentedDirectedComplex, is_isomorphism
from app.complexes.chains import Chain
from app.complexes.shapes import (
    boundary_disk,
    collapse_map,
    disk,
    identity_map,
    inclusion_map,
    oriental,
    simplicial_operator,
    wedge,
)
from app.homotopy.posets import chain, poset_iso
from app.homotopy.truncation import (
    disk_truncation,
    disk_truncation_displayed,
    enriched_equivalent,
    is_n_connected,
    is_n_directed,
    is_n_equivalence,
    is_n_faithful,
    is_n_full,
    is_n_truncated,
    lift_table,
    theta_truncation,
    truncate0,
    truncate1,
)

CAP = 2


# ------------------------------------------------------------------
# Trunkierungen
# ------------------------------------------------------------------


@pytest.mark.parametrize(
    "m, n, expected",
    [(0, 0, 0), (0, 5, 1), (1, 3, 2), (2, 2, 2), (2, 3, 3), (4, 2, 2)],
)
def test_disk_truncation(m, n, expected):
    assert disk_truncation(m, n) == expected


def test_displayed_formula_differs_on_the_diagonal():
    assert disk_truncation_displayed(2, 2) == 3
    assert disk_truncation_displayed(1, 3) == disk_truncation(1, 3)


def test_theta_truncation():
    assert theta_truncation([1, 3], 1) == (1, 2)
    assert theta_truncation([], 4) == ()


def test_truncate0_of_wedge():
    assert poset_iso(truncate0(wedge(disk(1), disk(1)), CAP), chain(2))
    assert len(truncate0(disk(0), CAP)) == 1


def test_truncate1_of_triangle():
    C = truncate1(oriental(2), CAP)
    assert C.objects == ("0", "1", "2")
    assert len(C.hom("0", "2")) == 2
    assert len(C.hom("2", "0")) == 0
    composite = C.compose(("1", "2", "12"), ("0", "1", "01"))
    assert composite == "01+12"
    assert C.hom("0", "2").maximum() == composite
    assert C.composition_errors() == []


def test_truncate1_json():
    document = truncate1(disk(1), CAP).to_json()
    assert document["objects"] == ["⊥", "⊤"]
    assert len(document["homs"]) == 4
    assert document["composition_errors"] == []


def test_enriched_equivalence_of_disks():
    assert enriched_equivalent(truncate1(disk(3), CAP), truncate1(disk(2), CAP))
    assert not enriched_equivalent(truncate1(disk(1), CAP), truncate1(disk(2), CAP))


# ------------------------------------------------------------------
# Lift-Prädikate
# ------------------------------------------------------------------


def test_boundary_inclusion():
    f = inclusion_map(boundary_disk(1), disk(1))
    assert is_n_full(f, 0, CAP)
    verdict = is_n_full(f, 1, CAP)
    assert not verdict
    assert verdict.witness is not None
    assert verdict.cap == CAP


def test_collapse_of_arrow():
    f = collapse_map(disk(1))
    assert is_n_connected(f, -1, CAP)
    assert not is_n_connected(f, 0, CAP)
    assert not is_n_faithful(f, 0, CAP)
    assert is_n_faithful(f, 1, CAP)


def test_identity_satisfies_everything():
    f = identity_map(oriental(2))
    assert is_n_connected(f, 1, CAP)
    assert is_n_truncated(f, 0, CAP)
    assert is_n_equivalence(f, 2, CAP)


def test_lift_counts_of_face():
    rows = lift_table(simplicial_operator(1, 2, [0, 2]), 0, CAP)
    assert [row.lifts for row in rows] == [1, 0, 1]


def test_whitehead_detects_collapse():
    verdict = is_n_equivalence(collapse_map(disk(1)), 0, CAP)
    assert not verdict
    assert "bijektiv" in verdict.witness


def test_directedness():
    assert is_n_directed(oriental(2), 2, CAP)
    a, b = Chain.generator(0, "a"), Chain.generator(0, "b")
    X = AugmentedDirectedComplex("zyklus", (("a", "b"), ("e", "f")), {"e": b - a, "f": a - b})
    assert not is_n_directed(X, 0, CAP)


@pytest.mark.parametrize("entry", map_catalog(), ids=lambda e: e.key)
def test_connectivity_and_truncation_are_monotone(entry):
    f = entry.map
    for n in range(-1, 2):
        if is_n_connected(f, n, CAP):
            assert is_n_connected(f, n - 1, CAP)
        if is_n_truncated(f, n, CAP):
            assert is_n_truncated(f, n + 1, CAP)


@pytest.mark.parametrize("entry", map_catalog(), ids=lambda e: e.key)
def test_connected_and_truncated_only_for_isomorphisms(entry):
    f = entry.map
    for n in range(-1, 2):
        both = bool(is_n_connected(f, n, CAP)) and bool(is_n_truncated(f, n, CAP))
        assert both == is_isomorphism(f)
