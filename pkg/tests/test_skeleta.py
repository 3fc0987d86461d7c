import pytest

from app.complexes.chains import Chain
from app.complexes.shapes import cube, disk, identity_map, oriental
from app.homotopy.posets import poset_iso
from app.skeleta.nerve import nondegenerate, skeleton, stratified_nerve
from app.skeleta.obstruction import (
    IncompatibleF,
    SkeletalFunctor,
    brute_force_extensions,
    obstruction_factors,
    obstruction_poset,
    verify_skeletal_pushout,
    wedge_cofiber_profile,
)

CAP = 2


# ------------------------------------------------------------------
# Nerven
# ------------------------------------------------------------------


def test_nerve_of_point():
    S = stratified_nerve(disk(0), 3, CAP)
    assert S.counts() == (1, 1, 1, 1)
    assert nondegenerate(S, 1) == ([], [])


def test_nerve_of_arrow():
    S = stratified_nerve(oriental(1), 2, CAP)
    assert S.counts() == (2, 3, 4)
    assert len(S.nondegenerate(1)) == 1
    assert S.nondegenerate(2) == []


def test_nerve_of_triangle():
    S = stratified_nerve(oriental(2), 3, CAP)
    assert S.counts()[:2] == (3, 7)
    assert S.simplicial_identity_errors() == []
    assert wedge_cofiber_profile(S, 2) == (3, 1)


def test_arrow_of_disk_is_categorical_sphere():
    assert wedge_cofiber_profile(stratified_nerve(disk(1), 2, CAP), 1) == (1, 0)


def test_skeleta():
    S = stratified_nerve(oriental(2), 2, CAP)
    assert skeleton(S, 2) is S
    assert skeleton(S, 1).count(2) == S.count(2) - 4
    assert skeleton(S, 1).parent is S
    for m in range(3):
        assert skeleton(S, 0).count(m) == S.count(0)
        assert skeleton(S, -1).count(m) == 0


@pytest.mark.parametrize("X", [oriental(2), cube(2)], ids=["oriental", "cube"])
def test_skeletal_pushout_counts(X):
    S = stratified_nerve(X, 2, CAP)
    for n in range(3):
        report = verify_skeletal_pushout(S, n)
        assert report.ok, report.to_json()


def test_pushout_rejects_dimension_out_of_range():
    with pytest.raises(ValueError):
        verify_skeletal_pushout(stratified_nerve(oriental(1), 1, CAP), 2)


# ------------------------------------------------------------------
# Hindernisse
# ------------------------------------------------------------------


def edge_nerve():
    return stratified_nerve(oriental(1), 2, CAP)


@pytest.mark.parametrize(
    "vertex_map, size",
    [({"0": "0", "1": "2"}, 2), ({"0": "2", "1": "0"}, 0), ({"0": "1", "1": "1"}, 1)],
)
def test_edge_extensions(vertex_map, size):
    F = SkeletalFunctor.from_vertex_map(edge_nerve(), oriental(2), vertex_map)
    formula = obstruction_poset(F, CAP)
    assert len(formula) == size
    assert poset_iso(formula, brute_force_extensions(F, CAP))


def test_factor_kinds():
    (factor,) = obstruction_factors(
        SkeletalFunctor.from_vertex_map(edge_nerve(), oriental(2), {"0": "0", "1": "2"}), CAP
    )
    assert factor.kind == "disk"
    assert len(factor.poset) == 2

    triangle = stratified_nerve(oriental(2), 2, CAP)
    F = SkeletalFunctor.from_chain_map(triangle, identity_map(oriental(2)), 1)
    kinds = sorted(factor.kind for factor in obstruction_factors(F, CAP))
    assert kinds == ["collapsed", "disk", "disk", "disk"]
    assert len(obstruction_poset(F, CAP)) == 1


def test_vertex_map_must_cover_objects():
    with pytest.raises(IncompatibleF):
        SkeletalFunctor.from_vertex_map(edge_nerve(), oriental(2), {"0": "0"})
    with pytest.raises(IncompatibleF):
        SkeletalFunctor.from_vertex_map(edge_nerve(), oriental(2), {"0": "0", "1": "01"})


def test_inconsistent_faces_are_reported():
    S = edge_nerve()
    F0 = SkeletalFunctor.from_vertex_map(S, oriental(2), {"0": "0", "1": "1"})
    (edge,) = S.nondegenerate(1)
    bad = (Chain.generator(0, "0"), Chain.generator(0, "2"), Chain.generator(1, "02"))
    F = SkeletalFunctor(S, oriental(2), 1, {**F0.assignment, (1, edge): bad})
    errors = F.compatibility_errors()
    assert any("d0F" in error for error in errors)
    with pytest.raises(IncompatibleF):
        F.require_compatible()
