import pytest

from app.complexes.adc import (
    ADCMap,
    AugmentedDirectedComplex,
    compose_maps,
    complex_isomorphism,
    is_isomorphism,
    loop_graph,
    validate,
    validate_map,
)
from app.complexes.chains import Chain
from app.complexes.shapes import (
    WedgeError,
    boundary_disk,
    collapse_map,
    core,
    cube,
    disk,
    dual_co,
    dual_op,
    empty_complex,
    gray_tensor,
    identity_map,
    oriental,
    point,
    simplicial_operator,
    suspension,
    wedge,
)


def two_cycle() -> AugmentedDirectedComplex:
    a, b = Chain.generator(0, "a"), Chain.generator(0, "b")
    return AugmentedDirectedComplex(
        "zwei-zyklus", (("a", "b"), ("e", "f")), {"e": b - a, "f": a - b}
    )


# ------------------------------------------------------------------
# Validierung
# ------------------------------------------------------------------


def test_oriental_validates():
    assert validate(oriental(3)).ok


def test_arrow_without_boundary_is_not_unital():
    X = AugmentedDirectedComplex("lose", (("a",), ("e",)), {})
    diagnostics = validate(X)
    assert not diagnostics.ok
    assert "atom" in diagnostics.kinds()


def test_two_cycle_violates_loop_freeness():
    diagnostics = validate(two_cycle())
    assert "loop" in diagnostics.kinds()
    assert not diagnostics.ok


def test_loop_graph_edges():
    graph = loop_graph(oriental(1))
    assert graph.has_edge("0", "01")
    assert graph.has_edge("01", "1")


def test_duplicate_generator_is_rejected():
    with pytest.raises(ValueError):
        AugmentedDirectedComplex("doppelt", (("a", "a"),))


# ------------------------------------------------------------------
# Standardformen
# ------------------------------------------------------------------


def test_disks():
    assert disk(0).counts() == (1,)
    assert disk(2).counts() == (2, 2, 1)
    assert boundary_disk(1).counts() == (2,)
    assert boundary_disk(1).differential == {}
    assert boundary_disk(0).counts() == ()
    for n in range(4):
        assert validate(disk(n)).ok
        assert validate(boundary_disk(n)).ok


def test_oriental_counts_and_boundary():
    assert oriental(2).counts() == (3, 3, 1)
    assert oriental(3).counts() == (4, 6, 4, 1)
    assert oriental(1).boundary("01") == Chain.of(0, {"1": 1, "0": -1})


def test_gray_tensor_of_arrows():
    square = gray_tensor(oriental(1), oriental(1))
    assert square.counts() == (4, 4, 1)
    expected = Chain.of(1, {"1⊗01": 1, "01⊗0": 1, "0⊗01": -1, "01⊗1": -1})
    assert square.boundary("01⊗01") == expected
    assert validate(square).ok


def test_gray_tensor_unit():
    assert complex_isomorphism(gray_tensor(oriental(2), point()), oriental(2)) is not None


@pytest.mark.parametrize("n, counts", [(1, (2, 1)), (2, (4, 4, 1)), (3, (8, 12, 6, 1))])
def test_cube_counts(n, counts):
    assert cube(n).counts() == counts
    assert validate(cube(n)).ok


def test_suspension():
    assert suspension(empty_complex()).same_structure(boundary_disk(1))
    assert suspension(disk(1)).same_structure(disk(2))
    assert suspension(oriental(1)).endpoints == ("⊥", "⊤")


def test_wedge():
    W = wedge(suspension(oriental(1)), suspension(oriental(2)))
    assert len(W.in_degree(0)) == 3
    assert W.endpoints == ("0", "2")
    assert validate(W).ok


def test_wedge_needs_endpoints():
    with pytest.raises(WedgeError):
        wedge(oriental(1))
    with pytest.raises(WedgeError):
        wedge()


def test_core():
    assert core(oriental(3), 1).counts() == (4, 6)
    assert core(oriental(2), 5) is oriental(2)
    assert core(cube(2), 0).counts() == (4,)


def test_duals_are_involutions():
    X = oriental(2)
    assert dual_op(dual_op(X)) == X
    assert dual_co(dual_co(X)) == X
    assert dual_op(oriental(1)).boundary("01") == Chain.of(0, {"0": 1, "1": -1})
    assert dual_co(oriental(1)).boundary("01") == oriental(1).boundary("01")
    assert validate(dual_op(X)).ok


# ------------------------------------------------------------------
# Abbildungen
# ------------------------------------------------------------------


def test_simplicial_operators_are_maps():
    assert validate_map(simplicial_operator(1, 2, [0, 2])).ok
    assert validate_map(simplicial_operator(2, 1, [0, 0, 1])).ok
    assert simplicial_operator(2, 1, [0, 0, 1]).image("012").is_zero


def test_simplicial_operator_rejects_non_monotone():
    with pytest.raises(ValueError):
        simplicial_operator(1, 2, [2, 0])


def test_broken_map_is_reported():
    images = {
        "0": Chain.generator(0, "1"),
        "1": Chain.generator(0, "0"),
        "01": Chain.zero(1),
    }
    diagnostics = validate_map(ADCMap(oriental(1), oriental(1), images))
    assert "differential" in diagnostics.kinds()


def test_compose_maps():
    face = simplicial_operator(1, 2, [0, 2])
    composed = compose_maps(collapse_map(oriental(2)), face)
    assert composed.source == oriental(1)
    assert validate_map(composed).ok


def test_is_isomorphism():
    assert is_isomorphism(identity_map(oriental(2)))
    assert not is_isomorphism(collapse_map(disk(1)))
    assert not is_isomorphism(simplicial_operator(1, 2, [0, 2]))


# ------------------------------------------------------------------
# Invarianten der Konstruktionen
# ------------------------------------------------------------------


@pytest.mark.parametrize("n", range(7))
def test_standard_shapes_validate(n):
    for X in (oriental(n), cube(n), disk(n), boundary_disk(n)):
        diagnostics = validate(X)
        assert diagnostics.ok, diagnostics.summary()


@pytest.mark.parametrize("p, q, r", [(1, 1, 1), (1, 2, 2), (2, 1, 2)])
def test_gray_tensor_is_associative(p, q, r):
    X, Y, Z = cube(p), cube(q), cube(r)
    left = gray_tensor(gray_tensor(X, Y), Z)
    right = gray_tensor(X, gray_tensor(Y, Z))
    assert complex_isomorphism(left, right) is not None
