import pytest

from app.cells.tables import OrientedBasePoint
from app.complexes.adc import AugmentedDirectedComplex, InvalidComplex
from app.complexes.chains import Chain
from app.complexes.shapes import cube, disk, dual_co, dual_op, gray_tensor, oriental, wedge
from app.homotopy.groups import (
    InvalidBasepoint,
    pi0,
    pi1_rewriting,
    pi_n,
    pi_prime_n,
    suspend_basepoint,
)
from app.homotopy.posets import boolean_lattice, chain, poset_iso, weak_order

CAP = 2


def objects(a: str, b: str) -> OrientedBasePoint:
    return OrientedBasePoint(((Chain.generator(0, a), Chain.generator(0, b)),))


def test_pi0_of_oriental_is_a_chain():
    for n in range(4):
        assert poset_iso(pi0(oriental(n), CAP), chain(n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pi1_of_oriental_is_boolean(n):
    P = pi_n(oriental(n), objects("0", str(n)), CAP)
    assert poset_iso(P, boolean_lattice(n - 1))


def test_op_reverses_objects():
    P = pi0(dual_op(oriental(2)), CAP)
    assert poset_iso(P, chain(2))
    assert P.minimum() == "2"
    assert P.maximum() == "0"
    assert P.lt("1", "0")


def pi1_between_extremes(X):
    P = pi0(X, CAP)
    return P, pi_n(X, objects(P.minimum(), P.maximum()), CAP)


@pytest.mark.parametrize("dual", [dual_op, dual_co], ids=["op", "co"])
@pytest.mark.parametrize("p, q", [(1, 1), (1, 2), (2, 1)])
def test_duals_swap_tensor_factors(dual, p, q):
    left = pi1_between_extremes(dual(gray_tensor(cube(p), cube(q))))
    right = pi1_between_extremes(gray_tensor(dual(cube(q)), dual(cube(p))))
    assert poset_iso(left[0], right[0])
    assert poset_iso(left[1], right[1])
    assert len(left[1]) == len(weak_order(p + q))


def test_pi1_of_triangle_labels():
    P = pi_n(oriental(2), objects("0", "2"), CAP)
    assert P.elements == ("01+12", "02")
    assert P.lt("02", "01+12")


@pytest.mark.parametrize("n", [2, 3])
def test_pi1_of_cube_is_weak_order(n):
    corner0 = "⊗".join("0" * n)
    corner1 = "⊗".join("1" * n)
    assert poset_iso(pi_n(cube(n), objects(corner0, corner1), CAP), weak_order(n))


def test_rewriting_agrees_with_chains():
    P = pi1_rewriting(oriental(3), ("0", "3"), CAP)
    assert poset_iso(P, pi_n(oriental(3), objects("0", "3"), CAP))
    assert "01·12·23" in P
    assert P.maximum() == "01·12·23"
    assert P.minimum() == "03"


def test_empty_hom_poset():
    assert len(pi_n(oriental(2), objects("2", "0"), CAP)) == 0


def test_identity_classes():
    assert len(pi_prime_n(oriental(2), objects("1", "1"), CAP)) == 1
    assert len(pi_prime_n(oriental(2), objects("0", "1"), CAP)) == 0
    assert len(pi_prime_n(oriental(2), cap=CAP)) == 0


def test_foreign_basepoint_is_rejected():
    with pytest.raises(InvalidBasepoint):
        pi_n(oriental(1), objects("0", "7"), CAP)


def test_invalid_complex_is_rejected():
    a, b = Chain.generator(0, "a"), Chain.generator(0, "b")
    X = AugmentedDirectedComplex("zyklus", (("a", "b"), ("e", "f")), {"e": b - a, "f": a - b})
    with pytest.raises(InvalidComplex):
        pi0(X, CAP)


def test_suspension_shifts_homotopy():
    Y, Z = suspend_basepoint(oriental(1), 1)
    assert poset_iso(pi_n(Y, Z, CAP), pi0(oriental(1), CAP))

    Y, Z = suspend_basepoint(oriental(2), 1, objects("0", "2"))
    assert Z.dim == 1
    assert poset_iso(pi_n(Y, Z, CAP), pi_n(oriental(2), objects("0", "2"), CAP))


def test_wedge_of_suspensions_is_product():
    Y, _ = suspend_basepoint(oriental(1), 1)
    W = wedge(Y, disk(1))
    P = pi_n(W, objects("0", "2"), CAP)
    assert poset_iso(P, chain(1))
