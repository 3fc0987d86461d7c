import pytest

from app.acceptance import (
    CRITERIA,
    CriterionResult,
    corner,
    format_table,
    les_cases,
    map_catalog,
    run_acceptance,
    wedge_factors,
    wedge_products,
    wedge_upper_case,
)
from app.homotopy.fibers import les_exactness_check
from app.homotopy.groups import pi_n
from app.homotopy.posets import poset_iso
from app.homotopy.truncation import is_n_full

CAP = 2


def test_corner_names():
    assert corner((0, 1)) == "0⊗1"
    assert corner([1, 1, 0]) == "1⊗1⊗0"


@pytest.mark.parametrize("entry", map_catalog(), ids=lambda e: e.key)
def test_catalog_fullness(entry):
    for m in range(3):
        assert bool(is_n_full(entry.map, m, CAP)) == entry.full[m]


def test_selected_criteria_pass():
    results = run_acceptance(cap=CAP, only=[5, 7])
    assert [r.number for r in results] == [5, 7, 13]
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_fibers_and_obstructions_pass():
    results = run_acceptance(cap=CAP, only=[10, 12])
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_unknown_criterion():
    with pytest.raises(ValueError):
        run_acceptance(cap=CAP, only=[99])


def test_format_table():
    results = [
        CriterionResult(1, "eins", True, "ok"),
        CriterionResult(2, "zwei", False, "kaputt"),
    ]
    table = format_table(results)
    assert "FEHLER" in table
    assert table.endswith("1/2 Kriterien erfüllt\n")


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_each_criterion_passes(number):
    results = run_acceptance(cap=CAP, only=[number])
    assert [r.number for r in results] == [number, 13]
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_wedge_of_three_suspensions():
    assert wedge_products(wedge_factors(), CAP) == 10


def test_wedge_at_second_level():
    W, Z, expected = wedge_upper_case(CAP)
    P = pi_n(W, Z, CAP)
    assert len(P) == len(expected) == 4
    assert poset_iso(P, expected)


def test_long_exact_sequence_criterion_checks_fiber_order():
    fiber = les_exactness_check(*les_cases()[2], 0, CAP).fiber
    assert fiber.minimum() == "(0,02)"
    assert not les_exactness_check(*les_cases()[2], 0, CAP, convention="lax").ok
