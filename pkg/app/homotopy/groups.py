"""
Homotopie-Posets πₙ(X, Z) eines Steiner-Komplexes.

Elemente von πₙ(X, Z) sind die positiven n-Ketten u mit ∂u = xₙ₋₁⁺ − xₙ₋₁⁻
(die n-Zellen über Z); u ≤ v genau dann, wenn es eine positive (n+1)-Kette c
mit ∂c = v − u gibt. Für den leeren Basispunkt ergibt das π₀: Objekte, geordnet
durch Existenz eines Pfeils.

pi1_rewriting() berechnet π₁ zusätzlich über Umschreiben atomarer Pfade und
dient als unabhängige Kontrolle der Kettenbedingung.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence

from app.cells.solver import solver_for
from app.cells.tables import OrientedBasePoint, arrow_endpoints, atomic_path_decomposition
from app.complexes.adc import (
    AugmentedDirectedComplex,
    Diagnostics,
    InvalidComplex,
    Violation,
    require_valid,
)
from app.complexes.chains import Chain, chain_label
from app.complexes.shapes import suspension
from app.config import DEFAULT_CAP
from app.homotopy.posets import Poset, empty_poset, singleton

log = logging.getLogger(__name__)

EMPTY_BASEPOINT = OrientedBasePoint()


class InvalidBasepoint(Exception):
    """Der Basispunkt verletzt die Randverträglichkeit oder passt nicht zum Komplex."""


def check_basepoint(X: AugmentedDirectedComplex, Z: OrientedBasePoint) -> None:
    require_valid(X)
    errors = Z.errors(X)
    if errors:
        raise InvalidBasepoint(f"{X.name}: Basispunkt {Z}: {'; '.join(errors)}")


def _condensation_is_loop(X: AugmentedDirectedComplex, P: Poset) -> None:
    """Bei schleifenfreiem X dürfen keine Klassen verschmelzen."""
    if P.condensed:
        merged = next(group for group in P.classes if len(group) > 1)
        raise InvalidComplex(
            Diagnostics(
                X.name,
                (Violation("loop", None, f"gegenseitige Zellen zwischen {', '.join(merged)}"),),
            )
        )


# ------------------------------------------------------------------
# πₙ über Kettenbedingung
# ------------------------------------------------------------------


def homotopy_elements(
    X: AugmentedDirectedComplex,
    Z: OrientedBasePoint = EMPTY_BASEPOINT,
    cap: int = DEFAULT_CAP,
    *,
    strict: bool = True,
) -> tuple[Chain, ...]:
    """Repräsentanten von π_{dim Z + 1}(X, Z)."""
    if Z.dim == -1:
        return tuple(Chain.generator(0, a) for a in X.in_degree(0))
    return solver_for(X).solve(Z.dim + 1, Z.boundary_target, cap, strict=strict).chains


def pi_n(
    X: AugmentedDirectedComplex,
    Z: OrientedBasePoint = EMPTY_BASEPOINT,
    cap: int = DEFAULT_CAP,
    *,
    strict: bool = True,
) -> Poset:
    check_basepoint(X, Z)
    n = Z.dim + 1
    elements = homotopy_elements(X, Z, cap, strict=strict)
    solver = solver_for(X)
    pairs = [
        (chain_label(u), chain_label(v))
        for u in elements
        for v in elements
        if u != v and solver.exists(n + 1, v - u, cap, strict=strict)
    ]
    P = Poset.from_relation(
        [chain_label(u) for u in elements], pairs, name=f"π{n}({X.name}; {Z})"
    )
    _condensation_is_loop(X, P)
    log.debug("%s: %d Elemente, %d Überdeckungen", P.name, len(P), len(P.covers()))
    return P


def pi0(X: AugmentedDirectedComplex, cap: int = DEFAULT_CAP, *, strict: bool = True) -> Poset:
    return pi_n(X, EMPTY_BASEPOINT, cap, strict=strict)


def pi_prime_n(
    X: AugmentedDirectedComplex,
    Z: OrientedBasePoint = EMPTY_BASEPOINT,
    cap: int = DEFAULT_CAP,
) -> Poset:
    """
    Teilposet von πₙ(X, Z) der Identitätsklassen.

    Für gaunt-schleifenfreie Komplexe ist das {id}, falls xₙ₋₁⁻ = xₙ₋₁⁺, sonst leer.
    π'₀ ist immer leer.
    """
    check_basepoint(X, Z)
    n = Z.dim + 1
    name = f"π'{n}({X.name}; {Z})"
    if n == 0:
        return empty_poset(name)
    minus, plus = Z.top
    if minus == plus:
        return singleton("id", name=name)
    return empty_poset(name)


# ------------------------------------------------------------------
# π₁ über atomare Pfade
# ------------------------------------------------------------------


def _path_label(path: Sequence[str]) -> str:
    return "·".join(path) if path else "id"


def path_label(X: AugmentedDirectedComplex, chain: Chain, endpoints: tuple[str, str]) -> str:
    """Beschriftung einer 1-Zelle in pi1_rewriting(X, endpoints)."""
    return _path_label(atomic_path_decomposition(X, chain, endpoints))


RewriteRule = tuple[str, tuple[str, ...], tuple[str, ...]]


def _rewrite_rules(X: AugmentedDirectedComplex) -> list[RewriteRule]:
    """(Basisobjekt, Quellpfad, Zielpfad) für jeden Erzeuger von Grad 2."""
    rules: list[RewriteRule] = []
    for alpha in X.in_degree(2):
        (low_minus, low_plus), (source, target), _ = X.atom(alpha)
        a, b = low_minus.single_generator(), low_plus.single_generator()
        rules.append(
            (
                a,
                tuple(atomic_path_decomposition(X, source, (a, b))),
                tuple(atomic_path_decomposition(X, target, (a, b))),
            )
        )
    return rules


def pi1_rewriting(
    X: AugmentedDirectedComplex, endpoints: tuple[str, str], cap: int = DEFAULT_CAP
) -> Poset:
    start, end = endpoints
    Z = OrientedBasePoint(((Chain.generator(0, start), Chain.generator(0, end)),))
    check_basepoint(X, Z)

    paths = [
        tuple(atomic_path_decomposition(X, c, endpoints))
        for c in homotopy_elements(X, Z, cap)
    ]
    known = set(paths)
    rules = _rewrite_rules(X)

    pairs: list[tuple[str, str]] = []
    for path in paths:
        vertices = [start]
        for arrow in path:
            vertices.append(arrow_endpoints(X, arrow)[1])
        for base, source, target in rules:
            width = len(source)
            for i in range(len(path) + 1 - width):
                if path[i : i + width] != source or vertices[i] != base:
                    continue
                rewritten = path[:i] + target + path[i + width :]
                if rewritten not in known:
                    log.debug("%s: %s liegt außerhalb von cap", X.name, _path_label(rewritten))
                    continue
                pairs.append((_path_label(path), _path_label(rewritten)))

    P = Poset.from_relation(
        [_path_label(p) for p in paths], pairs, name=f"π1({X.name}; {start},{end})"
    )
    _condensation_is_loop(X, P)
    return P


# ------------------------------------------------------------------
# Suspension
# ------------------------------------------------------------------


def suspend_basepoint(
    X: AugmentedDirectedComplex, m: int, Z: OrientedBasePoint = EMPTY_BASEPOINT
) -> tuple[AugmentedDirectedComplex, OrientedBasePoint]:
    """
    Sᵐ(X) und der Basispunkt, unter dem π_k(Sᵐ X) mit π_{k−m}(X, Z) übereinstimmt:
    die Endpunkte der geschachtelten Suspensionen (außen zuerst), dann Z um m verschoben.
    """
    if m < 0:
        raise ValueError(f"suspend_basepoint: m muss ≥ 0 sein, nicht {m}")
    Y = X
    levels: list[tuple[str, str]] = []
    for _ in range(m):
        Y = suspension(Y)
        levels.append(Y.endpoints)
    prefix = tuple(
        (Chain.generator(d, bottom), Chain.generator(d, top))
        for d, (bottom, top) in enumerate(reversed(levels))
    )
    shifted = tuple((minus.shifted(m), plus.shifted(m)) for minus, plus in Z.entries)
    return Y, OrientedBasePoint(prefix + shifted)
