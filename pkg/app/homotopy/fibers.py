"""
Orientierte rechte Fasern und die orientierte lange exakte Folge (n = 0, 1).

Faser von f: C → D über y auf Stufe k (unterer Basispunkt Z der Dimension k−1
in C, y eine k-Zelle von D über f(Z)):
  Objekte   (c, σ) mit c k-Zelle von C über Z, σ positive (k+1)-Kette, ∂σ = y − f(c)
  Ordnung   (c, σ) ≤ (c′, σ′) wenn es g: c → c′ in C gibt und eine (k+2)-Kette w mit
            ∂w = σ′ + f(g) − σ   (oplax, Standard)
            ∂w = σ − σ′ − f(g)   (lax)
Stufe 0 mit leerem Z ist die Faser über einem Objekt.
"""
from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import networkx as nx

from app.cells.solver import solver_for
from app.cells.tables import OrientedBasePoint, arrow_endpoints
from app.complexes.adc import ADCMap, AugmentedDirectedComplex, require_valid, require_valid_map
from app.complexes.chains import Chain, chain_label
from app.config import DEFAULT_CAP
from app.homotopy.groups import (
    EMPTY_BASEPOINT,
    check_basepoint,
    homotopy_elements,
    path_label,
    pi1_rewriting,
    pi_n,
)
from app.homotopy.posets import Poset

log = logging.getLogger(__name__)

Convention = Literal["oplax", "lax"]
Order = Callable[[Chain, Chain], bool]


class InvalidObject(Exception):
    """Der Fußpunkt der Faser ist kein Objekt bzw. keine Zelle über f(Z)."""


@dataclass(frozen=True)
class FiberObject:
    base: Chain
    witness: Chain

    @property
    def label(self) -> str:
        return f"({chain_label(self.base)},{chain_label(self.witness)})"


def _foot(f: ADCMap, y: str | Chain, lower: OrientedBasePoint) -> Chain:
    k = lower.dim + 1
    if isinstance(y, str):
        if y not in f.target or f.target.degree(y) != 0:
            raise InvalidObject(f"{y!r} ist kein Objekt von {f.target.name}")
        y = Chain.generator(0, y)
    if y.degree != k:
        raise InvalidObject(f"{y} hat Grad {y.degree}, erwartet {k}")
    unknown = sorted(g for g in y.support if g not in f.target or f.target.degree(g) != k)
    if unknown or not y.is_positive:
        raise InvalidObject(f"{y} ist keine positive Kette von {f.target.name}")
    if k > 0 and f.target.boundary_of(y) != lower.mapped(f).boundary_target:
        raise InvalidObject(f"{y} liegt nicht über f({lower})")
    return y


def fiber_objects(
    f: ADCMap,
    y: str | Chain,
    cap: int = DEFAULT_CAP,
    basepoint: OrientedBasePoint | None = None,
) -> tuple[FiberObject, ...]:
    lower = basepoint or EMPTY_BASEPOINT
    foot = _foot(f, y, lower)
    k = lower.dim + 1
    target_solver = solver_for(f.target)
    objects: list[FiberObject] = []
    for c in homotopy_elements(f.source, lower, cap):
        for sigma in target_solver.solve(k + 1, foot - f.apply(c), cap).chains:
            objects.append(FiberObject(c, sigma))
    return tuple(objects)


def oriented_right_fiber_pi0(
    f: ADCMap,
    y: str | Chain,
    cap: int = DEFAULT_CAP,
    convention: Convention = "oplax",
    basepoint: OrientedBasePoint | None = None,
) -> Poset:
    """π₀ der orientierten rechten Faser von f über y (auf Stufe dim basepoint + 1)."""
    require_valid(f.source)
    require_valid(f.target)
    require_valid_map(f)
    lower = basepoint or EMPTY_BASEPOINT
    check_basepoint(f.source, lower)
    if convention not in ("oplax", "lax"):
        raise ValueError(f"unbekannte Konvention {convention!r}")

    k = lower.dim + 1
    objects = fiber_objects(f, y, cap, lower)
    source_solver, target_solver = solver_for(f.source), solver_for(f.target)

    def below(a: FiberObject, b: FiberObject) -> bool:
        for g in source_solver.solve(k + 1, b.base - a.base, cap).chains:
            fg = f.apply(g)
            if convention == "oplax":
                boundary = b.witness + fg - a.witness
            else:
                boundary = a.witness - b.witness - fg
            if target_solver.exists(k + 2, boundary, cap):
                return True
        return False

    pairs = [(a.label, b.label) for a in objects for b in objects if a != b and below(a, b)]
    foot_label = y if isinstance(y, str) else chain_label(y)
    P = Poset.from_relation(
        [a.label for a in objects], pairs, name=f"π0(ℱ[{f.label()}] über {foot_label})"
    )
    log.debug("%s: %d Faserobjekte", P.name, len(objects))
    return P


# ------------------------------------------------------------------
# Lange exakte Folge
# ------------------------------------------------------------------


@dataclass(frozen=True)
class LesVerdict:
    item: int
    element: str
    in_image: bool
    criterion: bool
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.in_image == self.criterion

    def to_json(self) -> dict[str, object]:
        return {
            "item": self.item,
            "element": self.element,
            "in_image": self.in_image,
            "criterion": self.criterion,
            "ok": self.ok,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class LesReport:
    n: int
    cap: int
    fiber: Poset
    verdicts: tuple[LesVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def failures(self) -> list[LesVerdict]:
        return [v for v in self.verdicts if not v.ok]

    def to_json(self) -> dict[str, object]:
        return {
            "n": self.n,
            "cap": self.cap,
            "ok": self.ok,
            "fiber": self.fiber.to_json(),
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def _independent_order(X: AugmentedDirectedComplex, Z: OrientedBasePoint, cap: int) -> Order:
    """
    Ordnung von π_{dim Z + 1}(X, Z), ohne die Faser zu befragen:
    Erreichbarkeit im 1-Skelett für π₀, Umschreiben atomarer Pfade für π₁,
    sonst die Kettenbedingung.
    """
    k = Z.dim + 1
    if k == 0:
        skeleton = nx.DiGraph()
        skeleton.add_nodes_from(X.in_degree(0))
        skeleton.add_edges_from(arrow_endpoints(X, a) for a in X.in_degree(1))
        return lambda a, b: nx.has_path(skeleton, a.single_generator(), b.single_generator())
    if k == 1:
        minus, plus = Z.top
        endpoints = (minus.single_generator(), plus.single_generator())
        P = pi1_rewriting(X, endpoints, cap)
        return lambda a, b: P.le(path_label(X, a, endpoints), path_label(X, b, endpoints))
    P = pi_n(X, Z, cap)
    return lambda a, b: P.le(chain_label(a), chain_label(b))


def les_exactness_check(
    f: ADCMap,
    Z: OrientedBasePoint,
    n: int = 0,
    cap: int = DEFAULT_CAP,
    convention: Convention = "oplax",
) -> LesReport:
    """
    Prüft an der Stelle n der Folge
        π_{n+1}(D, fZ) → πₙ(ℱ) → πₙ(C, Z_{<n}) → πₙ(D, fZ_{<n})
    elementweise:
      (1) T ∈ πₙ(C) kommt aus der Faser  ⇔  fT ≤ fYₙ,
      (2) [(c, σ)] kommt aus π_{n+1}(D)  ⇔  [c] = [Xₙ],
      (3) T ∈ π_{n+1}(D) kommt aus π_{n+1}(C)  ⇔  [(Xₙ, T)] = [(Xₙ, fS)] für ein S,
      (4) T ↦ [(Xₙ, T)] erhält und reflektiert die Ordnung von π_{n+1}(D).
    Jeweils eine Seite liest die Faser ab, die andere rechnet in C und D ohne Faser.
    Punkt (4) trennt oplax von lax, sobald π_{n+1}(D, fZ) nicht diskret ist.
    Z ist ein Basispunkt der Quelle mit dim Z ≥ n; (Xₙ, Yₙ) ist sein n-ter Eintrag.
    """
    if n not in (0, 1):
        raise ValueError(f"les_exactness_check: nur n ∈ {{0, 1}}, nicht {n}")
    check_basepoint(f.source, Z)
    if Z.dim < n:
        raise ValueError(f"Basispunkt {Z} hat Dimension {Z.dim} < {n}")

    C, D = f.source, f.target
    Zn = Z.lower(n)
    lower = Zn.lower(n - 1)
    x_n, y_n = Zn.top
    foot = f.apply(y_n)

    fiber = oriented_right_fiber_pi0(f, foot, cap, convention, basepoint=lower)
    objects = fiber_objects(f, foot, cap, lower)
    source_le = _independent_order(C, lower, cap)
    target_le = _independent_order(D, lower.mapped(f), cap)
    upper_le = _independent_order(D, Zn.mapped(f), cap)

    def fiber_le(a: FiberObject, b: FiberObject) -> bool:
        return fiber.le(a.label, b.label)

    def fiber_same(a: FiberObject, b: FiberObject) -> bool:
        return fiber_le(a, b) and fiber_le(b, a)

    verdicts: list[LesVerdict] = []

    # (1)
    bases = {obj.base for obj in objects}
    for T in homotopy_elements(C, lower, cap):
        label, image = chain_label(T), f.apply(T)
        verdicts.append(
            LesVerdict(
                1,
                label,
                in_image=T in bases,
                criterion=target_le(image, foot),
                witness=f"f({label}) = {chain_label(image)}",
            )
        )

    # (2)
    upper = solver_for(D).solve(n + 1, foot - f.apply(x_n), cap).chains
    kernel = [FiberObject(x_n, T) for T in upper]
    for obj in objects:
        verdicts.append(
            LesVerdict(
                2,
                obj.label,
                in_image=any(fiber_same(obj, k) for k in kernel),
                criterion=source_le(obj.base, x_n) and source_le(x_n, obj.base),
            )
        )

    # (3)
    lifted = [f.apply(S) for S in solver_for(C).solve(n + 1, y_n - x_n, cap).chains]
    for T in upper:
        verdicts.append(
            LesVerdict(
                3,
                chain_label(T),
                in_image=any(upper_le(T, fS) and upper_le(fS, T) for fS in lifted),
                criterion=any(
                    fiber_same(FiberObject(x_n, T), FiberObject(x_n, fS)) for fS in lifted
                ),
            )
        )

    # (4)
    for T in upper:
        for T2 in upper:
            if T == T2:
                continue
            verdicts.append(
                LesVerdict(
                    4,
                    f"{chain_label(T)} ≤ {chain_label(T2)}",
                    in_image=fiber_le(FiberObject(x_n, T), FiberObject(x_n, T2)),
                    criterion=upper_le(T, T2),
                )
            )

    report = LesReport(n, cap, fiber, tuple(verdicts))
    log.info(
        "LES %s bei n=%d (%s): %d Prüfungen, %d fehlgeschlagen",
        f.label(),
        n,
        convention,
        len(verdicts),
        len(report.failures()),
    )
    return report
