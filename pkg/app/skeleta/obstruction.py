"""
Skelettfiltration: Pushout-Zählung, Kofaser-Sphären und Hindernis-Posets.

Beim Übergang sk_n → sk_{n+1} wird jeder nicht entartete (n+1)-Simplex α
angeheftet: nicht dünne α als Scheibe 𝔻^{n+1} entlang ∂𝔻^{n+1}, dünne α als
kollabierte Scheibe. Ein Funktor F auf sk_n lässt sich über α fortsetzen, wenn
der Basispunkt F∘α|∂ gefüllt werden kann:
  nicht dünn  →  Faktor π_{n+1}(Y, F∘α|∂)
  dünn        →  Faktor π'_{n+1}(Y, F∘α|∂)
Das Produkt aller Faktoren ist τ≤0 der Fortsetzungen. brute_force_extensions()
zählt dieselben Fortsetzungen direkt im Nerv von Y ab.
"""
from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import reduce
from math import comb

from app.cells.solver import solver_for
from app.cells.tables import OrientedBasePoint
from app.complexes.adc import ADCMap, AugmentedDirectedComplex, validate_map
from app.complexes.chains import Chain
from app.complexes.shapes import oriental, vertex_name
from app.config import DEFAULT_CAP
from app.homotopy.groups import pi_n, pi_prime_n
from app.homotopy.posets import Poset, poset_product, singleton
from app.skeleta.nerve import (
    Key,
    StratifiedSimplicialSet,
    degeneracy_key,
    face_key,
    key_images,
    nondegenerate,
    simplex_generators,
    skeleton,
    stratified_nerve,
    top_chain,
)

log = logging.getLogger(__name__)


class IncompatibleF(Exception):
    """Die Funktordaten verletzen Randrelationen, Dünnheit oder die Kettenbedingungen."""


# ------------------------------------------------------------------
# Pushout und Kofaser
# ------------------------------------------------------------------


@dataclass(frozen=True)
class PushoutRow:
    m: int
    new_simplices: int
    expected_simplices: int
    new_thin: int
    expected_thin: int

    @property
    def ok(self) -> bool:
        return (
            self.new_simplices == self.expected_simplices
            and self.new_thin == self.expected_thin
        )


@dataclass(frozen=True)
class PushoutReport:
    n: int
    thin_cells: int
    nonthin_cells: int
    rows: tuple[PushoutRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def to_json(self) -> dict[str, object]:
        return {
            "n": self.n,
            "ok": self.ok,
            "thin_cells": self.thin_cells,
            "nonthin_cells": self.nonthin_cells,
            "rows": [
                {
                    "m": r.m,
                    "new": r.new_simplices,
                    "expected": r.expected_simplices,
                    "new_thin": r.new_thin,
                    "expected_thin": r.expected_thin,
                    "ok": r.ok,
                }
                for r in self.rows
            ],
        }


def verify_skeletal_pushout(S: StratifiedSimplicialSet, n: int) -> PushoutReport:
    """
    Zählt, was sk_{n−1} → sk_n pro Dimension m hinzufügt.

    Jeder neue m-Simplex ist eindeutig eine Entartung s_I(α) eines nicht entarteten
    n-Simplex α; es gibt C(m, n) Surjektionen [m] ↠ [n]. Entartete Simplizes sind
    dünn, α selbst nur, wenn es dünn markiert ist.
    """
    if not 0 <= n <= S.dimension:
        raise ValueError(f"verify_skeletal_pushout: n = {n} außerhalb 0..{S.dimension}")
    upper, lower = skeleton(S, n), skeleton(S, n - 1)
    thin, nonthin = nondegenerate(S, n)
    rows = []
    for m in range(S.dimension + 1):
        surjections = comb(m, n) if m >= n else 0
        expected_thin = len(thin) * surjections + len(nonthin) * (surjections if m > n else 0)
        rows.append(
            PushoutRow(
                m=m,
                new_simplices=upper.count(m) - lower.count(m),
                expected_simplices=(len(thin) + len(nonthin)) * surjections,
                new_thin=len(upper.thin[m]) - len(lower.thin[m]),
                expected_thin=expected_thin,
            )
        )
    report = PushoutReport(n, len(thin), len(nonthin), tuple(rows))
    log.info("Pushout-Zählung %s bei n=%d: %s", S.name, n, "ok" if report.ok else "Abweichung")
    return report


def wedge_cofiber_profile(S: StratifiedSimplicialSet, n: int) -> tuple[int, int]:
    """(kategorielle Sphären Σⁿ⁻¹B𝐍, topologische Sphären Σⁿ⁻¹B𝐙) in sk_n/sk_{n−1}."""
    thin, nonthin = nondegenerate(S, n)
    return len(nonthin), len(thin)


# ------------------------------------------------------------------
# Funktordaten auf sk_n
# ------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletalFunctor:
    """F: sk_n N(X) → N(Y), gegeben auf den nicht entarteten Simplizes der Dimension ≤ n."""

    source: StratifiedSimplicialSet
    target: AugmentedDirectedComplex
    n: int
    assignment: Mapping[tuple[int, int], Key] = field(default_factory=dict)

    def image(self, m: int, x: int) -> Key:
        root_dim, root, ops = self.source.decompose(m, x)
        if root_dim > self.n:
            raise IncompatibleF(f"{m}-Simplex {x} liegt nicht in sk{self.n}")
        try:
            key = self.assignment[(root_dim, root)]
        except KeyError:
            raise IncompatibleF(f"F ist auf {root_dim}-Simplex {root} nicht definiert") from None
        dim = root_dim
        for j in reversed(ops):
            key = degeneracy_key(key, dim, j)
            dim += 1
        return key

    def compatibility_errors(self) -> list[str]:
        errors: list[str] = []
        S = self.source
        for m in range(min(self.n, S.dimension) + 1):
            for x in S.nondegenerate(m):
                if (m, x) not in self.assignment:
                    errors.append(f"F fehlt auf {m}-Simplex {x}")
                    continue
                key = self.assignment[(m, x)]
                as_map = ADCMap(oriental(m), self.target, key_images(key, m))
                diagnostics = validate_map(as_map)
                if not diagnostics.ok:
                    errors.append(f"F({m}-Simplex {x}): {diagnostics.summary()}")
                    continue
                if m and S.is_thin(m, x) and not top_chain(key).is_zero:
                    errors.append(f"dünner {m}-Simplex {x} geht auf nicht dünnen Simplex")
                if m == 0:
                    continue
                for i in range(m + 1):
                    try:
                        expected = self.image(m - 1, S.face(m, x, i))
                    except IncompatibleF as exc:
                        errors.append(str(exc))
                        continue
                    if face_key(key, m, i) != expected:
                        errors.append(f"d{i}F ≠ Fd{i} auf {m}-Simplex {x}")
        return errors

    def require_compatible(self) -> None:
        errors = self.compatibility_errors()
        if errors:
            raise IncompatibleF("; ".join(errors))

    @classmethod
    def from_vertex_map(
        cls,
        S: StratifiedSimplicialSet,
        Y: AugmentedDirectedComplex,
        vertex_map: Mapping[str, str],
    ) -> SkeletalFunctor:
        """Funktordaten auf sk₀: Objekt von X ↦ Objekt von Y."""
        assignment: dict[tuple[int, int], Key] = {}
        for x, key in enumerate(S.simplices[0]):
            (obj,) = key
            name = obj.single_generator()
            if name not in vertex_map:
                raise IncompatibleF(f"Ecke {name} fehlt in der Eckenabbildung")
            image = vertex_map[name]
            if image not in Y or Y.degree(image) != 0:
                raise IncompatibleF(f"{image!r} ist kein Objekt von {Y.name}")
            assignment[(0, x)] = (Chain.generator(0, image),)
        return cls(S, Y, 0, assignment)

    @classmethod
    def from_chain_map(cls, S: StratifiedSimplicialSet, f: ADCMap, n: int) -> SkeletalFunctor:
        """F(σ) = f∘σ auf allen nicht entarteten Simplizes der Dimension ≤ n."""
        assignment: dict[tuple[int, int], Key] = {}
        for m in range(min(n, S.dimension) + 1):
            for x in S.nondegenerate(m):
                assignment[(m, x)] = tuple(f.apply(c) for c in S.simplices[m][x])
        return cls(S, f.target, n, assignment)


# ------------------------------------------------------------------
# Hindernis-Poset
# ------------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionFactor:
    simplex: int
    thin: bool
    basepoint: OrientedBasePoint
    poset: Poset

    @property
    def kind(self) -> str:
        return "collapsed" if self.thin else "disk"

    def to_json(self) -> dict[str, object]:
        return {
            "simplex": self.simplex,
            "kind": self.kind,
            "factor": "π'" if self.thin else "π",
            "basepoint": self.basepoint.to_json(),
            "poset": self.poset.to_json(),
        }


def _attaching_basepoint(F: SkeletalFunctor, alpha: int) -> OrientedBasePoint:
    """F∘α|∂ als Basispunkt der Dimension n in Y."""
    S, n = F.source, F.n
    m = n + 1
    images: dict[str, Chain] = {}
    for i in range(m + 1):
        face = F.image(n, S.face(m, alpha, i))
        inclusion = [v for v in range(m + 1) if v != i]
        for cell, chain in zip(simplex_generators(n), face):
            name = vertex_name(tuple(inclusion[v] for v in cell), m)
            known = images.setdefault(name, chain)
            if known != chain:
                raise IncompatibleF(
                    f"Seiten von (n+1)-Simplex {alpha} widersprechen sich auf {name}: "
                    f"{known} ≠ {chain}"
                )
    partial = ADCMap(oriental(m), F.target, images)
    top = vertex_name(tuple(range(m + 1)), m)
    entries = oriental(m).atom(top)[:-1]
    return OrientedBasePoint(tuple((partial.apply(a), partial.apply(b)) for a, b in entries))


def obstruction_factors(
    F: SkeletalFunctor, cap: int = DEFAULT_CAP
) -> tuple[ObstructionFactor, ...]:
    S, n = F.source, F.n
    if n + 1 > S.dimension:
        raise ValueError(f"Nerv {S.name} reicht nur bis Dimension {S.dimension}")
    F.require_compatible()
    factors = []
    for alpha in S.nondegenerate(n + 1):
        Z = _attaching_basepoint(F, alpha)
        thin = S.is_thin(n + 1, alpha)
        poset = pi_prime_n(F.target, Z, cap) if thin else pi_n(F.target, Z, cap)
        factors.append(ObstructionFactor(alpha, thin, Z, poset))
    return tuple(factors)


def _product(posets: list[Poset]) -> Poset:
    return reduce(poset_product, posets, singleton("()", name="pt"))


def obstruction_poset(F: SkeletalFunctor, cap: int = DEFAULT_CAP) -> Poset:
    """∏ π_{n+1}(Y, F∘α|∂) × ∏ π'_{n+1}(Y, F∘α|∂) über die angehefteten (n+1)-Simplizes."""
    return _product([factor.poset for factor in obstruction_factors(F, cap)])


def brute_force_extensions(F: SkeletalFunctor, cap: int = DEFAULT_CAP) -> Poset:
    """Fortsetzungen direkt: passende (n+1)-Simplizes von N(Y), geordnet durch (n+2)-Zellen."""
    S, n = F.source, F.n
    if n + 1 > S.dimension:
        raise ValueError(f"Nerv {S.name} reicht nur bis Dimension {S.dimension}")
    F.require_compatible()
    m = n + 1
    nerve = stratified_nerve(F.target, m, cap)
    solver = solver_for(F.target)
    posets = []
    for alpha in S.nondegenerate(m):
        faces = [F.image(n, S.face(m, alpha, i)) for i in range(m + 1)]
        thin = S.is_thin(m, alpha)
        fillers = [
            key
            for key in nerve.simplices[m]
            if all(face_key(key, m, i) == faces[i] for i in range(m + 1))
            and (not thin or top_chain(key).is_zero)
        ]
        labels = [str(top_chain(key)) for key in fillers]
        pairs = [
            (str(top_chain(a)), str(top_chain(b)))
            for a in fillers
            for b in fillers
            if a != b and solver.exists(m + 1, top_chain(b) - top_chain(a), cap)
        ]
        posets.append(Poset.from_relation(labels, pairs, name=f"Füllungen({alpha})"))
    return _product(posets)
