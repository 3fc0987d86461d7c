"""
Trunkierungen, Zusammenhangs-/Treue-Prädikate und Whitehead-Test.

- truncate0 = π₀, truncate1 als poset-angereicherte Kategorie (Hom = π₁).
- disk_truncation folgt der Fallunterscheidung: τ≤m(𝔻ⁿ) = 𝔻ⁿ für m ≥ n−1,
  sonst 𝔻^{m+1}. Die Formel min(m,n)+1 steht zum Vergleich daneben.
- Prädikate über Lifts: für jeden Basispunkt Z der Dimension m−1 der Quelle und
  jede m-Zelle des Ziels über f(Z) wird die Zahl der Urbilder gezählt.
  m-voll: jede Zielzelle hat ein Urbild; eindeutig: genau eines.

Alle Ergebnisse gelten relativ zu cap; Verdict trägt cap und Sättigung mit.
"""
from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
from networkx.algorithms import isomorphism

from app.cells.solver import solver_for
from app.cells.tables import OrientedBasePoint, enumerate_basepoints
from app.complexes.adc import ADCMap, AugmentedDirectedComplex, require_valid, require_valid_map
from app.complexes.chains import Chain, chain_label
from app.config import DEFAULT_CAP
from app.homotopy.groups import EMPTY_BASEPOINT, homotopy_elements, pi0, pi_n
from app.homotopy.posets import Poset, poset_iso

log = logging.getLogger(__name__)


# ------------------------------------------------------------------
# τ≤0, τ≤1
# ------------------------------------------------------------------


def truncate0(X: AugmentedDirectedComplex, cap: int = DEFAULT_CAP) -> Poset:
    return pi0(X, cap)


@dataclass(frozen=True)
class PosetEnrichedCategory:
    name: str
    objects: tuple[str, ...]
    homs: Mapping[tuple[str, str], Poset]
    representatives: Mapping[tuple[str, str], Mapping[str, Chain]]

    def hom(self, a: str, b: str) -> Poset:
        return self.homs[(a, b)]

    def compose(self, g: tuple[str, str, str], f: tuple[str, str, str]) -> str:
        """g∘f für f = (a, b, label) und g = (b, c, label); Ergebnis als Label in hom(a, c)."""
        a, b, f_label = f
        b2, c, g_label = g
        if b != b2:
            raise ValueError(f"nicht komponierbar: {f_label}: {a}→{b}, {g_label}: {b2}→{c}")
        chain = (
            self.representatives[(a, b)][f_label] + self.representatives[(b, c)][g_label]
        )
        label = chain_label(chain)
        if label not in self.homs[(a, c)]:
            raise ValueError(f"{label} liegt nicht in hom({a},{c}) (cap zu klein?)")
        return self.homs[(a, c)].class_of(label)

    def composition_errors(self) -> list[str]:
        """Einheit, Assoziativität und Monotonie auf Repräsentanten."""
        errors: list[str] = []
        for a in self.objects:
            for b in self.objects:
                for f in self.homs[(a, b)]:
                    if self.compose((b, b, "id"), (a, b, f)) != f:
                        errors.append(f"id∘{f} ≠ {f}")
                    if self.compose((a, b, f), (a, a, "id")) != f:
                        errors.append(f"{f}∘id ≠ {f}")

        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    hom_ab, hom_bc = self.homs[(a, b)], self.homs[(b, c)]
                    for f, f2 in ((x, y) for x in hom_ab for y in hom_ab if hom_ab.le(x, y)):
                        for g, g2 in ((x, y) for x in hom_bc for y in hom_bc if hom_bc.le(x, y)):
                            lhs = self.compose((b, c, g), (a, b, f))
                            rhs = self.compose((b, c, g2), (a, b, f2))
                            if not self.homs[(a, c)].le(lhs, rhs):
                                errors.append(f"nicht monoton: {g}∘{f} ≰ {g2}∘{f2}")
                    for d in self.objects:
                        for f in hom_ab:
                            for g in hom_bc:
                                gf = self.compose((b, c, g), (a, b, f))
                                for h in self.homs[(c, d)]:
                                    hg = self.compose((c, d, h), (b, c, g))
                                    left = self.compose((c, d, h), (a, c, gf))
                                    right = self.compose((b, d, hg), (a, b, f))
                                    if left != right:
                                        errors.append(f"({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})")
        return errors

    def to_json(self) -> dict[str, object]:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "homs": [
                {"source": a, "target": b, "poset": self.homs[(a, b)].to_json()}
                for a in self.objects
                for b in self.objects
            ],
            "composition_errors": self.composition_errors(),
        }

    def object_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.objects)
        for (a, b), hom in self.homs.items():
            if len(hom):
                graph.add_edge(a, b, hom=hom)
        return graph


def truncate1(X: AugmentedDirectedComplex, cap: int = DEFAULT_CAP) -> PosetEnrichedCategory:
    require_valid(X)
    objects = X.in_degree(0)
    homs: dict[tuple[str, str], Poset] = {}
    representatives: dict[tuple[str, str], dict[str, Chain]] = {}
    for a in objects:
        for b in objects:
            Z = OrientedBasePoint(((Chain.generator(0, a), Chain.generator(0, b)),))
            homs[(a, b)] = pi_n(X, Z, cap)
            representatives[(a, b)] = {
                chain_label(c): c for c in homotopy_elements(X, Z, cap)
            }
    log.info("τ≤1(%s): %d Objekte", X.name, len(objects))
    return PosetEnrichedCategory(f"τ≤1({X.name})", objects, homs, representatives)


def enriched_equivalent(C: PosetEnrichedCategory, D: PosetEnrichedCategory) -> bool:
    """Bijektion der Objekte mit isomorphen Hom-Posets (gaunt: Äquivalenz = Isomorphie)."""
    if len(C.objects) != len(D.objects):
        return False
    matcher = isomorphism.DiGraphMatcher(
        C.object_graph(),
        D.object_graph(),
        edge_match=lambda e1, e2: bool(poset_iso(e1["hom"], e2["hom"])),
    )
    return matcher.is_isomorphic()


# ------------------------------------------------------------------
# Scheiben und Θ
# ------------------------------------------------------------------


def disk_truncation(m: int, n: int) -> int:
    """Dimension d mit τ≤m(𝔻ⁿ) = 𝔻ᵈ."""
    if m < 0 or n < 0:
        raise ValueError(f"disk_truncation({m}, {n}): m, n müssen ≥ 0 sein")
    return n if m >= n - 1 else m + 1


def disk_truncation_displayed(m: int, n: int) -> int:
    """min(m, n) + 1 – weicht für m ≥ n von disk_truncation ab."""
    return min(m, n) + 1


def theta_truncation(disks: Sequence[int], m: int) -> tuple[int, ...]:
    """τ≤m eines Θ-Objekts, Scheibe für Scheibe."""
    return tuple(disk_truncation(m, n) for n in disks)


# ------------------------------------------------------------------
# Lifts
# ------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool
    cap: int
    saturated: bool = True
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict[str, object]:
        return {
            "holds": self.holds,
            "cap": self.cap,
            "saturated": self.saturated,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class LiftRow:
    basepoint: OrientedBasePoint
    cell: Chain
    lifts: int
    saturated: bool


def _require_map(f: ADCMap) -> None:
    require_valid(f.source)
    require_valid(f.target)
    require_valid_map(f)


def lift_table(
    f: ADCMap, m: int, cap: int = DEFAULT_CAP, *, strict: bool = True
) -> tuple[LiftRow, ...]:
    """Urbildzahlen aller m-Zellen des Ziels über f(Z), Z ein (m−1)-Basispunkt der Quelle."""
    _require_map(f)
    if m < 0:
        raise ValueError(f"lift_table: m muss ≥ 0 sein, nicht {m}")
    source_solver, target_solver = solver_for(f.source), solver_for(f.target)
    rows: list[LiftRow] = []
    for Z in enumerate_basepoints(f.source, m - 1, cap):
        if m == 0:
            targets = [Chain.generator(0, a) for a in f.target.in_degree(0)]
            sources = [Chain.generator(0, a) for a in f.source.in_degree(0)]
            saturated = True
        else:
            wanted = target_solver.solve(m, Z.mapped(f).boundary_target, cap, strict=strict)
            found = source_solver.solve(m, Z.boundary_target, cap, strict=strict)
            targets, sources = wanted.chains, found.chains
            saturated = wanted.saturated and found.saturated
        images = Counter(f.apply(c) for c in sources)
        rows.extend(LiftRow(Z, t, images[t], saturated) for t in targets)
    return tuple(rows)


def _level(f: ADCMap, m: int, cap: int, unique: bool) -> Verdict:
    rows = lift_table(f, m, cap)
    saturated = all(r.saturated for r in rows)
    for row in rows:
        if row.lifts == 0 or (unique and row.lifts > 1):
            kind = "kein Lift" if row.lifts == 0 else f"{row.lifts} Lifts"
            witness = f"m={m}: {kind} für {row.cell} über {row.basepoint}"
            return Verdict(False, cap, saturated, witness)
    return Verdict(True, cap, saturated)


def _top_level(f: ADCMap) -> int:
    # Oberhalb davon sind alle Zellen Identitäten
    return max(f.source.dim, f.target.dim) + 2


def _all_levels(f: ADCMap, levels: range, cap: int, unique: bool) -> Verdict:
    saturated = True
    for m in levels:
        verdict = _level(f, m, cap, unique)
        if not verdict:
            return verdict
        saturated = saturated and verdict.saturated
    return Verdict(True, cap, saturated)


def is_n_full(f: ADCMap, n: int, cap: int = DEFAULT_CAP) -> Verdict:
    """n-voll: jede n-Zelle des Ziels über f(Z) hat ein Urbild über Z."""
    return _level(f, n, cap, unique=False)


def is_n_faithful(f: ADCMap, n: int, cap: int = DEFAULT_CAP) -> Verdict:
    """Eindeutige Lifts auf allen Stufen m ≥ n+1."""
    return _all_levels(f, range(max(n + 1, 0), _top_level(f) + 1), cap, unique=True)


def is_n_connected(f: ADCMap, n: int, cap: int = DEFAULT_CAP) -> Verdict:
    """m-voll für alle 0 ≤ m ≤ n+1; (−2)-zusammenhängend gilt immer."""
    return _all_levels(f, range(0, n + 2), cap, unique=False)


def is_n_truncated(f: ADCMap, n: int, cap: int = DEFAULT_CAP) -> Verdict:
    return is_n_faithful(f, n + 1, cap)


# ------------------------------------------------------------------
# Whitehead
# ------------------------------------------------------------------


def _induced_iso_failure(
    f: ADCMap, P: Poset, Q: Poset, elements: Sequence[Chain]
) -> str | None:
    image = {chain_label(u): chain_label(f.apply(u)) for u in elements}
    missing = sorted(v for v in image.values() if v not in Q)
    if missing:
        return f"Bild {missing[0]} liegt nicht in {Q.name}"
    if len(set(image.values())) != len(image) or len(image) != len(Q):
        return f"{P.name} → {Q.name} ist nicht bijektiv"
    for a in P:
        for b in P:
            if P.le(a, b) != Q.le(image[a], image[b]):
                return f"Ordnung zwischen {a} und {b} wird nicht erhalten"
    return None


def is_n_equivalence(f: ADCMap, n: int, cap: int = DEFAULT_CAP) -> Verdict:
    """Für alle m ≤ n und alle (m−1)-Basispunkte Z induziert f πₘ(X, Z) ≅ πₘ(Y, fZ)."""
    _require_map(f)
    for m in range(n + 1):
        for Z in enumerate_basepoints(f.source, m - 1, cap):
            P = pi_n(f.source, Z, cap)
            Q = pi_n(f.target, Z.mapped(f), cap)
            failure = _induced_iso_failure(f, P, Q, homotopy_elements(f.source, Z, cap))
            if failure is not None:
                log.info("%s ist keine %d-Äquivalenz: %s", f.label(), n, failure)
                return Verdict(False, cap, witness=f"m={m}, Z={Z}: {failure}")
    return Verdict(True, cap)


def is_n_directed(X: AugmentedDirectedComplex, n: int, cap: int = DEFAULT_CAP) -> Verdict:
    """
    0-gerichtet: gegenseitige Pfeile nur zwischen gleichen Objekten;
    (n+1)-gerichtet: 0-gerichtet und alle Mor-Posets n-gerichtet.
    Verlangt keine Schleifenfreiheit.
    """
    solver = solver_for(X)
    frontier = [EMPTY_BASEPOINT]
    saturated = True
    for k in range(n + 1):
        following: list[OrientedBasePoint] = []
        for Z in frontier:
            if k == 0:
                cells: Sequence[Chain] = [Chain.generator(0, a) for a in X.in_degree(0)]
            else:
                solutions = solver.solve(k, Z.boundary_target, cap, strict=False, acyclic=False)
                saturated = saturated and solutions.saturated
                cells = solutions.chains
            for u, v in combinations(cells, 2):
                if solver.exists(k + 1, v - u, cap, strict=False) and solver.exists(
                    k + 1, u - v, cap, strict=False
                ):
                    return Verdict(False, cap, saturated, f"{u} ⇄ {v} über {Z}")
            if k < n:
                following.extend(Z.extend(a, b) for a in cells for b in cells)
        frontier = following
    return Verdict(True, cap, saturated)
