"""
Steiner-Zelltabellen für ν(X).

Eine n-Zelle ist eine Tabelle ((x₀⁻,x₀⁺), …, (xₙ⁻,xₙ⁺)) positiver Ketten mit
∂xₖ^± = xₖ₋₁⁺ − xₖ₋₁⁻, ε(x₀^±) = 1 und xₙ⁻ = xₙ⁺. Ein orientierter Basispunkt
der Dimension n ist dieselbe Tabelle ohne die Gleichheit oben: ein Paar paralleler
n-Zellen. Identitätszellen haben die Nullkette als oberen Eintrag.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from app.cells.solver import solver_for
from app.complexes.adc import ADCMap, AugmentedDirectedComplex
from app.complexes.chains import Chain
from app.config import DEFAULT_CAP

log = logging.getLogger(__name__)


class NonComposable(Exception):
    """Eine 1-Kette lässt sich nicht zu einem Pfad atomarer Pfeile A → B ordnen."""


Entry = tuple[Chain, Chain]


def _table_errors(X: AugmentedDirectedComplex, entries: tuple[Entry, ...]) -> list[str]:
    errors: list[str] = []
    for k, (minus, plus) in enumerate(entries):
        for side, chain in (("−", minus), ("+", plus)):
            if chain.degree != k:
                errors.append(f"x{k}{side} hat Grad {chain.degree}, erwartet {k}")
                continue
            unknown = sorted(g for g in chain.support if g not in X or X.degree(g) != k)
            if unknown:
                errors.append(f"x{k}{side} enthält fremde Erzeuger {', '.join(unknown)}")
                continue
            if not chain.is_positive:
                errors.append(f"x{k}{side} = {chain} ist nicht positiv")
            if k == 0 and X.augmentation(chain) != 1:
                errors.append(f"ε(x0{side}) = {X.augmentation(chain)} ≠ 1")
            if k > 0:
                low_minus, low_plus = entries[k - 1]
                if X.boundary_of(chain) != low_plus - low_minus:
                    errors.append(f"∂x{k}{side} ≠ x{k - 1}⁺ − x{k - 1}⁻")
    return errors


def _entries_json(entries: tuple[Entry, ...]) -> list[list[list[list[int | str]]]]:
    return [[minus.to_json(), plus.to_json()] for minus, plus in entries]


@dataclass(frozen=True)
class OrientedBasePoint:
    entries: tuple[Entry, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.entries) - 1

    @property
    def top(self) -> Entry:
        return self.entries[-1]

    @property
    def boundary_target(self) -> Chain:
        """xₙ⁺ − xₙ⁻: Randvorgabe der Zellen über diesem Basispunkt."""
        minus, plus = self.top
        return plus - minus

    def extend(self, minus: Chain, plus: Chain) -> OrientedBasePoint:
        return OrientedBasePoint(self.entries + ((minus, plus),))

    def lower(self, dim: int) -> OrientedBasePoint:
        """Abschneiden auf Dimension dim."""
        return OrientedBasePoint(self.entries[: dim + 1])

    def errors(self, X: AugmentedDirectedComplex) -> list[str]:
        return _table_errors(X, self.entries)

    def mapped(self, f: ADCMap) -> OrientedBasePoint:
        return OrientedBasePoint(tuple((f.apply(m), f.apply(p)) for m, p in self.entries))

    def sort_key(self) -> tuple[str, ...]:
        return tuple(str(c) for pair in self.entries for c in pair)

    def __str__(self) -> str:
        if not self.entries:
            return "∅"
        return "; ".join(f"{m},{p}" for m, p in self.entries)

    def to_json(self) -> list[list[list[list[int | str]]]]:
        return _entries_json(self.entries)


@dataclass(frozen=True)
class CellTable:
    entries: tuple[Entry, ...]

    @property
    def dim(self) -> int:
        return len(self.entries) - 1

    @property
    def top(self) -> Chain:
        return self.entries[-1][0]

    @property
    def is_identity(self) -> bool:
        return self.dim >= 1 and self.top.is_zero

    @property
    def basepoint(self) -> OrientedBasePoint:
        """Der Rand der Zelle als Basispunkt der Dimension n−1."""
        return OrientedBasePoint(self.entries[:-1])

    def errors(self, X: AugmentedDirectedComplex) -> list[str]:
        errors = _table_errors(X, self.entries)
        minus, plus = self.entries[-1]
        if minus != plus:
            errors.append(f"obere Einträge verschieden: {minus} ≠ {plus}")
        return errors

    def sort_key(self) -> tuple[str, ...]:
        return tuple(str(c) for pair in self.entries for c in pair)

    def to_json(self) -> list[list[list[list[int | str]]]]:
        return _entries_json(self.entries)


def atom_table(X: AugmentedDirectedComplex, generator: str) -> CellTable:
    return CellTable(X.atom(generator))


# ------------------------------------------------------------------
# Aufzählung
# ------------------------------------------------------------------


@lru_cache(maxsize=512)
def enumerate_basepoints(
    X: AugmentedDirectedComplex, k: int, cap: int = DEFAULT_CAP
) -> tuple[OrientedBasePoint, ...]:
    """Alle orientierten Basispunkte der Dimension k (k = −1: der leere Basispunkt)."""
    if k < -1:
        raise ValueError(f"Basispunkt-Dimension {k} < −1")
    if k == -1:
        return (OrientedBasePoint(),)
    if k == 0:
        objects = [Chain.generator(0, a) for a in X.in_degree(0)]
        return tuple(OrientedBasePoint(((a, b),)) for a in objects for b in objects)

    solver = solver_for(X)
    result: list[OrientedBasePoint] = []
    for Z in enumerate_basepoints(X, k - 1, cap):
        cells = solver.solve(k, Z.boundary_target, cap).chains
        result.extend(Z.extend(a, b) for a in cells for b in cells)
    log.debug("%s: %d Basispunkte der Dimension %d", X.name, len(result), k)
    return tuple(sorted(result, key=OrientedBasePoint.sort_key))


def cells_over(
    X: AugmentedDirectedComplex, Z: OrientedBasePoint, cap: int = DEFAULT_CAP
) -> tuple[CellTable, ...]:
    """Alle (dim Z + 1)-Zellen mit Rand Z."""
    if Z.dim == -1:
        return tuple(CellTable(((Chain.generator(0, a),) * 2,)) for a in X.in_degree(0))
    chains = solver_for(X).solve(Z.dim + 1, Z.boundary_target, cap).chains
    return tuple(CellTable(Z.entries + ((c, c),)) for c in chains)


def enumerate_cells(
    X: AugmentedDirectedComplex, n: int, cap: int = DEFAULT_CAP
) -> tuple[CellTable, ...]:
    if n < 0:
        raise ValueError(f"Zelldimension {n} < 0")
    cells: list[CellTable] = []
    for Z in enumerate_basepoints(X, n - 1, cap):
        cells.extend(cells_over(X, Z, cap))
    return tuple(sorted(cells, key=CellTable.sort_key))


# ------------------------------------------------------------------
# Atomare Pfade
# ------------------------------------------------------------------


def _endpoint(X: AugmentedDirectedComplex, chain: Chain, arrow: str) -> str:
    name = chain.single_generator()
    if name is None:
        raise NonComposable(f"{arrow} hat keinen eindeutigen Endpunkt ({chain})")
    return name


def arrow_endpoints(X: AugmentedDirectedComplex, arrow: str) -> tuple[str, str]:
    """(Quelle, Ziel) eines Erzeugers von Grad 1."""
    boundary = X.boundary(arrow)
    return (
        _endpoint(X, boundary.negative_part(), arrow),
        _endpoint(X, boundary.positive_part(), arrow),
    )


def atomic_path_decomposition(
    X: AugmentedDirectedComplex, chain: Chain, endpoints: tuple[str, str]
) -> list[str]:
    """Zerlegt eine positive 1-Kette A → B in die Folge ihrer atomaren Pfeile."""
    start, end = endpoints
    if chain.degree != 1 or not chain.is_positive:
        raise NonComposable(f"{chain} ist keine positive 1-Kette")
    expected = Chain.generator(0, end) - Chain.generator(0, start)
    if X.boundary_of(chain) != expected:
        raise NonComposable(f"∂({chain}) ≠ {end} − {start}")

    remaining = chain.as_dict()
    current = start
    path: list[str] = []
    while remaining:
        candidates = sorted(a for a in remaining if arrow_endpoints(X, a)[0] == current)
        if not candidates:
            raise NonComposable(f"kein Pfeil von {current} in {chain}")
        step = candidates[0]
        path.append(step)
        remaining[step] -= 1
        if not remaining[step]:
            del remaining[step]
        current = arrow_endpoints(X, step)[1]
    if current != end:
        raise NonComposable(f"Pfad endet in {current} statt {end}")
    return path
