"""
Aufzählung positiver Ketten mit vorgegebenem Rand.

Gesucht sind alle positiven ganzzahligen Ketten c vom Grad n mit ∂c = d und
Koeffizienten ≤ cap. Die Suche ist eine beschränkte Tiefensuche über die
Erzeuger von Grad n in topologischer Reihenfolge des Schleifenfreiheits-Graphen.
Pro Randzeile werden Restbedarf und das mit den noch offenen Erzeugern
erreichbare Intervall [lo, hi] mitgeführt; jeder Wertebereich eines Koeffizienten
ergibt sich aus diesen Schranken.

Sättigung: jede Anfrage wird mit 2·cap wiederholt. Wächst die Lösungsmenge,
ist das Ergebnis unvollständig (UnsaturatedEnumeration).
"""
from __future__ import annotations

import logging
from collections import OrderedDict
from dataclasses import dataclass

import networkx as nx

from app.complexes.adc import (
    AugmentedDirectedComplex,
    Diagnostics,
    InvalidComplex,
    Violation,
    loop_graph,
)
from app.complexes.chains import Chain
from app.config import DEFAULT_CAP

log = logging.getLogger(__name__)


class UnsaturatedEnumeration(Exception):
    """
    Verdopplung der Koeffizientenschranke liefert neue Lösungen.

    Das Ergebnis ist dann nur eine Teilmenge; der Aufrufer muss cap erhöhen
    oder das Ergebnis ausdrücklich als partiell behandeln.
    """


@dataclass(frozen=True)
class ChainSolutions:
    degree: int
    target: Chain
    chains: tuple[Chain, ...]
    cap: int
    saturated: bool

    def __iter__(self):
        return iter(self.chains)

    def __len__(self) -> int:
        return len(self.chains)


@dataclass
class SolverStats:
    searches: int = 0
    cache_hits: int = 0
    unsaturated: int = 0


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


class ChainSolver:
    """Löser für einen festen Komplex; Ergebnisse werden pro Anfrage gecacht."""

    def __init__(self, X: AugmentedDirectedComplex) -> None:
        self._complex = X
        graph = loop_graph(X)
        if nx.is_directed_acyclic_graph(graph):
            order = list(nx.lexicographical_topological_sort(graph))
        else:
            # Nur für is_n_directed auf Komplexen mit Zyklen
            order = sorted(graph)
        self._columns: dict[int, list[tuple[str, dict[str, int]]]] = {}
        for name in order:
            n = X.degree(name)
            if n:
                self._columns.setdefault(n, []).append((name, X.boundary(name).as_dict()))
        self._cache: dict[tuple[int, Chain, int, int], tuple[Chain, ...]] = {}
        self.stats = SolverStats()

    @property
    def complex(self) -> AugmentedDirectedComplex:
        return self._complex

    # ------------------------------------------------------------------
    # Tiefensuche
    # ------------------------------------------------------------------

    def _search(self, n: int, target: Chain, cap: int, limit: int) -> tuple[Chain, ...]:
        key = (n, target, cap, limit)
        cached = self._cache.get(key)
        if cached is not None:
            self.stats.cache_hits += 1
            return cached
        self.stats.searches += 1

        columns = self._columns.get(n, [])
        residual: dict[str, int] = target.as_dict()
        lo: dict[str, int] = {}
        hi: dict[str, int] = {}
        for _, column in columns:
            for row, a in column.items():
                if a > 0:
                    hi[row] = hi.get(row, 0) + a * cap
                else:
                    lo[row] = lo.get(row, 0) + a * cap

        found: list[Chain] = []
        rows = set(residual) | set(lo) | set(hi)
        if all(lo.get(r, 0) <= residual.get(r, 0) <= hi.get(r, 0) for r in rows):
            values = [0] * len(columns)

            def descend(i: int) -> None:
                if i == len(columns):
                    found.append(
                        Chain.of(n, [(columns[j][0], v) for j, v in enumerate(values) if v])
                    )
                    return
                column = columns[i][1]
                for row, a in column.items():
                    if a > 0:
                        hi[row] -= a * cap
                    else:
                        lo[row] -= a * cap

                vmin, vmax = 0, cap
                for row, a in column.items():
                    # lo ≤ rest − a·v ≤ hi
                    r = residual.get(row, 0)
                    low, high = r - hi.get(row, 0), r - lo.get(row, 0)
                    if a > 0:
                        vmin = max(vmin, _ceil_div(low, a))
                        vmax = min(vmax, high // a)
                    else:
                        vmin = max(vmin, _ceil_div(high, a))
                        vmax = min(vmax, low // a)

                for v in range(vmin, vmax + 1):
                    if v:
                        for row, a in column.items():
                            residual[row] = residual.get(row, 0) - a * v
                    values[i] = v
                    descend(i + 1)
                    if v:
                        for row, a in column.items():
                            residual[row] += a * v
                    if limit and len(found) >= limit:
                        break
                values[i] = 0

                for row, a in column.items():
                    if a > 0:
                        hi[row] += a * cap
                    else:
                        lo[row] += a * cap

            descend(0)

        result = tuple(sorted(found, key=str))
        self._cache[key] = result
        return result

    # ------------------------------------------------------------------
    # Öffentliche Schnittstelle
    # ------------------------------------------------------------------

    def _check_request(self, n: int, target: Chain) -> None:
        if n < 1:
            raise ValueError(f"Kettengrad muss ≥ 1 sein, nicht {n}")
        if target.degree != n - 1:
            raise ValueError(f"Randvorgabe hat Grad {target.degree}, erwartet {n - 1}")

    def _unsaturated(self, n: int, target: Chain, cap: int, strict: bool) -> None:
        self.stats.unsaturated += 1
        message = (
            f"{self._complex.name}: Lösungsmenge für ∂c = {target} (Grad {n}) "
            f"wächst bei cap {cap} → {2 * cap}"
        )
        if strict:
            raise UnsaturatedEnumeration(message)
        log.warning("%s – Ergebnis ist partiell", message)

    def solve(
        self,
        n: int,
        target: Chain,
        cap: int = DEFAULT_CAP,
        *,
        strict: bool = True,
        acyclic: bool = True,
    ) -> ChainSolutions:
        """
        Alle positiven Ketten c vom Grad n mit ∂c = target und Koeffizienten ≤ cap.

        Mit acyclic=True ist eine positive Kette mit ∂c = 0 ein Zyklus im
        Schleifenfreiheits-Graphen und damit ein InvalidComplex.
        """
        self._check_request(n, target)
        chains = self._search(n, target, cap, 0)
        doubled = self._search(n, target, 2 * cap, 0)
        saturated = len(doubled) == len(chains)
        if not saturated:
            self._unsaturated(n, target, cap, strict)
        if acyclic and target.is_zero and any(not c.is_zero for c in chains):
            witness = next(c for c in chains if not c.is_zero)
            raise InvalidComplex(
                Diagnostics(
                    self._complex.name,
                    (Violation("loop", None, f"positiver Zyklus {witness} mit ∂ = 0"),),
                )
            )
        return ChainSolutions(n, target, chains, cap, saturated)

    def exists(
        self, n: int, target: Chain, cap: int = DEFAULT_CAP, *, strict: bool = True
    ) -> bool:
        """Existiert eine positive Kette vom Grad n mit ∂c = target?"""
        self._check_request(n, target)
        if target.is_zero:
            return True
        if self._search(n, target, cap, 1):
            return True
        if self._search(n, target, 2 * cap, 1):
            self._unsaturated(n, target, cap, strict)
            return True
        return False


# Höchstzahl gleichzeitig gehaltener Löser; der am längsten unbenutzte fliegt zuerst
SOLVER_LIMIT = 64

_SOLVERS: OrderedDict[AugmentedDirectedComplex, ChainSolver] = OrderedDict()
_RETIRED = SolverStats()


def _add_stats(total: SolverStats, stats: SolverStats) -> None:
    total.searches += stats.searches
    total.cache_hits += stats.cache_hits
    total.unsaturated += stats.unsaturated


def solver_for(X: AugmentedDirectedComplex) -> ChainSolver:
    solver = _SOLVERS.get(X)
    if solver is not None:
        _SOLVERS.move_to_end(X)
        return solver
    solver = _SOLVERS[X] = ChainSolver(X)
    if len(_SOLVERS) > SOLVER_LIMIT:
        evicted, oldest = _SOLVERS.popitem(last=False)
        _add_stats(_RETIRED, oldest.stats)
        log.debug("Löser für %s verworfen", evicted.name)
    return solver


def solver_statistics() -> SolverStats:
    """Summe über alle seit reset_solvers() angelegten Löser, verworfene eingeschlossen."""
    total = SolverStats()
    _add_stats(total, _RETIRED)
    for solver in _SOLVERS.values():
        _add_stats(total, solver.stats)
    return total


def reset_solvers() -> None:
    _SOLVERS.clear()
    _RETIRED.searches = _RETIRED.cache_hits = _RETIRED.unsaturated = 0


def solve_positive_chains(
    X: AugmentedDirectedComplex,
    n: int,
    target: Chain,
    cap: int = DEFAULT_CAP,
    *,
    strict: bool = True,
) -> ChainSolutions:
    return solver_for(X).solve(n, target, cap, strict=strict)
