"""
Beschränkte stratifizierte Nerven N(X) eines Steiner-Komplexes.

Ein m-Simplex ist eine Abbildung oriental(m) → X, gespeichert als Tupel der
Bildketten aller Erzeuger von oriental(m) (Reihenfolge: größte Ecke, dann Grad).
Koeffizienten sind durch cap beschränkt, Dimensionen durch D.

Dünn ist ein Simplex ab Dimension 1, wenn der oberste Erzeuger auf die Nullkette
geht. Rand- und Entartungsoperatoren entstehen durch Vorschalten der
simplizialen Abbildungen zwischen Orientalen.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from app.cells.solver import solver_for
from app.complexes.adc import AugmentedDirectedComplex, require_valid
from app.complexes.chains import Chain
from app.complexes.shapes import vertex_name
from app.config import DEFAULT_CAP, DEFAULT_NERVE_DIMENSION

log = logging.getLogger(__name__)

Key = tuple[Chain, ...]


# ------------------------------------------------------------------
# Kombinatorik der Orientale
# ------------------------------------------------------------------


@lru_cache(maxsize=32)
def simplex_generators(m: int) -> tuple[tuple[int, ...], ...]:
    """Eckenmengen der Erzeuger von oriental(m) in Speicherreihenfolge."""
    cells = [c for k in range(m + 1) for c in combinations(range(m + 1), k + 1)]
    return tuple(sorted(cells, key=lambda c: (c[-1], len(c), c)))


@lru_cache(maxsize=32)
def _position(m: int) -> dict[tuple[int, ...], int]:
    return {cell: i for i, cell in enumerate(simplex_generators(m))}


@lru_cache(maxsize=1024)
def _operator(k: int, m: int, vertices: tuple[int, ...]) -> tuple[tuple[int | None, int], ...]:
    """Für θ: [k] → [m] pro Erzeuger von oriental(k): Position des Bildes (None = kollabiert)."""
    position = _position(m)
    result = []
    for cell in simplex_generators(k):
        image = tuple(vertices[v] for v in cell)
        degree = len(cell) - 1
        if len(set(image)) != len(image):
            result.append((None, degree))
        else:
            result.append((position[image], degree))
    return tuple(result)


def restriction_key(key: Key, m: int, k: int, vertices: Sequence[int]) -> Key:
    """Simplex key ∘ θ für die monotone Abbildung θ: [k] → [m], i ↦ vertices[i]."""
    return tuple(
        Chain.zero(degree) if pos is None else key[pos]
        for pos, degree in _operator(k, m, tuple(vertices))
    )


def face_key(key: Key, m: int, i: int) -> Key:
    return restriction_key(key, m, m - 1, [v for v in range(m + 1) if v != i])


def degeneracy_key(key: Key, m: int, j: int) -> Key:
    return restriction_key(key, m, m + 1, list(range(j + 1)) + list(range(j, m + 1)))


def top_chain(key: Key) -> Chain:
    return key[-1]


def key_images(key: Key, m: int) -> dict[str, Chain]:
    """Erzeugername in oriental(m) → Bildkette."""
    return {vertex_name(cell, m): c for cell, c in zip(simplex_generators(m), key)}


def _key_sort(key: Key) -> tuple[str, ...]:
    return tuple(str(c) for c in key)


# ------------------------------------------------------------------
# Stratifizierte simpliziale Mengen
# ------------------------------------------------------------------


@dataclass(frozen=True)
class StratifiedSimplicialSet:
    name: str
    dimension: int
    cap: int
    simplices: tuple[tuple[Key, ...], ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degeneracies: tuple[tuple[tuple[int, ...], ...], ...]
    thin: tuple[frozenset[int], ...]
    parent: StratifiedSimplicialSet | None = None
    inclusion: tuple[tuple[int, ...], ...] | None = None

    def count(self, m: int) -> int:
        return len(self.simplices[m]) if 0 <= m <= self.dimension else 0

    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)

    def index(self, m: int, key: Key) -> int:
        return self._lookup[m][key]

    def contains(self, m: int, key: Key) -> bool:
        return 0 <= m <= self.dimension and key in self._lookup[m]

    @cached_property
    def _lookup(self) -> list[dict[Key, int]]:
        return [{key: i for i, key in enumerate(level)} for level in self.simplices]

    def is_thin(self, m: int, x: int) -> bool:
        return x in self.thin[m]

    def face(self, m: int, x: int, i: int) -> int:
        return self.faces[m][x][i]

    def degeneracy(self, m: int, x: int, j: int) -> int:
        return self.degeneracies[m][x][j]

    def degenerate_as(self, m: int, x: int) -> int | None:
        """Ein j mit x = s_j d_j x, sonst None."""
        for j in range(m):
            if self.degeneracy(m - 1, self.face(m, x, j), j) == x:
                return j
        return None

    def is_degenerate(self, m: int, x: int) -> bool:
        return m > 0 and self.degenerate_as(m, x) is not None

    def decompose(self, m: int, x: int) -> tuple[int, int, tuple[int, ...]]:
        """Eilenberg–Zilber: x = s_{j₁} … s_{jᵣ} y, y nicht entartet; (dim y, y, js)."""
        ops: list[int] = []
        while m > 0:
            j = self.degenerate_as(m, x)
            if j is None:
                break
            ops.append(j)
            x = self.face(m, x, j)
            m -= 1
        return m, x, tuple(ops)

    def root_dim(self, m: int, x: int) -> int:
        return self.decompose(m, x)[0]

    def nondegenerate(self, m: int) -> list[int]:
        return [x for x in range(self.count(m)) if not self.is_degenerate(m, x)]

    def simplicial_identity_errors(self) -> list[str]:
        errors: list[str] = []
        D = self.dimension
        for m in range(D + 1):
            for x in range(self.count(m)):
                if m >= 2:
                    for j in range(m + 1):
                        for i in range(j):
                            lhs = self.face(m - 1, self.face(m, x, j), i)
                            rhs = self.face(m - 1, self.face(m, x, i), j - 1)
                            if lhs != rhs:
                                errors.append(f"d{i}d{j} ≠ d{j - 1}d{i} auf {m}-Simplex {x}")
                if m < D:
                    for j in range(m + 1):
                        y = self.degeneracy(m, x, j)
                        if self.face(m + 1, y, j) != x or self.face(m + 1, y, j + 1) != x:
                            errors.append(f"d{j}s{j} oder d{j + 1}s{j} ≠ id auf {m}-Simplex {x}")
                        if y not in self.thin[m + 1]:
                            errors.append(f"s{j} von {m}-Simplex {x} ist nicht dünn")
                        for i in range(m + 2):
                            if m == 0 or i in (j, j + 1):
                                continue
                            lhs = self.face(m + 1, y, i)
                            if i < j:
                                rhs = self.degeneracy(m - 1, self.face(m, x, i), j - 1)
                            else:
                                rhs = self.degeneracy(m - 1, self.face(m, x, i - 1), j)
                            if lhs != rhs:
                                errors.append(f"d{i}s{j} falsch auf {m}-Simplex {x}")
                if m + 1 < D:
                    for j in range(m + 1):
                        for i in range(j + 1):
                            lhs = self.degeneracy(m + 1, self.degeneracy(m, x, j), i)
                            rhs = self.degeneracy(m + 1, self.degeneracy(m, x, i), j + 1)
                            if lhs != rhs:
                                errors.append(f"s{i}s{j} ≠ s{j + 1}s{i} auf {m}-Simplex {x}")
                if self.is_degenerate(m, x) and x not in self.thin[m]:
                    errors.append(f"entarteter {m}-Simplex {x} ist nicht dünn")
        return errors

    def to_json(self) -> dict[str, object]:
        levels = []
        for m, level in enumerate(self.simplices):
            entries = []
            for x, key in enumerate(level):
                entries.append(
                    {
                        "images": {g: c.to_json() for g, c in key_images(key, m).items()},
                        "faces": list(self.faces[m][x]),
                        "degeneracies": list(self.degeneracies[m][x]),
                        "thin": x in self.thin[m],
                        "degenerate": self.is_degenerate(m, x),
                    }
                )
            levels.append(entries)
        return {
            "name": self.name,
            "dimension": self.dimension,
            "cap": self.cap,
            "counts": list(self.counts()),
            "simplices": levels,
        }


# ------------------------------------------------------------------
# Nerv
# ------------------------------------------------------------------


def _enumerate_simplices(X: AugmentedDirectedComplex, m: int, cap: int) -> list[Key]:
    cells = simplex_generators(m)
    position = _position(m)
    solver = solver_for(X)
    objects = [Chain.generator(0, a) for a in X.in_degree(0)]
    values: list[Chain] = []
    found: list[Key] = []

    def descend(i: int) -> None:
        if i == len(cells):
            found.append(tuple(values))
            return
        cell = cells[i]
        degree = len(cell) - 1
        if degree == 0:
            options: Sequence[Chain] = objects
        else:
            # ∂ des Erzeugers: alternierende Summe der Seiten
            acc: list[tuple[str, int]] = []
            for k in range(degree + 1):
                face = values[position[cell[:k] + cell[k + 1 :]]]
                acc.extend((g, (-1) ** k * c) for g, c in face.terms)
            options = solver.solve(degree, Chain.of(degree - 1, acc), cap).chains
        for option in options:
            values.append(option)
            descend(i + 1)
            values.pop()

    descend(0)
    return sorted(found, key=_key_sort)


def stratified_nerve(
    X: AugmentedDirectedComplex,
    dimension: int = DEFAULT_NERVE_DIMENSION,
    cap: int = DEFAULT_CAP,
) -> StratifiedSimplicialSet:
    require_valid(X)
    if dimension < 0:
        raise ValueError(f"Nervdimension {dimension} < 0")
    simplices = [tuple(_enumerate_simplices(X, m, cap)) for m in range(dimension + 1)]
    lookup = [{key: i for i, key in enumerate(level)} for level in simplices]

    faces = []
    degeneracies = []
    thin = []
    for m, level in enumerate(simplices):
        faces.append(
            tuple(
                tuple(lookup[m - 1][face_key(key, m, i)] for i in range(m + 1)) if m else ()
                for key in level
            )
        )
        degeneracies.append(
            tuple(
                tuple(lookup[m + 1][degeneracy_key(key, m, j)] for j in range(m + 1))
                if m < dimension
                else ()
                for key in level
            )
        )
        thin.append(
            frozenset(x for x, key in enumerate(level) if m and top_chain(key).is_zero)
        )

    S = StratifiedSimplicialSet(
        name=f"N({X.name})",
        dimension=dimension,
        cap=cap,
        simplices=tuple(simplices),
        faces=tuple(faces),
        degeneracies=tuple(degeneracies),
        thin=tuple(thin),
    )
    for m in range(1, dimension + 1):
        for x in range(S.count(m)):
            assert not S.is_degenerate(m, x) or x in S.thin[m], "entartet ⇒ dünn"
    log.info("%s: Simplizes %s (D=%d, cap=%d)", S.name, S.counts(), dimension, cap)
    return S


def skeleton(S: StratifiedSimplicialSet, n: int) -> StratifiedSimplicialSet:
    """sk_n(S): Simplizes, die von Dimension ≤ n entarten; mit Inklusion in S."""
    if n >= S.dimension:
        return S
    keep = [
        tuple(x for x in range(S.count(m)) if n >= 0 and S.root_dim(m, x) <= n)
        for m in range(S.dimension + 1)
    ]
    reindex = [{x: i for i, x in enumerate(level)} for level in keep]
    return StratifiedSimplicialSet(
        name=f"sk{n}({S.name})",
        dimension=S.dimension,
        cap=S.cap,
        simplices=tuple(
            tuple(S.simplices[m][x] for x in level) for m, level in enumerate(keep)
        ),
        faces=tuple(
            tuple(tuple(reindex[m - 1][y] for y in S.faces[m][x]) for x in level)
            for m, level in enumerate(keep)
        ),
        degeneracies=tuple(
            tuple(tuple(reindex[m + 1][y] for y in S.degeneracies[m][x]) for x in level)
            for m, level in enumerate(keep)
        ),
        thin=tuple(
            frozenset(reindex[m][x] for x in level if x in S.thin[m])
            for m, level in enumerate(keep)
        ),
        parent=S,
        inclusion=tuple(keep),
    )


def nondegenerate(S: StratifiedSimplicialSet, n: int) -> tuple[list[int], list[int]]:
    """(dünne, nicht dünne) nicht entartete n-Simplizes."""
    if not 0 <= n <= S.dimension:
        return [], []
    simplices = S.nondegenerate(n)
    return (
        [x for x in simplices if S.is_thin(n, x)],
        [x for x in simplices if not S.is_thin(n, x)],
    )
