"""
Standardformen und Konstruktionen auf Steiner-Komplexen.

- disk(n) = Sⁿ(disk(0)), boundary_disk(n) = Sⁿ(∅)
- oriental(n): normalisierter Kettenkomplex von Δⁿ mit alternierender Randsumme
- gray_tensor / cube(n): Gray-Tensorprodukt mit Koszul-Vorzeichen
- suspension, wedge, core (ι_n), dual_op, dual_co

Namenskonventionen:
- Orientale: Ecken als Ziffernfolge ("012"), ab n ≥ 10 mit Punkten getrennt.
- Tensor: "x⊗y".
- Suspension: neue Endpunkte "⊥"/"⊤" (bei Kollision mit Suffix 1, 2, …).
- Wedge: Objekte "0".."r", übrige Erzeuger "ℓ.name" für den ℓ-ten Faktor.
"""
from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import replace
from functools import lru_cache, reduce
from itertools import combinations

from app.complexes.adc import (
    ADCMap,
    AugmentedDirectedComplex,
    require_valid,
    warn_if_invalid,
)
from app.complexes.chains import Chain

log = logging.getLogger(__name__)

BOTTOM = "⊥"
TOP = "⊤"
POINT = "•"


class WedgeError(Exception):
    """Wedge ohne Faktoren oder mit einem Faktor ohne Endpunkt-Markierung."""


# ------------------------------------------------------------------
# Grundformen
# ------------------------------------------------------------------


def empty_complex() -> AugmentedDirectedComplex:
    return AugmentedDirectedComplex("∅", ())


def point() -> AugmentedDirectedComplex:
    return AugmentedDirectedComplex("disk(0)", ((POINT,),))


def _fresh(X: AugmentedDirectedComplex, base: str) -> str:
    candidate, i = base, 1
    while candidate in X:
        candidate = f"{base}{i}"
        i += 1
    return candidate


def suspension(X: AugmentedDirectedComplex) -> AugmentedDirectedComplex:
    """S(X): zwei neue Objekte ⊥, ⊤; Grad k von X wird Grad k+1."""
    bottom = _fresh(X, BOTTOM)
    top = _fresh(X, TOP)
    arrow = Chain.generator(0, top) - Chain.generator(0, bottom)

    differential: dict[str, Chain] = {name: arrow for name in X.in_degree(0)}
    for name, chain in X.differential.items():
        differential[name] = chain.shifted(1)

    return warn_if_invalid(
        AugmentedDirectedComplex(
            name=f"S({X.name})",
            generators=((bottom, top),) + X.generators,
            differential=differential,
            endpoints=(bottom, top),
        )
    )


def iterated_suspension(X: AugmentedDirectedComplex, m: int) -> AugmentedDirectedComplex:
    for _ in range(m):
        X = suspension(X)
    return X


@lru_cache(maxsize=32)
def disk(n: int) -> AugmentedDirectedComplex:
    if n < 0:
        raise ValueError(f"disk({n}): n muss ≥ 0 sein")
    return replace(iterated_suspension(point(), n), name=f"disk({n})")


@lru_cache(maxsize=32)
def boundary_disk(n: int) -> AugmentedDirectedComplex:
    if n < 0:
        raise ValueError(f"boundary_disk({n}): n muss ≥ 0 sein")
    return replace(iterated_suspension(empty_complex(), n), name=f"boundary_disk({n})")


def vertex_name(vertices: Sequence[int], n: int) -> str:
    """Name des Simplex mit den gegebenen Ecken im Oriental der Dimension n."""
    if n < 10:
        return "".join(str(v) for v in vertices)
    return ".".join(str(v) for v in vertices)


@lru_cache(maxsize=32)
def oriental(n: int) -> AugmentedDirectedComplex:
    if n < 0:
        raise ValueError(f"oriental({n}): n muss ≥ 0 sein")
    generators: list[tuple[str, ...]] = []
    differential: dict[str, Chain] = {}
    for k in range(n + 1):
        level = []
        for vertices in combinations(range(n + 1), k + 1):
            name = vertex_name(vertices, n)
            level.append(name)
            if k:
                faces = [
                    (vertex_name(vertices[:i] + vertices[i + 1 :], n), (-1) ** i)
                    for i in range(k + 1)
                ]
                differential[name] = Chain.of(k - 1, faces)
        generators.append(tuple(level))
    return AugmentedDirectedComplex(f"oriental({n})", tuple(generators), differential)


# ------------------------------------------------------------------
# Gray-Tensorprodukt
# ------------------------------------------------------------------


def gray_tensor(
    X: AugmentedDirectedComplex, Y: AugmentedDirectedComplex
) -> AugmentedDirectedComplex:
    """∂(x⊗y) = ∂x⊗y + (−1)^|x| x⊗∂y; ε(x⊗y) = ε(x)ε(y)."""
    require_valid(X)
    require_valid(Y)
    name = f"{X.name}⊗{Y.name}"
    if X.dim < 0 or Y.dim < 0:
        return AugmentedDirectedComplex(name, ())

    def pair(x: str, y: str) -> str:
        return f"{x}⊗{y}"

    generators: list[tuple[str, ...]] = []
    differential: dict[str, Chain] = {}
    for n in range(X.dim + Y.dim + 1):
        level = []
        for p in range(max(0, n - Y.dim), min(n, X.dim) + 1):
            q = n - p
            for x in X.in_degree(p):
                for y in Y.in_degree(q):
                    level.append(pair(x, y))
                    if n == 0:
                        continue
                    terms: list[tuple[str, int]] = []
                    if p:
                        terms.extend((pair(a, y), k) for a, k in X.boundary(x).terms)
                    if q:
                        sign = (-1) ** p
                        terms.extend((pair(x, b), sign * k) for b, k in Y.boundary(y).terms)
                    differential[pair(x, y)] = Chain.of(n - 1, terms)
        generators.append(tuple(level))

    result = AugmentedDirectedComplex(name, tuple(generators), differential)
    log.debug("Gray-Tensor %s: Erzeuger %s", name, result.counts())
    return warn_if_invalid(result)


@lru_cache(maxsize=16)
def cube(n: int) -> AugmentedDirectedComplex:
    """n-fache Gray-Potenz des Pfeils; cube(0) = disk(0)."""
    if n < 0:
        raise ValueError(f"cube({n}): n muss ≥ 0 sein")
    if n == 0:
        return point()
    return reduce(gray_tensor, [oriental(1)] * n)


# ------------------------------------------------------------------
# Wedge, Kern, Duale
# ------------------------------------------------------------------


def wedge(*factors: AugmentedDirectedComplex) -> AugmentedDirectedComplex:
    """Verklebt ⊤ jedes Faktors mit ⊥ des nächsten."""
    if not factors:
        raise WedgeError("Wedge braucht mindestens einen Faktor")
    for X in factors:
        if X.endpoints is None or X.endpoints[0] == X.endpoints[1]:
            raise WedgeError(f"{X.name} trägt keine Endpunkt-Markierung (⊥, ⊤)")

    r = len(factors)
    depth = max(X.dim for X in factors)
    levels: list[list[str]] = [[] for _ in range(depth + 1)]
    levels[0].extend(str(i) for i in range(r + 1))
    differential: dict[str, Chain] = {}

    for ell, X in enumerate(factors, start=1):
        bottom, top = X.endpoints
        rename = {bottom: str(ell - 1), top: str(ell)}
        for name in X.names():
            if name not in rename:
                rename[name] = f"{ell}.{name}"
        for n, level in enumerate(X.generators):
            levels[n].extend(rename[name] for name in level if name not in (bottom, top))
        for name, chain in X.differential.items():
            differential[rename[name]] = chain.renamed(rename)

    return warn_if_invalid(
        AugmentedDirectedComplex(
            name=" ∨ ".join(X.name for X in factors),
            generators=tuple(tuple(level) for level in levels),
            differential=differential,
            endpoints=("0", str(r)),
        )
    )


def core(X: AugmentedDirectedComplex, n: int) -> AugmentedDirectedComplex:
    """ι_n: verwirft alle Erzeuger von Grad > n."""
    if n < 0:
        raise ValueError(f"core: n muss ≥ 0 sein, nicht {n}")
    if n >= X.dim:
        return X
    generators = X.generators[: n + 1]
    differential = {
        name: chain for name, chain in X.differential.items() if X.degree(name) <= n
    }
    return warn_if_invalid(
        AugmentedDirectedComplex(f"core({X.name},{n})", generators, differential, X.endpoints)
    )


def _toggle_suffix(name: str, suffix: str) -> str:
    return name[: -len(suffix)] if name.endswith(suffix) else name + suffix


def _signed_dual(
    X: AugmentedDirectedComplex, suffix: str, shift: int
) -> AugmentedDirectedComplex:
    differential = {
        name: chain.scaled((-1) ** (X.degree(name) + shift))
        for name, chain in X.differential.items()
    }
    endpoints = X.endpoints
    if endpoints is not None and shift == 0:
        # op dreht 1-Zellen um, damit tauschen ⊥ und ⊤ die Rollen
        endpoints = (endpoints[1], endpoints[0])
    return warn_if_invalid(
        AugmentedDirectedComplex(
            _toggle_suffix(X.name, suffix), X.generators, differential, endpoints
        )
    )


def dual_op(X: AugmentedDirectedComplex) -> AugmentedDirectedComplex:
    """∂ₙ ↦ (−1)ⁿ ∂ₙ: kehrt die ungeraden Zellen um."""
    return _signed_dual(X, "^op", 0)


def dual_co(X: AugmentedDirectedComplex) -> AugmentedDirectedComplex:
    """∂ₙ ↦ (−1)ⁿ⁺¹ ∂ₙ: kehrt die geraden Zellen (ab Grad 2) um."""
    return _signed_dual(X, "^co", 1)


def relabel(
    X: AugmentedDirectedComplex, mapping: Mapping[str, str], name: str | None = None
) -> AugmentedDirectedComplex:
    def rn(g: str) -> str:
        return mapping.get(g, g)

    endpoints = None if X.endpoints is None else (rn(X.endpoints[0]), rn(X.endpoints[1]))
    return AugmentedDirectedComplex(
        name=name or f"{X.name}'",
        generators=tuple(tuple(rn(g) for g in level) for level in X.generators),
        differential={rn(g): chain.renamed(mapping) for g, chain in X.differential.items()},
        endpoints=endpoints,
    )


# ------------------------------------------------------------------
# Abbildungen zwischen Standardformen
# ------------------------------------------------------------------


def identity_map(X: AugmentedDirectedComplex) -> ADCMap:
    images = {name: Chain.generator(X.degree(name), name) for name in X.names()}
    return ADCMap(X, X, images, name=f"id({X.name})")


def inclusion_map(X: AugmentedDirectedComplex, Y: AugmentedDirectedComplex) -> ADCMap:
    """Namensgleiche Inklusion X ↪ Y."""
    images = {}
    for name in X.names():
        if name not in Y or Y.degree(name) != X.degree(name):
            raise ValueError(f"{name!r} fehlt in {Y.name} oder hat dort einen anderen Grad")
        images[name] = Chain.generator(X.degree(name), name)
    return ADCMap(X, Y, images, name=f"{X.name} ↪ {Y.name}")


def collapse_map(X: AugmentedDirectedComplex) -> ADCMap:
    """Eindeutige Abbildung auf den Punkt disk(0)."""
    target = point()
    images = {name: Chain.generator(0, POINT) for name in X.in_degree(0)}
    return ADCMap(X, target, images, name=f"{X.name} → {target.name}")


def relabeling_map(X: AugmentedDirectedComplex, mapping: Mapping[str, str]) -> ADCMap:
    Y = relabel(X, mapping)
    images = {g: Chain.generator(X.degree(g), mapping.get(g, g)) for g in X.names()}
    return ADCMap(X, Y, images, name=f"{X.name} ≅ {Y.name}")


def simplicial_operator(k: int, n: int, vertices: Sequence[int]) -> ADCMap:
    """Von der monotonen Abbildung [k]→[n] (Ecke i ↦ vertices[i]) induzierte Abbildung
    oriental(k) → oriental(n); Simplizes mit kollabierten Ecken gehen auf 0."""
    if len(vertices) != k + 1 or any(not 0 <= v <= n for v in vertices):
        raise ValueError(f"Eckenliste {list(vertices)} passt nicht zu [{k}] → [{n}]")
    if any(a > b for a, b in zip(vertices, vertices[1:])):
        raise ValueError(f"Eckenliste {list(vertices)} ist nicht monoton")
    source, target = oriental(k), oriental(n)
    images: dict[str, Chain] = {}
    for d in range(k + 1):
        for simplex in combinations(range(k + 1), d + 1):
            image = tuple(vertices[i] for i in simplex)
            name = vertex_name(simplex, k)
            if len(set(image)) == len(image):
                images[name] = Chain.generator(d, vertex_name(image, n))
            else:
                images[name] = Chain.zero(d)
    label = ",".join(str(v) for v in vertices)
    return ADCMap(source, target, images, name=f"[{label}]: {source.name} → {target.name}")
