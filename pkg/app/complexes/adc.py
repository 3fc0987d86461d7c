"""
Augmentierte gerichtete Kettenkomplexe (Steiner-Komplexe) und ihre Abbildungen.

Ein Komplex besteht aus benannten Erzeugern pro Grad und dem Differential auf
Erzeugern von Grad ≥ 1. Die Augmentierung ist implizit: ε(g) = 1 für jeden
Erzeuger in Grad 0.

validate() prüft die Steiner-Voraussetzungen:
- ∂∂ = 0 und ε∂ = 0,
- unitale Atome (ε(⟨g⟩₀⁻) = ε(⟨g⟩₀⁺) = 1),
- starke Schleifenfreiheit (Graph a→b für a ∈ supp ∂⁻b oder b ∈ supp ∂⁺a ist azyklisch).

Konstruktionen melden Verletzungen nur als Warnung; alle Homotopie-Berechnungen
verlangen require_valid().
"""
from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx
from networkx.algorithms import isomorphism

from app.complexes.chains import Chain

log = logging.getLogger(__name__)


class InvalidComplex(Exception):
    """
    Wird ausgelöst wenn ein Komplex die Steiner-Voraussetzungen verletzt,
    aber eine Homotopie-Berechnung sie benötigt. Trägt die Diagnose.
    """

    def __init__(self, diagnostics: Diagnostics) -> None:
        super().__init__(diagnostics.summary())
        self.diagnostics = diagnostics


class InvalidMap(Exception):
    """Eine Abbildung verträgt sich nicht mit ∂, ε oder Positivität."""

    def __init__(self, diagnostics: Diagnostics) -> None:
        super().__init__(diagnostics.summary())
        self.diagnostics = diagnostics


# ------------------------------------------------------------------
# Komplex
# ------------------------------------------------------------------


@dataclass(frozen=True)
class AugmentedDirectedComplex:
    name: str
    generators: tuple[tuple[str, ...], ...]
    differential: Mapping[str, Chain] = field(default_factory=dict)
    endpoints: tuple[str, str] | None = None

    def __post_init__(self) -> None:
        levels = tuple(tuple(level) for level in self.generators)
        degree: dict[str, int] = {}
        for n, level in enumerate(levels):
            for name in level:
                if name in degree:
                    raise ValueError(f"Erzeuger {name!r} kommt in {self.name} doppelt vor")
                degree[name] = n

        for name in self.differential:
            if name not in degree:
                raise ValueError(f"Differential für unbekannten Erzeuger {name!r}")
            if degree[name] == 0:
                raise ValueError(f"Erzeuger {name!r} hat Grad 0 und kein Differential")

        # Jeder Erzeuger ab Grad 1 bekommt einen Eintrag (ggf. die Nullkette)
        diff: dict[str, Chain] = {}
        for n, level in enumerate(levels[1:], start=1):
            for name in level:
                chain = self.differential.get(name)
                if chain is None:
                    chain = Chain.zero(n - 1)
                if chain.degree != n - 1:
                    raise ValueError(
                        f"∂{name} hat Grad {chain.degree}, erwartet {n - 1}"
                    )
                diff[name] = chain

        if self.endpoints is not None:
            for end in self.endpoints:
                if degree.get(end) != 0:
                    raise ValueError(f"Endpunkt {end!r} ist kein Erzeuger von Grad 0")

        object.__setattr__(self, "generators", levels)
        object.__setattr__(self, "differential", diff)
        object.__setattr__(self, "_degree", degree)

    def __hash__(self) -> int:
        return hash((self.name, self.generators))

    # ------------------------------------------------------------------
    # Abfragen
    # ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        """Höchster Grad; der leere Komplex hat Dimension −1."""
        return len(self.generators) - 1

    def __contains__(self, name: object) -> bool:
        return name in self._degree

    def degree(self, name: str) -> int:
        try:
            return self._degree[name]
        except KeyError:
            raise KeyError(f"{name!r} ist kein Erzeuger von {self.name}") from None

    def in_degree(self, n: int) -> tuple[str, ...]:
        if 0 <= n < len(self.generators):
            return self.generators[n]
        return ()

    def names(self) -> Iterator[str]:
        for level in self.generators:
            yield from level

    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.generators)

    def same_structure(self, other: AugmentedDirectedComplex) -> bool:
        """Gleich bis auf den Namen."""
        return (
            self.generators == other.generators
            and self.differential == other.differential
            and self.endpoints == other.endpoints
        )

    def boundary(self, name: str) -> Chain:
        return self.differential[name]

    def boundary_of(self, chain: Chain) -> Chain:
        if chain.degree == 0:
            raise ValueError("Ketten in Grad 0 haben keinen Rand")
        acc: list[tuple[str, int]] = []
        for name, k in chain.terms:
            acc.extend((g, k * c) for g, c in self.boundary(name).terms)
        return Chain.of(chain.degree - 1, acc)

    @staticmethod
    def augmentation(chain: Chain) -> int:
        if chain.degree != 0:
            raise ValueError("Augmentierung ist nur in Grad 0 definiert")
        return sum(k for _, k in chain.terms)

    def atom(self, name: str) -> tuple[tuple[Chain, Chain], ...]:
        """Atom ⟨g⟩: iterierte negative/positive Randanteile, Grad k an Position k."""
        n = self.degree(name)
        top = Chain.generator(n, name)
        entries = [(top, top)]
        minus = plus = top
        for _ in range(n):
            minus = self.boundary_of(minus).negative_part()
            plus = self.boundary_of(plus).positive_part()
            entries.append((minus, plus))
        entries.reverse()
        return tuple(entries)


# ------------------------------------------------------------------
# Diagnose
# ------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    generator: str | None
    detail: str

    def to_json(self) -> dict[str, str | None]:
        return {"kind": self.kind, "generator": self.generator, "detail": self.detail}


@dataclass(frozen=True)
class Diagnostics:
    subject: str
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def raise_if_failed(self, error: type[Exception] | None = None) -> None:
        if not self.ok:
            raise (error or InvalidComplex)(self)

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        items = "; ".join(f"[{v.kind}] {v.detail}" for v in self.violations)
        return f"{self.subject}: {items}"

    def to_json(self) -> dict[str, object]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }


def loop_graph(X: AugmentedDirectedComplex) -> nx.DiGraph:
    """Graph der starken Schleifenfreiheit: a→b für a ∈ supp ∂⁻b und b→c für c ∈ supp ∂⁺b."""
    graph = nx.DiGraph()
    graph.add_nodes_from(X.names())
    for name, chain in X.differential.items():
        for g, k in chain.terms:
            if k < 0:
                graph.add_edge(g, name)
            else:
                graph.add_edge(name, g)
    return graph


@lru_cache(maxsize=256)
def validate(X: AugmentedDirectedComplex) -> Diagnostics:
    violations: list[Violation] = []

    for name, chain in X.differential.items():
        n = X.degree(name)
        stray = sorted(g for g in chain.support if X._degree.get(g) != n - 1)
        if stray:
            violations.append(
                Violation(
                    "structure",
                    name,
                    f"∂{name} enthält Erzeuger außerhalb von Grad {n - 1}: {', '.join(stray)}",
                )
            )
    if violations:
        # Ohne saubere Struktur sind die übrigen Prüfungen nicht auswertbar
        return Diagnostics(X.name, tuple(violations))

    for n in range(2, X.dim + 1):
        for name in X.in_degree(n):
            twice = X.boundary_of(X.boundary(name))
            if not twice.is_zero:
                violations.append(
                    Violation("boundary-squared", name, f"∂∂{name} = {twice} ≠ 0")
                )

    for name in X.in_degree(1):
        eps = X.augmentation(X.boundary(name))
        if eps != 0:
            violations.append(Violation("augmentation", name, f"ε∂{name} = {eps} ≠ 0"))

    for name in X.names():
        low_minus, low_plus = X.atom(name)[0]
        eps_minus, eps_plus = X.augmentation(low_minus), X.augmentation(low_plus)
        if eps_minus != 1 or eps_plus != 1:
            violations.append(
                Violation(
                    "atom",
                    name,
                    f"Atom ⟨{name}⟩ nicht unital: ε(x₀⁻) = {eps_minus}, ε(x₀⁺) = {eps_plus}",
                )
            )

    try:
        cycle = nx.find_cycle(loop_graph(X))
    except nx.NetworkXNoCycle:
        pass
    else:
        nodes = [u for u, _ in cycle] + [cycle[0][0]]
        violations.append(
            Violation("loop", nodes[0], f"Zyklus {' → '.join(nodes)}")
        )

    diagnostics = Diagnostics(X.name, tuple(violations))
    if not diagnostics.ok:
        log.debug("Validierung fehlgeschlagen: %s", diagnostics.summary())
    return diagnostics


def require_valid(X: AugmentedDirectedComplex) -> None:
    validate(X).raise_if_failed(InvalidComplex)


def warn_if_invalid(X: AugmentedDirectedComplex) -> AugmentedDirectedComplex:
    """Konstruktionen dürfen ungültige Komplexe liefern – aber nicht stillschweigend."""
    diagnostics = validate(X)
    if not diagnostics.ok:
        log.warning("Konstruktion liefert keinen Steiner-Komplex: %s", diagnostics.summary())
    return X


# ------------------------------------------------------------------
# Isomorphie von Komplexen
# ------------------------------------------------------------------


def _incidence_graph(X: AugmentedDirectedComplex) -> nx.DiGraph:
    graph = nx.DiGraph()
    for n, level in enumerate(X.generators):
        for name in level:
            graph.add_node(name, degree=n)
    for name, chain in X.differential.items():
        for g, k in chain.terms:
            graph.add_edge(name, g, coefficient=k)
    return graph


def complex_isomorphism(
    X: AugmentedDirectedComplex, Y: AugmentedDirectedComplex
) -> dict[str, str] | None:
    """Gradweise Bijektion der Erzeuger, die mit ∂ vertauscht, oder None."""
    if X.counts() != Y.counts():
        return None
    same_names = all(set(a) == set(b) for a, b in zip(X.generators, Y.generators))
    if same_names and X.differential == Y.differential:
        return {name: name for name in X.names()}

    matcher = isomorphism.DiGraphMatcher(
        _incidence_graph(X),
        _incidence_graph(Y),
        node_match=isomorphism.categorical_node_match("degree", None),
        edge_match=isomorphism.categorical_edge_match("coefficient", 0),
    )
    return next(matcher.isomorphisms_iter(), None)


# ------------------------------------------------------------------
# Abbildungen
# ------------------------------------------------------------------


@dataclass(frozen=True)
class ADCMap:
    source: AugmentedDirectedComplex
    target: AugmentedDirectedComplex
    images: Mapping[str, Chain]
    name: str = ""

    def image(self, generator: str) -> Chain:
        chain = self.images.get(generator)
        if chain is None:
            return Chain.zero(self.source.degree(generator))
        return chain

    def apply(self, chain: Chain) -> Chain:
        acc: list[tuple[str, int]] = []
        for name, k in chain.terms:
            acc.extend((g, k * c) for g, c in self.image(name).terms)
        return Chain.of(chain.degree, acc)

    def label(self) -> str:
        return self.name or f"{self.source.name} → {self.target.name}"


def compose_maps(g: ADCMap, f: ADCMap) -> ADCMap:
    """g∘f."""
    if f.target != g.source:
        raise ValueError(f"Nicht komponierbar: {f.label()} gefolgt von {g.label()}")
    images = {name: g.apply(f.image(name)) for name in f.source.names()}
    return ADCMap(f.source, g.target, images, name=f"{g.label()} ∘ {f.label()}")


def validate_map(f: ADCMap) -> Diagnostics:
    src, tgt = f.source, f.target
    violations: list[Violation] = []

    for name in f.images:
        if name not in src:
            violations.append(Violation("unknown", name, f"{name!r} ist kein Erzeuger der Quelle"))

    for name in src.names():
        n = src.degree(name)
        image = f.image(name)
        if image.degree != n:
            violations.append(
                Violation("degree", name, f"Bild von {name} hat Grad {image.degree}, erwartet {n}")
            )
            continue
        stray = sorted(g for g in image.support if g not in tgt or tgt.degree(g) != n)
        if stray:
            violations.append(
                Violation("unknown", name, f"Bild von {name} enthält {', '.join(stray)}")
            )
            continue
        if not image.is_positive:
            violations.append(
                Violation("positivity", name, f"Bild von {name} = {image} ist nicht positiv")
            )
        if n == 0:
            eps = tgt.augmentation(image)
            if eps != 1:
                violations.append(
                    Violation("augmentation", name, f"ε(f({name})) = {eps} ≠ 1")
                )
        else:
            lhs = tgt.boundary_of(image)
            rhs = f.apply(src.boundary(name))
            if lhs != rhs:
                violations.append(
                    Violation("differential", name, f"∂f({name}) = {lhs}, f(∂{name}) = {rhs}")
                )

    return Diagnostics(f.label(), tuple(violations))


def require_valid_map(f: ADCMap) -> None:
    validate_map(f).raise_if_failed(InvalidMap)


def is_isomorphism(f: ADCMap) -> bool:
    """Jeder Erzeuger geht auf genau einen Erzeuger, gradweise bijektiv."""
    if f.source.counts() != f.target.counts():
        return False
    hit: set[str] = set()
    for name in f.source.names():
        target = f.image(name).single_generator()
        if target is None:
            return False
        hit.add(target)
    return len(hit) == sum(f.target.counts())
