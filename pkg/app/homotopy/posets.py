"""
Endliche Posets: Ergebnistyp aller Homotopie-Invarianten.

Ein Poset wird aus einer beliebigen Relation gebaut: reflexiv-transitive Hülle
über networkx, starke Zusammenhangskomponenten werden zu einem Element
verdichtet (Repräsentant = erstes Label in Eingabereihenfolge). Die Ordnung
wird transitiv abgeschlossen gespeichert.

Vergleichsposets: chain(n), antichain(k), boolean_lattice(S), weak_order(n)
und das Produkt poset_product(P, Q).
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
from networkx.algorithms import isomorphism

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Poset:
    elements: tuple[str, ...]
    order: frozenset[tuple[int, int]]
    name: str = ""
    classes: tuple[tuple[str, ...], ...] = ()

    # ------------------------------------------------------------------
    # Konstruktion
    # ------------------------------------------------------------------

    @classmethod
    def from_relation(
        cls,
        labels: Sequence[str],
        pairs: Iterable[tuple[str, str]],
        name: str = "",
    ) -> Poset:
        """Poset aus Erzeugerrelation; Zyklen werden verdichtet."""
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"{name or 'Poset'}: doppelte Labels")
        position = {label: i for i, label in enumerate(labels)}

        graph = nx.DiGraph()
        graph.add_nodes_from(labels)
        graph.add_edges_from((a, b) for a, b in pairs if a != b)

        condensed = nx.condensation(graph)
        members = {
            node: sorted(data["members"], key=position.__getitem__)
            for node, data in condensed.nodes(data=True)
        }
        nodes = sorted(members, key=lambda node: position[members[node][0]])
        index = {node: i for i, node in enumerate(nodes)}

        closure = nx.transitive_closure_dag(condensed)
        order = {(i, i) for i in range(len(nodes))}
        order.update((index[a], index[b]) for a, b in closure.edges)

        merged = tuple(tuple(members[node]) for node in nodes)
        if any(len(group) > 1 for group in merged):
            log.debug("%s: %d Klassen verdichtet", name, sum(len(g) > 1 for g in merged))
        return cls(
            elements=tuple(members[node][0] for node in nodes),
            order=frozenset(order),
            name=name,
            classes=merged,
        )

    # ------------------------------------------------------------------
    # Abfragen
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label: object) -> bool:
        return label in self._class_of

    @cached_property
    def _class_of(self) -> dict[str, int]:
        mapping = {label: i for i, label in enumerate(self.elements)}
        for i, group in enumerate(self.classes):
            for label in group:
                mapping[label] = i
        return mapping

    @property
    def condensed(self) -> bool:
        return any(len(group) > 1 for group in self.classes)

    def index(self, label: str) -> int:
        return self._class_of[label]

    def class_of(self, label: str) -> str:
        """Repräsentant der Klasse, zu der label gehört."""
        return self.elements[self._class_of[label]]

    def le(self, a: str, b: str) -> bool:
        return (self._class_of[a], self._class_of[b]) in self.order

    def lt(self, a: str, b: str) -> bool:
        return self.le(a, b) and self.index(a) != self.index(b)

    def relation(self) -> set[tuple[str, str]]:
        """Ordnung als Menge von Labelpaaren (inkl. Reflexivität)."""
        return {(self.elements[i], self.elements[j]) for i, j in self.order}

    def same_as(self, other: Poset) -> bool:
        return set(self.elements) == set(other.elements) and self.relation() == other.relation()

    def strict_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(
            (self.elements[i], self.elements[j]) for i, j in self.order if i != j
        )
        return graph

    @cached_property
    def hasse_graph(self) -> nx.DiGraph:
        reduced = nx.transitive_reduction(self.strict_graph())
        reduced.add_nodes_from(self.elements)
        return reduced

    def covers(self) -> list[tuple[str, str]]:
        return sorted(self.hasse_graph.edges, key=lambda e: (self.index(e[0]), self.index(e[1])))

    def minimal(self) -> list[str]:
        return [x for x in self.elements if self.hasse_graph.in_degree(x) == 0]

    def maximal(self) -> list[str]:
        return [x for x in self.elements if self.hasse_graph.out_degree(x) == 0]

    def minimum(self) -> str | None:
        lows = self.minimal()
        return lows[0] if len(lows) == 1 else None

    def maximum(self) -> str | None:
        highs = self.maximal()
        return highs[0] if len(highs) == 1 else None

    def heights(self) -> dict[str, int]:
        """Länge der längsten Kette unterhalb jedes Elements."""
        heights: dict[str, int] = {}
        for x in nx.topological_sort(self.hasse_graph):
            below = [heights[y] + 1 for y in self.hasse_graph.predecessors(x)]
            heights[x] = max(below, default=0)
        return heights

    def rank_profile(self) -> tuple[int, ...]:
        counts = Counter(self.heights().values())
        return tuple(counts[h] for h in range(max(counts, default=-1) + 1))

    def subposet(self, labels: Iterable[str], name: str | None = None) -> Poset:
        wanted = set(labels)
        keep = [x for x in self.elements if x in wanted]
        pairs = [(a, b) for a in keep for b in keep if self.le(a, b)]
        return Poset.from_relation(keep, pairs, name=self.name if name is None else name)

    # ------------------------------------------------------------------
    # Ausgabe
    # ------------------------------------------------------------------

    def to_json(self) -> dict[str, list]:
        return {
            "elements": list(self.elements),
            "leq": [list(pair) for pair in sorted(self.order)],
        }

    def to_dot(self) -> str:
        def quote(label: str) -> str:
            return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'

        lines = [f"digraph {quote(self.name or 'poset')} {{", "  rankdir=BT;"]
        lines.append("  node [shape=plaintext];")
        lines.extend(f"  {quote(x)};" for x in self.elements)
        lines.extend(f"  {quote(a)} -> {quote(b)};" for a, b in self.covers())
        lines.append("}")
        return "\n".join(lines) + "\n"


def hasse(P: Poset) -> list[tuple[str, str]]:
    return P.covers()


# ------------------------------------------------------------------
# Vergleichsposets
# ------------------------------------------------------------------


def empty_poset(name: str = "∅") -> Poset:
    return Poset((), frozenset(), name=name)


def singleton(label: str = "*", name: str = "") -> Poset:
    return Poset.from_relation([label], [], name=name or label)


def chain(n: int) -> Poset:
    """[n]: n+1 total geordnete Elemente 0 < 1 < … < n."""
    labels = [str(i) for i in range(n + 1)]
    return Poset.from_relation(labels, zip(labels, labels[1:]), name=f"[{n}]")


def antichain(k: int) -> Poset:
    return Poset.from_relation([str(i) for i in range(k)], [], name=f"antichain({k})")


def _subset_label(subset: Sequence[str]) -> str:
    return "{" + ",".join(subset) + "}" if subset else "∅"


def boolean_lattice(atoms: Iterable[str] | int) -> Poset:
    """Teilmengen nach Inklusion; eine Zahl n steht für die Atome 1..n."""
    if isinstance(atoms, int):
        atoms = [str(i) for i in range(1, atoms + 1)]
    base = sorted(set(atoms))
    subsets = [c for r in range(len(base) + 1) for c in itertools.combinations(base, r)]
    labels = [_subset_label(s) for s in subsets]
    pairs = [
        (_subset_label(s), _subset_label(t))
        for s in subsets
        for t in subsets
        if len(t) == len(s) + 1 and set(s) <= set(t)
    ]
    return Poset.from_relation(labels, pairs, name=f"P({_subset_label(base)})")


def _permutation_label(perm: Sequence[int]) -> str:
    if not perm:
        return "id"
    return ("" if len(perm) < 10 else ".").join(str(v) for v in perm)


def inversion_set(perm: Sequence[int]) -> frozenset[tuple[int, int]]:
    """Wertepaare (a, b) mit a < b, die in perm in umgekehrter Reihenfolge stehen."""
    return frozenset(
        (perm[j], perm[i])
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )


def weak_order(n: int) -> Poset:
    """Schwache Bruhat-Ordnung auf Sₙ per Inklusion der Inversionsmengen."""
    if n < 0:
        raise ValueError(f"weak_order({n}): n muss ≥ 0 sein")
    perms = list(itertools.permutations(range(1, n + 1)))
    inversions = {p: inversion_set(p) for p in perms}
    pairs = [
        (_permutation_label(p), _permutation_label(q))
        for p in perms
        for q in perms
        if p != q and inversions[p] <= inversions[q]
    ]
    return Poset.from_relation([_permutation_label(p) for p in perms], pairs, name=f"S{n}")


def weak_order_generated(n: int) -> Poset:
    """Dieselbe Ordnung, erzeugt von ρ ≤ ρ∘(i i+1) für ρ(i) < ρ(i+1)."""
    if n < 0:
        raise ValueError(f"weak_order_generated({n}): n muss ≥ 0 sein")
    perms = list(itertools.permutations(range(1, n + 1)))
    pairs = []
    for p in perms:
        for i in range(n - 1):
            if p[i] < p[i + 1]:
                q = p[:i] + (p[i + 1], p[i]) + p[i + 2 :]
                pairs.append((_permutation_label(p), _permutation_label(q)))
    return Poset.from_relation([_permutation_label(p) for p in perms], pairs, name=f"S{n}")


def poset_product(P: Poset, Q: Poset) -> Poset:
    labels = [f"({a},{b})" for a in P.elements for b in Q.elements]
    pairs = [
        (f"({P.elements[i]},{Q.elements[k]})", f"({P.elements[j]},{Q.elements[l]})")
        for i, j in P.order
        for k, l in Q.order
    ]
    return Poset.from_relation(labels, pairs, name=f"{P.name}×{Q.name}")


# ------------------------------------------------------------------
# Isomorphie
# ------------------------------------------------------------------


@dataclass(frozen=True)
class PosetIsomorphism:
    mapping: dict[str, str] | None
    mismatch: str | None = None

    def __bool__(self) -> bool:
        return self.mapping is not None


def poset_iso(P: Poset, Q: Poset) -> PosetIsomorphism:
    """Ordnungsisomorphismus oder die erste unterscheidende Invariante."""
    if len(P) != len(Q):
        return PosetIsomorphism(None, f"Größen: {len(P)} ≠ {len(Q)}")
    p_covers, q_covers = P.hasse_graph.number_of_edges(), Q.hasse_graph.number_of_edges()
    if p_covers != q_covers:
        return PosetIsomorphism(None, f"Überdeckungen: {p_covers} ≠ {q_covers}")
    if P.rank_profile() != Q.rank_profile():
        return PosetIsomorphism(
            None, f"Rangprofile: {P.rank_profile()} ≠ {Q.rank_profile()}"
        )
    matcher = isomorphism.DiGraphMatcher(P.hasse_graph, Q.hasse_graph)
    mapping = next(matcher.isomorphisms_iter(), None)
    if mapping is None:
        return PosetIsomorphism(None, "Hasse-Diagramme nicht isomorph")
    return PosetIsomorphism(dict(mapping))
