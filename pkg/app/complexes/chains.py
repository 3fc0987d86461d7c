"""
Ketten: ganzzahlige Linearkombinationen von Erzeugern eines festen Grades.

Eine Kette ist unveränderlich und kanonisch: Terme nach Erzeugername sortiert,
keine Nullkoeffizienten. Damit sind gleiche Ketten auch als Tupel gleich und
lassen sich als Dict-Schlüssel und in Caches verwenden.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Chain:
    degree: int
    terms: tuple[tuple[str, int], ...] = ()

    # ------------------------------------------------------------------
    # Konstruktion
    # ------------------------------------------------------------------

    @classmethod
    def of(
        cls, degree: int, coefficients: Mapping[str, int] | Iterable[tuple[str, int]]
    ) -> Chain:
        """Baut eine kanonische Kette; doppelte Erzeuger werden aufsummiert."""
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        acc: dict[str, int] = {}
        for name, k in items:
            acc[name] = acc.get(name, 0) + k
        return cls(degree, tuple(sorted((n, k) for n, k in acc.items() if k)))

    @classmethod
    def zero(cls, degree: int) -> Chain:
        return cls(degree, ())

    @classmethod
    def generator(cls, degree: int, name: str) -> Chain:
        return cls(degree, ((name, 1),))

    # ------------------------------------------------------------------
    # Abfragen
    # ------------------------------------------------------------------

    def coefficient(self, name: str) -> int:
        for n, k in self.terms:
            if n == name:
                return k
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_positive(self) -> bool:
        return all(k > 0 for _, k in self.terms)

    @property
    def max_coefficient(self) -> int:
        return max((abs(k) for _, k in self.terms), default=0)

    def single_generator(self) -> str | None:
        """Name des Erzeugers, falls die Kette genau ein Erzeuger mit Koeffizient 1 ist."""
        if len(self.terms) == 1 and self.terms[0][1] == 1:
            return self.terms[0][0]
        return None

    def positive_part(self) -> Chain:
        return Chain(self.degree, tuple((n, k) for n, k in self.terms if k > 0))

    def negative_part(self) -> Chain:
        """c⁻ mit c = c⁺ − c⁻; selbst eine positive Kette."""
        return Chain(self.degree, tuple((n, -k) for n, k in self.terms if k < 0))

    # ------------------------------------------------------------------
    # Arithmetik
    # ------------------------------------------------------------------

    def _check_degree(self, other: Chain) -> None:
        if self.degree != other.degree:
            raise ValueError(
                f"Ketten verschiedener Grade: {self.degree} und {other.degree}"
            )

    def __add__(self, other: Chain) -> Chain:
        self._check_degree(other)
        return Chain.of(self.degree, self.terms + other.terms)

    def __sub__(self, other: Chain) -> Chain:
        self._check_degree(other)
        return Chain.of(self.degree, self.terms + tuple((n, -k) for n, k in other.terms))

    def __neg__(self) -> Chain:
        return Chain(self.degree, tuple((n, -k) for n, k in self.terms))

    def scaled(self, factor: int) -> Chain:
        if factor == 0:
            return Chain.zero(self.degree)
        return Chain(self.degree, tuple((n, k * factor) for n, k in self.terms))

    def shifted(self, offset: int) -> Chain:
        """Dieselben Terme in Grad degree+offset (Suspension)."""
        return Chain(self.degree + offset, self.terms)

    def renamed(self, mapping: Mapping[str, str]) -> Chain:
        return Chain.of(self.degree, [(mapping.get(n, n), k) for n, k in self.terms])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (name, k) in enumerate(self.terms):
            sign = "-" if k < 0 else ("+" if i else "")
            magnitude = abs(k)
            parts.append(f"{sign}{name}" if magnitude == 1 else f"{sign}{magnitude}*{name}")
        return "".join(parts)

    def to_json(self) -> list[list[int | str]]:
        return [[k, n] for n, k in self.terms]


def chain_label(chain: Chain) -> str:
    """Kanonisches Label für Poset-Elemente: Objektname in Grad 0, "id" für die Nullkette."""
    if chain.degree == 0:
        name = chain.single_generator()
        if name is not None:
            return name
    if chain.is_zero:
        return "id"
    return str(chain)
