"""
JSON-Dokumente für Komplexe und Abbildungen.

Ketten werden als [[Koeffizient, Erzeuger], ...] nach Erzeugername sortiert
geschrieben; dumps() liefert bei gleichen Daten byte-gleiche Ausgabe.
"""
from __future__ import annotations

import json
from typing import Any

from pydantic import BaseModel, ConfigDict

from app.complexes.adc import ADCMap, AugmentedDirectedComplex
from app.complexes.chains import Chain

ChainTerms = list[tuple[int, str]]


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _chain(degree: int, terms: ChainTerms) -> Chain:
    return Chain.of(degree, [(name, k) for k, name in terms])


class ComplexDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    generators: list[list[str]]
    differential: dict[str, ChainTerms] = {}
    endpoints: tuple[str, str] | None = None

    @classmethod
    def from_complex(cls, X: AugmentedDirectedComplex) -> ComplexDocument:
        return cls(
            name=X.name,
            generators=[list(level) for level in X.generators],
            differential={
                name: [(k, g) for g, k in chain.terms]
                for name, chain in X.differential.items()
            },
            endpoints=X.endpoints,
        )

    def to_complex(self) -> AugmentedDirectedComplex:
        degree = {name: n for n, level in enumerate(self.generators) for name in level}
        differential = {}
        for name, terms in self.differential.items():
            if name not in degree:
                raise ValueError(f"Differential für unbekannten Erzeuger {name!r}")
            differential[name] = _chain(degree[name] - 1, terms)
        return AugmentedDirectedComplex(
            name=self.name,
            generators=tuple(tuple(level) for level in self.generators),
            differential=differential,
            endpoints=self.endpoints,
        )


class MapDocument(BaseModel):
    """Bilder der Erzeuger; Quelle und Ziel kommen aus dem Kontext."""

    model_config = ConfigDict(extra="forbid")

    name: str = ""
    images: dict[str, ChainTerms]

    @classmethod
    def from_map(cls, f: ADCMap) -> MapDocument:
        return cls(
            name=f.name,
            images={name: [(k, g) for g, k in f.image(name).terms] for name in f.source.names()},
        )

    def to_map(
        self, source: AugmentedDirectedComplex, target: AugmentedDirectedComplex
    ) -> ADCMap:
        images = {}
        for name, terms in self.images.items():
            if name not in source:
                raise ValueError(f"{name!r} ist kein Erzeuger von {source.name}")
            images[name] = _chain(source.degree(name), terms)
        return ADCMap(source, target, images, name=self.name)


def complex_to_json(X: AugmentedDirectedComplex) -> dict[str, Any]:
    return ComplexDocument.from_complex(X).model_dump(mode="json", exclude_none=True)


def load_complex(text: str) -> AugmentedDirectedComplex:
    return ComplexDocument.model_validate_json(text).to_complex()


def map_to_json(f: ADCMap) -> dict[str, Any]:
    return MapDocument.from_map(f).model_dump(mode="json")


def load_map(
    text: str, source: AugmentedDirectedComplex, target: AugmentedDirectedComplex
) -> ADCMap:
    return MapDocument.model_validate_json(text).to_map(source, target)
