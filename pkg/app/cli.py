"""
Kommandozeile: Standardformen bauen, Invarianten berechnen, JSON/DOT ausgeben.

Ergebnisse gehen nach stdout, Logs nach stderr. Alle Einstellungen kommen aus
Flags, nicht aus der Umgebung. Exit-Codes:
  0  Erfolg
  1  Prüfung fehlgeschlagen oder Komplex ungültig
  2  Bedienfehler (Flags, Formen, Basispunkte, Abbildungen)
  3  Aufzählung nicht gesättigt (cap erhöhen)
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path

from pydantic import ValidationError

from app.acceptance import format_table, run_acceptance
from app.cells.solver import UnsaturatedEnumeration
from app.cells.tables import NonComposable, OrientedBasePoint
from app.complexes.adc import (
    ADCMap,
    AugmentedDirectedComplex,
    InvalidComplex,
    InvalidMap,
    validate,
)
from app.complexes.chains import Chain
from app.complexes.serialization import complex_to_json, dumps, load_complex, load_map
from app.complexes.shapes import (
    WedgeError,
    boundary_disk,
    collapse_map,
    core,
    cube,
    disk,
    dual_co,
    dual_op,
    empty_complex,
    gray_tensor,
    identity_map,
    inclusion_map,
    oriental,
    point,
    simplicial_operator,
    suspension,
    wedge,
)
from app.config import Settings, settings
from app.homotopy.fibers import InvalidObject, les_exactness_check, oriented_right_fiber_pi0
from app.homotopy.groups import EMPTY_BASEPOINT, InvalidBasepoint, pi_n, pi_prime_n
from app.homotopy.posets import Poset, poset_iso
from app.homotopy.truncation import (
    Verdict,
    is_n_connected,
    is_n_equivalence,
    is_n_faithful,
    is_n_full,
    is_n_truncated,
    truncate0,
    truncate1,
)
from app.logging_setup import configure_logging
from app.skeleta.nerve import (
    StratifiedSimplicialSet,
    nondegenerate,
    skeleton,
    stratified_nerve,
)
from app.skeleta.obstruction import (
    IncompatibleF,
    SkeletalFunctor,
    brute_force_extensions,
    obstruction_factors,
    obstruction_poset,
    verify_skeletal_pushout,
    wedge_cofiber_profile,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSATURATED = 3


class UsageError(Exception):
    """Form-, Basispunkt- oder Abbildungsangabe ist nicht lesbar."""


# Fachliche Eingabefehler zählen wie Bedienfehler
_USAGE_ERRORS = (
    UsageError,
    InvalidBasepoint,
    InvalidObject,
    IncompatibleF,
    NonComposable,
    WedgeError,
    InvalidMap,
    ValidationError,
    OSError,
)


@dataclass(frozen=True)
class Command:
    verb: str
    args: argparse.Namespace
    settings: Settings

    def emit(self, payload: dict[str, object], dot: str | None = None) -> None:
        if self.settings.output_format == "dot":
            if dot is None:
                raise UsageError(f"{self.verb} hat keine DOT-Ausgabe")
            sys.stdout.write(dot)
            return
        sys.stdout.write(dumps(payload))

    def emit_poset(self, P: Poset) -> None:
        self.emit(
            {"name": P.name, "cap": self.settings.cap, "saturated": True, "poset": P.to_json()},
            P.to_dot(),
        )


# ------------------------------------------------------------------
# Eingaben lesen
# ------------------------------------------------------------------

_SIZED_SHAPES: dict[str, Callable[[int], AugmentedDirectedComplex]] = {
    "oriental": oriental,
    "cube": cube,
    "disk": disk,
    "boundary": boundary_disk,
}

_UNARY_SHAPES: dict[str, Callable[[AugmentedDirectedComplex], AugmentedDirectedComplex]] = {
    "suspend": suspension,
    "op": dual_op,
    "co": dual_co,
}


def _size(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"{what}: {text!r} ist keine Zahl") from None
    if value < 0:
        raise UsageError(f"{what}: {value} < 0")
    return value


def parse_shape(text: str) -> AugmentedDirectedComplex:
    """oriental:n, cube:n, disk:n, boundary:n, point, empty, suspend:/op:/co:FORM, JSON-Datei."""
    if text.endswith(".json"):
        return load_complex(Path(text).read_text(encoding="utf-8"))
    if text == "point":
        return point()
    if text == "empty":
        return empty_complex()
    head, sep, rest = text.partition(":")
    if sep and head in _SIZED_SHAPES:
        return _SIZED_SHAPES[head](_size(rest, head))
    if sep and head in _UNARY_SHAPES:
        return _UNARY_SHAPES[head](parse_shape(rest))
    raise UsageError(f"unbekannte Form {text!r}")


def parse_chain(text: str, degree: int) -> Chain:
    """'id' für die Nullkette, sonst Summanden 'k*name' oder 'name', getrennt durch '+'."""
    text = text.strip()
    if text in ("id", ""):
        return Chain.zero(degree)
    terms: list[tuple[str, int]] = []
    for term in text.split("+"):
        coefficient, star, name = term.strip().partition("*")
        if star:
            terms.append((name.strip(), _size(coefficient, "Koeffizient")))
        else:
            terms.append((coefficient, 1))
    return Chain.of(degree, terms)


def parse_basepoint(text: str | None) -> OrientedBasePoint:
    """'a,b;u,v;…': k-ter Eintrag ist das Paar (xₖ⁻, xₖ⁺)."""
    if not text:
        return EMPTY_BASEPOINT
    entries = []
    for k, entry in enumerate(text.split(";")):
        parts = entry.split(",")
        if len(parts) != 2:
            raise UsageError(f"Basispunkt-Eintrag {entry!r} braucht genau zwei Ketten")
        entries.append((parse_chain(parts[0], k), parse_chain(parts[1], k)))
    return OrientedBasePoint(tuple(entries))


def parse_vertex_map(text: str) -> dict[str, str]:
    mapping = {}
    for item in text.split(","):
        source, sep, target = item.partition("=")
        if not sep:
            raise UsageError(f"Eckenzuordnung {item!r} hat nicht die Form a=b")
        mapping[source.strip()] = target.strip()
    return mapping


def parse_map(spec: str, source: str | None, target: str | None) -> ADCMap:
    """identity, inclusion, collapse, face:v0,v1,… oder JSON-Datei mit --source/--target."""
    if spec == "identity":
        return identity_map(_required_shape(source, "--source"))
    if spec == "collapse":
        return collapse_map(_required_shape(source, "--source"))
    if spec == "inclusion":
        return inclusion_map(
            _required_shape(source, "--source"), _required_shape(target, "--target")
        )
    if spec.startswith("face:"):
        vertices = [_size(v, "Ecke") for v in spec.removeprefix("face:").split(",")]
        n = _required_shape(target, "--target").dim if target else max(vertices, default=0)
        try:
            return simplicial_operator(len(vertices) - 1, n, vertices)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if spec.endswith(".json"):
        return load_map(
            Path(spec).read_text(encoding="utf-8"),
            _required_shape(source, "--source"),
            _required_shape(target, "--target"),
        )
    raise UsageError(f"unbekannte Abbildung {spec!r}")


def _required_shape(text: str | None, flag: str) -> AugmentedDirectedComplex:
    if not text:
        raise UsageError(f"{flag} fehlt")
    return parse_shape(text)


# ------------------------------------------------------------------
# Verben
# ------------------------------------------------------------------


def _build(cmd: Command) -> int:
    operands = cmd.args.operands
    head, rest = operands[0], operands[1:]
    if head in ("suspend", "op", "co") and len(rest) == 1:
        X = _UNARY_SHAPES[head](parse_shape(rest[0]))
    elif head == "wedge" and rest:
        X = wedge(*(parse_shape(s) for s in rest))
    elif head == "tensor" and len(rest) == 2:
        X = gray_tensor(parse_shape(rest[0]), parse_shape(rest[1]))
    elif head == "core" and len(rest) == 2:
        X = core(parse_shape(rest[1]), _size(rest[0], "core"))
    elif not rest:
        X = parse_shape(head)
    else:
        raise UsageError(f"build: unbekannte Konstruktion {' '.join(operands)}")
    cmd.emit(complex_to_json(X))
    diagnostics = validate(X)
    if not diagnostics.ok:
        log.error("%s", diagnostics.summary())
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _validate(cmd: Command) -> int:
    diagnostics = validate(parse_shape(cmd.args.shape))
    cmd.emit(diagnostics.to_json())
    return EXIT_OK if diagnostics.ok else EXIT_CHECK_FAILED


def _pi0(cmd: Command) -> int:
    cmd.emit_poset(truncate0(parse_shape(cmd.args.shape), cmd.settings.cap))
    return EXIT_OK


def _pi(cmd: Command) -> int:
    X = parse_shape(cmd.args.shape)
    Z = parse_basepoint(cmd.args.basepoint)
    if cmd.args.n is not None and cmd.args.n != Z.dim + 1:
        raise UsageError(f"--n {cmd.args.n} passt nicht zu einem Basispunkt der Dimension {Z.dim}")
    compute = pi_prime_n if cmd.args.prime else pi_n
    cmd.emit_poset(compute(X, Z, cmd.settings.cap))
    return EXIT_OK


def _truncate(cmd: Command) -> int:
    X = parse_shape(cmd.args.shape)
    if cmd.args.level == 0:
        cmd.emit_poset(truncate0(X, cmd.settings.cap))
        return EXIT_OK
    category = truncate1(X, cmd.settings.cap)
    cmd.emit({"cap": cmd.settings.cap, "category": category.to_json()})
    return EXIT_OK


def _command_map(cmd: Command) -> ADCMap:
    return parse_map(cmd.args.map, cmd.args.source, cmd.args.target)


_PREDICATES: dict[str, Callable[[ADCMap, int, int], Verdict]] = {
    "full": is_n_full,
    "faithful": is_n_faithful,
    "connected": is_n_connected,
    "truncated": is_n_truncated,
}


def _emit_verdict(cmd: Command, f: ADCMap, kind: str, verdict: Verdict) -> int:
    cmd.emit({"map": f.label(), "predicate": kind, "n": cmd.args.n, **verdict.to_json()})
    return EXIT_OK if verdict else EXIT_CHECK_FAILED


def _check_full(cmd: Command) -> int:
    f = _command_map(cmd)
    kind = cmd.args.kind
    return _emit_verdict(cmd, f, kind, _PREDICATES[kind](f, cmd.args.n, cmd.settings.cap))


def _check_equivalence(cmd: Command) -> int:
    f = _command_map(cmd)
    verdict = is_n_equivalence(f, cmd.args.n, cmd.settings.cap)
    return _emit_verdict(cmd, f, "equivalence", verdict)


def _fiber(cmd: Command) -> int:
    f = _command_map(cmd)
    Z = parse_basepoint(cmd.args.basepoint)
    foot: str | Chain = cmd.args.object
    if Z.dim >= 0:
        foot = parse_chain(cmd.args.object, Z.dim + 1)
    convention = "lax" if cmd.args.lax else "oplax"
    cmd.emit_poset(oriented_right_fiber_pi0(f, foot, cmd.settings.cap, convention, Z))
    return EXIT_OK


def _les_check(cmd: Command) -> int:
    f = _command_map(cmd)
    convention = "lax" if cmd.args.lax else "oplax"
    report = les_exactness_check(
        f, parse_basepoint(cmd.args.basepoint), cmd.args.n, cmd.settings.cap, convention
    )
    cmd.emit(report.to_json(), report.fiber.to_dot())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _nerve(cmd: Command) -> StratifiedSimplicialSet:
    return stratified_nerve(
        parse_shape(cmd.args.shape), cmd.settings.nerve_dimension, cmd.settings.cap
    )


def _nerve_verb(cmd: Command) -> int:
    cmd.emit(_nerve(cmd).to_json())
    return EXIT_OK


def _skeleton(cmd: Command) -> int:
    S = skeleton(_nerve(cmd), cmd.args.n)
    thin, nonthin = nondegenerate(S, cmd.args.n)
    cmd.emit({**S.to_json(), "nondegenerate": {"thin": thin, "nonthin": nonthin}})
    return EXIT_OK


def _pushout_check(cmd: Command) -> int:
    report = verify_skeletal_pushout(_nerve(cmd), cmd.args.n)
    cmd.emit(report.to_json())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _cofiber(cmd: Command) -> int:
    S = _nerve(cmd)
    categorical, homotopical = wedge_cofiber_profile(S, cmd.args.n)
    cmd.emit(
        {
            "nerve": S.name,
            "n": cmd.args.n,
            "dimension": S.dimension,
            "cap": S.cap,
            "categorical_spheres": categorical,
            "homotopical_spheres": homotopical,
        }
    )
    return EXIT_OK


def _obstruct(cmd: Command) -> int:
    X, Y = parse_shape(cmd.args.shape), _required_shape(cmd.args.target, "--target")
    S = stratified_nerve(X, 1, cmd.settings.cap)
    F = SkeletalFunctor.from_vertex_map(S, Y, parse_vertex_map(cmd.args.vertex_map))
    cap = cmd.settings.cap
    formula, brute = obstruction_poset(F, cap), brute_force_extensions(F, cap)
    agree = bool(poset_iso(formula, brute))
    cmd.emit(
        {
            "cap": cap,
            "factors": [factor.to_json() for factor in obstruction_factors(F, cap)],
            "formula": formula.to_json(),
            "brute_force": brute.to_json(),
            "agree": agree,
        },
        formula.to_dot(),
    )
    return EXIT_OK if agree else EXIT_CHECK_FAILED


def _acceptance(cmd: Command) -> int:
    only = None
    if cmd.args.only:
        only = [_size(n, "--only") for n in cmd.args.only.split(",")]
    results = run_acceptance(cmd.settings.cap, cmd.settings.seed, only)
    if cmd.args.format == "json":
        sys.stdout.write(dumps([r.to_json() for r in results]))
    else:
        sys.stdout.write(format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


# ------------------------------------------------------------------
# Parser
# ------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="Koeffizientenschranke (Standard 8)")
    common.add_argument("--dim", type=int, help="Nerv-Dimension D (Standard 4)")
    common.add_argument("--format", choices=("json", "dot"), help="Ausgabeformat")
    common.add_argument("--seed", type=int, help="Startwert für Zufallswege")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR")
    return common


def _map_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("map", help="identity | inclusion | collapse | face:v0,… | datei.json")
    parser.add_argument("--source", help="Quellform")
    parser.add_argument("--target", help="Zielform")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="steiner-posets",
        description="Homotopie-Posets, Trunkierungen und Skelette von Steiner-Komplexen.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("build", parents=[common], help="Form bauen und als JSON ausgeben")
    p.add_argument("operands", nargs="+", help="FORM | suspend/op/co FORM | wedge … | tensor …")
    p.set_defaults(handler=_build)

    p = verbs.add_parser("validate", parents=[common], help="Steiner-Voraussetzungen prüfen")
    p.add_argument("shape")
    p.set_defaults(handler=_validate)

    p = verbs.add_parser("pi0", parents=[common], help="π₀ als Poset")
    p.add_argument("shape")
    p.set_defaults(handler=_pi0)

    p = verbs.add_parser("pi", parents=[common], help="πₙ an einem Basispunkt")
    p.add_argument("shape")
    p.add_argument("--n", type=int)
    p.add_argument("--basepoint", help="'a,b;u,v;…'")
    p.add_argument("--prime", action="store_true", help="π′ statt π")
    p.set_defaults(handler=_pi)

    p = verbs.add_parser("truncate", parents=[common], help="τ≤0 oder τ≤1")
    p.add_argument("shape")
    p.add_argument("--level", type=int, choices=(0, 1), default=1)
    p.set_defaults(handler=_truncate)

    p = verbs.add_parser("check-full", parents=[common], help="Lift-Prädikate einer Abbildung")
    _map_options(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=sorted(_PREDICATES), default="full")
    p.set_defaults(handler=_check_full)

    p = verbs.add_parser("check-equivalence", parents=[common], help="Whitehead-n-Äquivalenz")
    _map_options(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_check_equivalence)

    p = verbs.add_parser("fiber", parents=[common], help="π₀ der orientierten rechten Faser")
    _map_options(p)
    p.add_argument("--object", required=True, help="Objekt bzw. Kette des Ziels")
    p.add_argument("--basepoint", help="unterer Basispunkt in der Quelle")
    p.add_argument("--lax", action="store_true")
    p.set_defaults(handler=_fiber)

    p = verbs.add_parser("les-check", parents=[common], help="Exaktheit der langen Folge")
    _map_options(p)
    p.add_argument("--basepoint", required=True)
    p.add_argument("--n", type=int, choices=(0, 1), default=0)
    p.add_argument("--lax", action="store_true")
    p.set_defaults(handler=_les_check)

    p = verbs.add_parser("nerve", parents=[common], help="stratifizierter Nerv")
    p.add_argument("shape")
    p.set_defaults(handler=_nerve_verb)

    for verb, handler, text in (
        ("skeleton", _skeleton, "n-Skelett des Nervs"),
        ("pushout-check", _pushout_check, "Pushout-Zählung sk_{n-1} → sk_n"),
        ("cofiber", _cofiber, "Sphären in sk_n/sk_{n-1}"),
    ):
        p = verbs.add_parser(verb, parents=[common], help=text)
        p.add_argument("shape")
        p.add_argument("--n", type=int, required=True)
        p.set_defaults(handler=handler)

    p = verbs.add_parser("obstruct", parents=[common], help="Hindernis-Poset auf sk₀ → sk₁")
    p.add_argument("shape")
    p.add_argument("--target", required=True)
    p.add_argument("--vertex-map", required=True, help="'0=0,1=2'")
    p.set_defaults(handler=_obstruct)

    p = verbs.add_parser("acceptance", parents=[common], help="Abnahme-Lauf")
    p.add_argument("--only", help="Kriteriennummern, z.B. '1,5,7'")
    p.set_defaults(handler=_acceptance)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    """Flags überschreiben die Voreinstellungen aus app.config.settings."""
    overrides = {
        "cap": args.cap,
        "nerve_dimension": args.dim,
        "output_format": args.format,
        "seed": args.seed,
        "log_level": args.log_level.upper() if args.log_level else None,
    }
    values = settings.model_dump() | {k: v for k, v in overrides.items() if v is not None}
    return Settings(**values)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        run_settings = _settings(args)
    except ValidationError as exc:
        sys.stderr.write(f"steiner-posets: {exc}\n")
        return EXIT_USAGE
    configure_logging(run_settings.log_level)
    cmd = Command(args.verb, args, run_settings)

    try:
        return args.handler(cmd)
    except UnsaturatedEnumeration as exc:
        log.error("nicht gesättigt: %s", exc)
        return EXIT_UNSATURATED
    except InvalidComplex as exc:
        log.error("ungültiger Komplex: %s", exc)
        return EXIT_CHECK_FAILED
    except (UsageError, *_USAGE_ERRORS) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
