import json
import logging

import pytest

import app.cli
from app.cells.solver import UnsaturatedEnumeration
from app.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_UNSATURATED, EXIT_USAGE, main
from app.complexes.adc import AugmentedDirectedComplex
from app.complexes.chains import Chain
from app.complexes.serialization import complex_to_json, dumps
from app.config import Settings


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def cycle_file(tmp_path):
    a, b = Chain.generator(0, "a"), Chain.generator(0, "b")
    X = AugmentedDirectedComplex("zyklus", (("a", "b"), ("e", "f")), {"e": b - a, "f": a - b})
    path = tmp_path / "zyklus.json"
    path.write_text(dumps(complex_to_json(X)), encoding="utf-8")
    return str(path)


# ------------------------------------------------------------------
# Formen
# ------------------------------------------------------------------


def test_build_cube_equals_tensor(capsys):
    code, cube = run(capsys, "build", "cube:2")
    assert code == EXIT_OK
    _, tensor = run(capsys, "build", "tensor", "oriental:1", "oriental:1")
    assert cube == tensor
    assert json.loads(cube)["generators"][0] == ["0⊗0", "0⊗1", "1⊗0", "1⊗1"]


def test_build_invalid_complex(capsys, tmp_path):
    code, out = run(capsys, "build", cycle_file(tmp_path))
    assert code == EXIT_CHECK_FAILED
    assert json.loads(out)["name"] == "zyklus"


def test_validate(capsys, tmp_path):
    code, out = run(capsys, "validate", "oriental:3")
    assert code == EXIT_OK
    code, out = run(capsys, "validate", cycle_file(tmp_path))
    assert code == EXIT_CHECK_FAILED
    assert not json.loads(out)["ok"]


# ------------------------------------------------------------------
# Homotopie
# ------------------------------------------------------------------


def test_pi0(capsys):
    code, out = run(capsys, "pi0", "oriental:2", "--cap", "2")
    assert code == EXIT_OK
    assert json.loads(out)["poset"]["elements"] == ["0", "1", "2"]


def test_pi_as_dot(capsys):
    code, out = run(
        capsys, "pi", "oriental:3", "--n", "1", "--basepoint", "0,3", "--format", "dot",
        "--cap", "2",
    )
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert out.count("->") == 4


def test_pi_prime(capsys):
    code, out = run(capsys, "pi", "oriental:2", "--basepoint", "1,1", "--prime")
    assert code == EXIT_OK
    assert json.loads(out)["poset"]["elements"] == ["id"]


def test_truncate(capsys):
    code, out = run(capsys, "truncate", "oriental:2", "--level", "1", "--cap", "2")
    assert code == EXIT_OK
    category = json.loads(out)["category"]
    assert category["objects"] == ["0", "1", "2"]
    assert category["composition_errors"] == []


def test_check_full(capsys):
    code, out = run(
        capsys, "check-full", "inclusion", "--source", "boundary:1", "--target", "disk:1",
        "--n", "1", "--cap", "2",
    )
    assert code == EXIT_CHECK_FAILED
    assert json.loads(out)["holds"] is False


def test_check_equivalence(capsys):
    code, _ = run(
        capsys, "check-equivalence", "identity", "--source", "oriental:2", "--n", "2",
        "--cap", "2",
    )
    assert code == EXIT_OK


def test_fiber(capsys):
    code, out = run(
        capsys, "fiber", "face:0,2", "--target", "oriental:2", "--object", "2", "--cap", "2"
    )
    assert code == EXIT_OK
    assert len(json.loads(out)["poset"]["elements"]) == 3


def test_les_check(capsys):
    code, out = run(
        capsys, "les-check", "face:0,2", "--target", "oriental:2", "--basepoint", "0,1",
        "--cap", "2",
    )
    assert code == EXIT_OK
    assert json.loads(out)["ok"]


# ------------------------------------------------------------------
# Nerven
# ------------------------------------------------------------------


def test_cofiber(capsys):
    code, out = run(capsys, "cofiber", "oriental:2", "--n", "2", "--dim", "2", "--cap", "2")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["categorical_spheres"] == 3
    assert document["homotopical_spheres"] == 1


def test_pushout_check(capsys):
    code, out = run(capsys, "pushout-check", "oriental:2", "--n", "1", "--dim", "2", "--cap", "2")
    assert code == EXIT_OK
    assert json.loads(out)["ok"]


def test_obstruct(capsys):
    code, out = run(
        capsys, "obstruct", "oriental:1", "--target", "oriental:2", "--vertex-map", "0=0,1=2",
        "--cap", "2",
    )
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["agree"]
    assert len(document["formula"]["elements"]) == 2


def test_acceptance_subset(capsys):
    code, out = run(capsys, "acceptance", "--only", "5,7", "--cap", "2")
    assert code == EXIT_OK
    assert out.endswith("3/3 Kriterien erfüllt\n")


# ------------------------------------------------------------------
# Exit-Codes
# ------------------------------------------------------------------


def test_usage_errors(capsys):
    assert main(["bogus"]) == EXIT_USAGE
    assert main(["pi0", "triangle:3"]) == EXIT_USAGE
    assert main(["pi", "oriental:1", "--basepoint", "0,9"]) == EXIT_USAGE
    assert main(["pi0", "point", "--cap", "0"]) == EXIT_USAGE
    assert main(["build", "point", "--format", "dot"]) == EXIT_USAGE
    assert main(["check-full", "identity", "--n", "0"]) == EXIT_USAGE


def test_invalid_complex_exit_code(tmp_path):
    assert main(["pi0", cycle_file(tmp_path)]) == EXIT_CHECK_FAILED


def test_unsaturated_exit_code(monkeypatch):
    def unsaturated(*args, **kwargs):
        raise UnsaturatedEnumeration("wächst weiter")

    monkeypatch.setattr(app.cli, "truncate0", unsaturated)
    assert main(["pi0", "point"]) == EXIT_UNSATURATED


def test_fiber_foot_of_wrong_degree_is_usage_error():
    argv = ["fiber", "identity", "--source", "oriental:1", "--object", "1", "--basepoint", "0,1"]
    assert main(argv) == EXIT_USAGE


def test_les_check_rejects_lax_order(capsys):
    code, out = run(
        capsys, "les-check", "face:0,2", "--target", "oriental:2", "--basepoint", "0,1",
        "--cap", "2", "--lax",
    )
    assert code == EXIT_CHECK_FAILED
    failed = [v for v in json.loads(out)["verdicts"] if not v["ok"]]
    assert {v["item"] for v in failed} == {4}


def test_defaults_come_from_settings(capsys, monkeypatch):
    monkeypatch.setattr(app.cli, "settings", Settings(cap=3))
    _, out = run(capsys, "pi0", "oriental:1")
    assert json.loads(out)["cap"] == 3
    _, out = run(capsys, "pi0", "oriental:1", "--cap", "2")
    assert json.loads(out)["cap"] == 2


def test_log_level_is_case_insensitive(capsys):
    code, _ = run(capsys, "pi0", "point", "--log-level", "debug")
    assert code == EXIT_OK
    assert main(["pi0", "point", "--log-level", "laut"]) == EXIT_USAGE
