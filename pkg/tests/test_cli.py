import orjson
import pytest
from click.testing import CliRunner

from src.controllers.cli_controller import cli
from src.infrastructure.services.service_factory import ServiceFactory
from src.utils.constants import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED

DIHEDRAL_ARGS = ["builtin:dihedral-14", "--radius", "1", "--core", "1", "--fibre-radius", "1"]


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_check_command(runner) -> None:
    result = runner.invoke(cli, ["check", "builtin:surface-2"])
    assert result.exit_code == EXIT_OK
    payload = orjson.loads(result.stdout)
    assert payload["passed"]
    assert payload["max_ratio"] == "1/8"


def test_unknown_presentation(runner) -> None:
    result = runner.invoke(cli, ["check", "builtin:nothing"])
    assert result.exit_code == EXIT_INPUT_ERROR
    error = orjson.loads(result.stdout)["error"]
    assert error["code"] == "INPUT_ERROR"
    assert error["summary"] == "Invalid input"
    assert error["exit_code"] == EXIT_INPUT_ERROR


def test_failing_check(runner, tmp_path) -> None:
    path = tmp_path / "torus.json"
    path.write_bytes(orjson.dumps({
        "factors": [{"id": 0, "kind": "abelian", "rank": 1}, {"id": 1, "kind": "abelian", "rank": 1}],
        "relators": [{"syllables": [{"factor": f, "element": e} for f, e in ((0, 1), (1, 1), (0, -1), (1, -1))]}],
    }))
    result = runner.invoke(cli, ["check", str(path)])
    assert result.exit_code == EXIT_VERIFICATION_FAILED
    assert not orjson.loads(result.stdout)["passed"]


def test_dual_command(runner, tmp_path) -> None:
    result = runner.invoke(cli, ["dual", *DIHEDRAL_ARGS, "--out-dir", str(tmp_path), "--format", "json"])
    assert result.exit_code == EXIT_OK
    payload = orjson.loads(result.stdout)
    assert payload["dual_vertices"] == 3
    assert payload["header"]["radius"] == 1
    assert (tmp_path / "dual.json").exists()


def test_core_beyond_radius(runner, tmp_path) -> None:
    result = runner.invoke(cli, ["build", "builtin:dihedral-14", "--radius", "1", "--core", "2",
                                 "--out-dir", str(tmp_path)])
    assert result.exit_code == EXIT_INPUT_ERROR


def test_missing_presentation(runner) -> None:
    result = runner.invoke(cli, ["walls"])
    assert result.exit_code == EXIT_INPUT_ERROR


def test_verify_reports_are_byte_identical(runner, tmp_path) -> None:
    args = ["verify", *DIHEDRAL_ARGS, "--out-dir", str(tmp_path)]
    first = runner.invoke(cli, args)
    ServiceFactory.reset_services()
    second = runner.invoke(cli, args)
    assert first.exit_code == second.exit_code == EXIT_OK
    assert first.stdout_bytes == second.stdout_bytes
    assert orjson.loads(first.stdout)["results"]
