import orjson
import pytest

from src.domain.models.presentation_models import builtin_presentation, load_presentation, parse_presentation
from src.domain.models.run_models import RunConfig, VerifyReport
from src.utils.exceptions import InputError, NonNormalFormError

SURFACE_1 = {
    "name": "torus-like",
    "factors": [
        {"id": 0, "kind": "abelian", "name": "a", "rank": 1},
        {"id": 1, "kind": "abelian", "name": "b", "rank": 1},
    ],
    "relators": [
        {"syllables": [{"factor": 0, "element": 2}, {"factor": 1, "element": [3]}]},
    ],
}


def test_parse_presentation() -> None:
    p = parse_presentation(SURFACE_1)
    assert p.name == "torus-like"
    assert p.relators[0].word == ((0, (2,)), (1, (3,)))


def test_declared_root_is_verified() -> None:
    payload = {
        "factors": [{"id": 0, "kind": "finite", "order": 2}, {"id": 1, "kind": "finite", "order": 2}],
        "relators": [{
            "syllables": [{"factor": f, "element": 1} for f in (0, 1) * 7],
            "base": [{"factor": 0, "element": 1}, {"factor": 1, "element": 1}],
            "exponent": 7,
        }],
    }
    p = parse_presentation(payload)
    assert p.relators[0].exponent == 7
    payload["relators"][0]["exponent"] = 6
    with pytest.raises(InputError):
        parse_presentation(payload)


def test_schema_errors_become_input_errors() -> None:
    with pytest.raises(InputError):
        parse_presentation({"factors": [{"id": 0, "kind": "cyclic"}], "relators": []})
    with pytest.raises(InputError):
        parse_presentation({"factors": [{"id": 0, "kind": "finite"}],
                            "relators": [{"syllables": [{"factor": 0, "element": 0}]}]})


def test_non_normal_relator_rejected() -> None:
    payload = dict(SURFACE_1, relators=[
        {"syllables": [{"factor": 0, "element": 1}, {"factor": 0, "element": 1}]},
    ])
    with pytest.raises(NonNormalFormError):
        parse_presentation(payload)


def test_builtin_names() -> None:
    assert builtin_presentation("surface-2").name == "surface-2"
    assert builtin_presentation("dihedral-14").relators[0].exponent == 7
    assert builtin_presentation("z3-z3-ab7").name == "z3-z3-ab7"
    with pytest.raises(InputError):
        builtin_presentation("dihedral-7")
    with pytest.raises(InputError):
        builtin_presentation("klein")


def test_load_presentation_from_file(tmp_path) -> None:
    path = tmp_path / "p.json"
    path.write_bytes(orjson.dumps(SURFACE_1))
    assert load_presentation(str(path)).name == "torus-like"
    with pytest.raises(InputError):
        load_presentation(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(InputError):
        load_presentation(str(broken))


def test_run_config_overrides_file(tmp_path) -> None:
    path = tmp_path / "run.json"
    path.write_bytes(orjson.dumps({"presentation": "builtin:surface-2", "radius": 3, "core_radius": 2}))
    config = RunConfig.build(str(path), radius=4, seed=None)
    assert config.radius == 4
    assert config.core_radius == 2
    assert config.formats == ["json"]
    assert "out_dir" not in config.header()


def test_run_config_validation() -> None:
    with pytest.raises(InputError):
        RunConfig.build(presentation="builtin:surface-2", radius=1, core_radius=2)
    with pytest.raises(InputError):
        RunConfig.build(presentation="builtin:surface-2", max_k=3)
    with pytest.raises(InputError):
        RunConfig.build(presentation="builtin:surface-2", formats=["png"])
    config = RunConfig.build(presentation="builtin:surface-2", formats=["svg", "json", "svg"])
    assert config.formats == ["json", "svg"]


def test_verify_report_status() -> None:
    report = VerifyReport(header={}, fingerprint="0")
    report.record("a", True)
    report.record("b", None, "not applicable")
    assert report.passed
    report.record("c", False)
    assert not report.passed
    assert [r.status for r in report.results] == ["pass", "skipped", "fail"]
