"""End-to-end tests of the carpetcalc command line."""
import io
import json
import sys
import time

import pandas as pd
import pytest

import main
from api.carpet import cmd_carpet
from api.join import cmd_join
from api.lattice import cmd_lattice
from api.render import BOLD, document_payload, flatten, render_json, render_text, validate
from api.schemas import ReportDocument
from api.sweep import cmd_sweep
from conftest import GOLDEN_DIR, _updating
from lib.config import Config
from lib.errors import InvariantViolation
from models.schemas import ScrollSpec


def run(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


GOLDEN_CASES = [
    ("cohomology_3_4_10.json", ["cohomology", "3", "4", "10"]),
    ("cohomology_1_-2_-3.json", ["cohomology", "1", "-2", "-3"]),
    ("carpet_3_1.json", ["carpet", "3", "1"]),
    ("carpet_4_1.json", ["carpet", "4", "1"]),
    ("carpet_8_4.json", ["carpet", "8", "4"]),
    ("sweep_3.json", ["sweep", "3"]),
    ("join_2_1.json", ["join", "2", "1"]),
    ("lattice_F4_8.json", ["lattice", "F4", "8"]),
    ("lattice_F0_1.json", ["lattice", "F0", "1"]),
]


@pytest.mark.parametrize("name, argv", GOLDEN_CASES)
def test_golden_json(capsys, golden, name, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    golden(name, out)
    doc = ReportDocument.model_validate_json(out)
    assert render_json(doc) == out


def test_cohomology_values(capsys):
    _, out, _ = run(capsys, "cohomology", "3", "4", "10")
    results = json.loads(out)["results"]
    assert results["cohomology"] == {"h0": 26, "h1": 1, "h2": 0, "chi": 25}
    assert results["pushforward"] == [10, 7, 4, 1, -2]


def test_carpet_values(capsys):
    _, out, _ = run(capsys, "carpet", "3", "1")
    smooth = json.loads(out)["results"]["smoothness"]
    assert smooth["chi_normal"] == 54
    assert smooth["smooth_point"] is True

    _, out, _ = run(capsys, "carpet", "4", "1")
    smooth = json.loads(out)["results"]["smoothness"]
    assert smooth["h1"] == {"lo": 1, "hi": 1, "exact": True}
    assert smooth["smooth_point"] is False

    _, out, _ = run(capsys, "carpet", "8", "4")
    components = json.loads(out)["results"]["components"]
    assert [c["component"] for c in components] == ["PrimeComponent", "SecondComponent"]


def test_join_and_lattice_values(capsys):
    _, out, _ = run(capsys, "join", "2", "1")
    results = json.loads(out)["results"]
    assert results["degree_sigma"] == 2
    assert results["fano"]["sigma_fano"] is True

    _, out, _ = run(capsys, "join", "--from-scroll", "2", "1")
    assert json.loads(out)["command"]["params"] == {"n0": 1, "nprime": 2}

    _, out, _ = run(capsys, "lattice", "F4", "8")
    model = json.loads(out)["results"]["model"]
    assert (model["g"], model["divisibility"]) == (13, 2)


@pytest.mark.parametrize("a_max, rows", [(1, 1), (3, 6), (5, 15)])
def test_sweep_row_count(capsys, a_max, rows):
    _, out, _ = run(capsys, "sweep", str(a_max))
    doc = json.loads(out)
    assert doc["results"]["row_count"] == rows
    assert len(doc["table"]) == rows


def test_sweep_tsv(capsys):
    code, out, _ = run(capsys, "--format", "tsv", "sweep", "12")
    assert code == 0
    frame = pd.read_csv(io.StringIO(out), sep="\t")
    assert len(frame) == 78
    assert (frame["smooth"] == (frame["a"] - frame["b"] <= 2)).all()
    assert (frame["chi_normal"] == (frame["g"] + 1) ** 2 + 18).all()
    row = frame[(frame["a"] == 3) & (frame["b"] == 2)].iloc[0]
    assert row["chi_normal"] == 67


def test_sweep_order_does_not_depend_on_workers(capsys, monkeypatch):
    _, many, _ = run(capsys, "sweep", "6")
    monkeypatch.setenv("CARPETCALC_SWEEP_WORKERS", "1")
    Config.reload()
    _, one, _ = run(capsys, "sweep", "6")
    assert many == one


def test_text_matches_json(capsys):
    _, out_json, _ = run(capsys, "carpet", "5", "1")
    _, out_text, _ = run(capsys, "--format", "text", "carpet", "5", "1")
    assert "\033[" not in out_text
    for path, value in flatten(json.loads(out_json)["results"]):
        if isinstance(value, int) and not isinstance(value, bool):
            assert f"{path}" in out_text
            line = next(l for l in out_text.splitlines() if l.strip().startswith(path + " "))
            assert line.rstrip().endswith(f": {value}")


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "--out", str(target), "lattice", "F1", "3")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["results"]["model"]["g"] == 6


@pytest.mark.parametrize("argv", [
    ["carpet", "1", "2"],
    ["carpet", "3", "0"],
    ["cohomology", "-1", "0", "0"],
    ["sweep", "0"],
    ["join", "0", "1"],
    ["join", "1"],
    ["join", "--from-scroll", "1", "2"],
    ["lattice", "F4", "4"],
    ["lattice", "F2", "4"],
    ["frobnicate"],
    ["--format", "xml", "sweep", "2"],
    ["--log-level", "LOUD", "sweep", "2"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_invariant_violation_exits_3(capsys, monkeypatch):
    from services import join_threefold
    monkeypatch.setattr(join_threefold, "verify_anticanonical_carpet", lambda params: False)
    code, _, err = run(capsys, "join", "2", "2")
    assert code == 3
    assert "does not vanish" in err


def test_schema_mismatch_exits_3(capsys, monkeypatch, tmp_path):
    schema = tmp_path / "strict.json"
    schema.write_text(json.dumps({"type": "object", "required": ["nothing_has_this"]}))
    monkeypatch.setenv("CARPETCALC_SCHEMA_PATH", str(schema))
    Config.reload()
    code, _, _ = run(capsys, "lattice", "F0", "2")
    assert code == 3


@pytest.mark.parametrize("name", [name for name, _ in GOLDEN_CASES])
def test_golden_files_are_committed(name):
    assert (GOLDEN_DIR / name).is_file()


def test_missing_golden_fails(request, golden):
    if _updating(request):
        pytest.skip("goldens are being rewritten")
    with pytest.raises(pytest.fail.Exception):
        golden("no_such_report.json", "{}\n")
    assert not (GOLDEN_DIR / "no_such_report.json").exists()


def test_wrong_value_does_not_match_golden(request, golden):
    if _updating(request):
        pytest.skip("goldens are being rewritten")
    text = (GOLDEN_DIR / "cohomology_3_4_10.json").read_text(encoding="utf-8")
    with pytest.raises(AssertionError):
        golden("cohomology_3_4_10.json", text.replace('"h0": 26', '"h0": 999'))


@pytest.mark.parametrize("workers", ["0", "-3", "four", " "])
def test_bad_worker_setting_exits_2(capsys, monkeypatch, workers):
    monkeypatch.setenv("CARPETCALC_SWEEP_WORKERS", workers)
    Config.reload()
    code, out, err = run(capsys, "sweep", "2")
    assert code == 2
    assert out == ""
    assert "CARPETCALC_SWEEP_WORKERS" in err


def test_internal_validation_error_exits_3(capsys, monkeypatch):
    from services import carpet as carpet_service
    monkeypatch.setattr(carpet_service, "degenerates_to", lambda spec: ScrollSpec(a=spec.b - 1, b=spec.a))
    code, out, err = run(capsys, "carpet", "3", "1")
    assert code == 3
    assert out == ""
    assert "internal record" in err


class _Terminal(io.StringIO):
    def isatty(self):
        return True


def test_out_file_gets_no_color_codes(capsys, monkeypatch, tmp_path):
    monkeypatch.delenv("CARPETCALC_NO_COLOR")
    Config.reload()
    assert render_text(cmd_carpet(3, 1, "text"), _Terminal()).startswith(BOLD)

    monkeypatch.setattr(sys, "stdout", _Terminal())
    target = tmp_path / "report.txt"
    assert main.main(["--format", "text", "--out", str(target), "carpet", "3", "1"]) == 0
    text = target.read_text(encoding="utf-8")
    assert "\033[" not in text
    assert text.startswith("[command]")


def _drop(payload, *path):
    node = payload
    for key in path[:-1]:
        node = node[key]
    del node[path[-1]]
    return payload


@pytest.mark.parametrize("build, path", [
    (lambda: cmd_join(2, 1), ("results", "fano")),
    (lambda: cmd_join(1, 1), ("results", "matrix_check", "passed")),
    (lambda: cmd_lattice("F4", 8), ("results", "two_component_condition")),
    (lambda: cmd_lattice("F1", 3), ("results", "model", "L")),
    (lambda: cmd_sweep(2), ("table",)),
    (lambda: cmd_sweep(2), ("results", "smooth_count")),
    (lambda: cmd_carpet(3, 1), ("results", "smoothness", "sequence_chain")),
])
def test_schema_checks_every_command(build, path):
    payload = document_payload(build())
    validate(payload)
    with pytest.raises(InvariantViolation):
        validate(_drop(payload, *path))


def test_schema_rejects_malformed_sweep_row():
    payload = document_payload(cmd_sweep(2))
    payload["table"][0]["smooth"] = "yes"
    with pytest.raises(InvariantViolation):
        validate(payload)


def test_sweep_12_finishes_quickly(capsys):
    start = time.perf_counter()
    code, out, _ = run(capsys, "--format", "tsv", "sweep", "12")
    elapsed = time.perf_counter() - start
    assert code == 0 and out
    assert elapsed < 5.0
