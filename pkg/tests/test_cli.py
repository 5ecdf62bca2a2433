import json
import math
import subprocess
import sys
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from weightedlie.cli import main
from weightedlie.report import untagged_floats

from make_golden import CASES, GOLDEN, run

ROOT = Path(__file__).resolve().parents[1]
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def is_tag(x):
    return isinstance(x, dict) and set(x) == {"value", "tolerance", "relative"}


def assert_matches(got, want, path="$"):
    """Exact structural equality; tagged floats agree within their own tolerance."""
    if is_tag(want):
        assert is_tag(got), path
        assert got["tolerance"] == want["tolerance"] and got["relative"] == want["relative"], path
        tol = want["tolerance"] or 0.0
        if want["relative"]:
            tol *= abs(want["value"])
        slack = max(tol, 1e-9 * abs(want["value"]), 1e-12)
        assert abs(got["value"] - want["value"]) <= slack, f"{path}: {got['value']} vs {want['value']}"
        return
    assert type(got) is type(want), f"{path}: {type(got).__name__} vs {type(want).__name__}"
    if isinstance(want, dict):
        assert set(got) == set(want), f"{path}: keys {sorted(set(got) ^ set(want))}"
        for k in want:
            assert_matches(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert len(got) == len(want), path
        for k, (a, b) in enumerate(zip(got, want)):
            assert_matches(a, b, f"{path}[{k}]")
    else:
        assert got == want, f"{path}: {got!r} vs {want!r}"


def validate(doc):
    errors = sorted(VALIDATOR.iter_errors(doc), key=lambda e: list(e.path))
    assert not errors, "; ".join(f"{list(e.path)}: {e.message[:200]}" for e in errors[:3])
    assert untagged_floats(doc) == []


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, tmp_path):
    code, text = run(name, tmp_path)
    assert code == CASES[name][1]
    doc = json.loads(text)
    validate(doc)
    golden = (GOLDEN / f"{name}.json").read_text()
    if not has_floats(doc):
        assert text == golden  # structural reports are pinned byte for byte
    assert_matches(doc, json.loads(golden))


def has_floats(doc):
    if isinstance(doc, float):
        return True
    if isinstance(doc, dict):
        return any(has_floats(v) for v in doc.values())
    if isinstance(doc, list):
        return any(has_floats(v) for v in doc)
    return False


def test_report_goes_to_stdout(capsys):
    assert main(["analyze", "catalog:n23"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["grading"]["Q_delta"] == "10"
    validate(doc)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["analyze", "catalog:nope"], 3),
        (["analyze"], 3),
        (["frobnicate"], 3),
        (["analyze", "catalog:n23", "--grading", "1,1,1,1,1"], 2),
        (["analyze", "catalog:n23", "--grading", "1,1,2"], 3),
        (["check-system", "catalog:n23", "--op", "X1^2", "--op", "X2^2"], 2),
        (["check-system", "catalog:n23", "--op", "T1"], 2),
        (["check-system", "catalog:n23", "--op", "X1 +* X2"], 3),
        (["contract", "catalog:n23", "--basis", "X1", "--weights", "1"], 2),
        (["spectrum", "plancherel", "--op", "-X1^2", "--f", "sin(lambda)"], 3),
        (["spectrum", "sample", "--op", "-X1^2", "--scheme", "sobol"], 3),
        (["spectrum", "sample", "--op", "X1", "--samples", "10"], 2),
        (["spectrum", "polar", "--op", "-X1^2", "--box", "-2:-1"], 2),
        (["product", "catalog:n23"], 3),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    out, err = capsys.readouterr()
    if code and out:
        doc = json.loads(out)
        validate(doc)
        assert doc["status"] in ("invalid", "input_error")
        assert "error" in doc
    if code:
        assert err


def test_file_source(tmp_path):
    doc = json.loads((GOLDEN / "catalog_n23.json").read_text())["entry"]["algebra"]
    p = tmp_path / "n23.json"
    p.write_text(json.dumps(dict(doc, grading=["1", "1", "2", "3", "3"])))
    out = tmp_path / "r.json"
    assert main(["analyze", str(p), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["grading"]["stratified"] is True
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["analyze", "--algebra", str(bad), "--out", str(out)]) == 3
    assert json.loads(out.read_text())["status"] == "input_error"


def test_sample_writes_point_cloud(tmp_path):
    pts, cloud, out = tmp_path / "p.csv", tmp_path / "c.json", tmp_path / "r.json"
    argv = ["spectrum", "sample", "--op", "-X1^2", "--samples", "1000", "--radius", "2",
            "--points", str(pts), "--cloud", str(cloud), "--out", str(out)]
    assert main(argv) == 0
    rows = np.loadtxt(pts, delimiter=",", skiprows=1)
    assert rows.shape == (1000, 2)
    c = json.loads(cloud.read_text())
    assert c["seed"] == 0 and c["scheme"] == "stratified" and len(c["points"]) == 1000
    assert math.isclose(rows[:, 1].sum(), 4 / (2 * math.pi), rel_tol=1e-12)


def test_negative_expression_after_option(capsys):
    # "-X1^2" must not be mistaken for a flag
    assert main(["spectrum", "growth", "--op", "-X1^2", "--radii", "1,2"]) == 0
    assert json.loads(capsys.readouterr().out)["growth"]["ok"] is True


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weightedlie.cli", "analyze", "catalog:nope"], capture_output=True, text=True
    )
    assert proc.returncode == 3
    assert "UnknownName" in proc.stderr
    assert json.loads(proc.stdout)["error"]["type"] == "UnknownName"
