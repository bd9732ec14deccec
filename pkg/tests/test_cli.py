import json
import shutil
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from conftest import DATA
from planecycles.cli import main

SCHEMA = json.loads(resources.files("planecycles").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["exit_code"] == code
    return code, report


def test_cycles_listing(capsys):
    code, out, _ = run(capsys, "cycles", DATA / "g1.txt")
    assert code == 0
    assert "Cycles (isometric): 16" in out
    assert "c1 = {e1, e2, e5} <-> {v1, v2, v3}" in out


def test_cycles_json(capsys):
    code, report = run_json(capsys, "cycles", DATA / "g1.txt")
    assert code == 0
    assert report["isometric"]["count"] == 16


def test_basis_descent_json(capsys):
    code, report = run_json(capsys, "basis", DATA / "g1.txt")
    assert code == 0
    assert report["basis"]["F"] == 6
    assert [s["F"] for s in report["basis"]["trace"]] == [84, 54, 24, 12, 6]


def test_planarize_monte_carlo(capsys):
    code, report = run_json(capsys, "planarize", DATA / "g2.txt", "--method", "mc", "--trials", 300, "--seed", 3)
    assert code == 0
    assert report["plane"]["F"] == 0


def test_planarize_with_stage3(capsys):
    code, report = run_json(capsys, "planarize", DATA / "g1.txt", "--stage3")
    assert code == 0
    assert "stage3" in report


def test_json_is_byte_identical_across_runs_and_threads(capsys):
    argv = ["planarize", DATA / "g2.txt", "--method", "mc", "--trials", 200, "--seed", 5, "--json"]
    _, one, _ = run(capsys, *argv)
    _, again, _ = run(capsys, *argv)
    assert one == again
    _, four, _ = run(capsys, *argv, "--threads", 4)
    a, b = json.loads(one), json.loads(four)
    del a["options"]["threads"], b["options"]["threads"]
    assert a == b


def test_timings_only_on_request(capsys):
    _, report = run_json(capsys, "basis", DATA / "g1.txt")
    assert "timings" not in report
    _, report = run_json(capsys, "basis", DATA / "g1.txt", "--timings")
    assert "timings" in report


def test_embed_writes_dot(capsys, tmp_path):
    out = tmp_path / "g1.dot"
    code, text, _ = run(capsys, "embed", DATA / "g1.txt", "--dot", out)
    assert code == 0
    assert "σ(v1):" in text
    assert out.read_text().startswith("graph drawing {")


def test_embed_given_configuration(capsys, tmp_path):
    config = tmp_path / "faces.txt"
    config.write_text(
        "c3 = {e1, e4, e7}\nc7 = {e5, e7, e8}\nc8 = {e5, e6, e9, e13, e16}\n"
        "c10 = {e8, e9, e18}\nc11 = {e10, e11, e14}\nc12 = {e10, e12, e13, e17}\n"
        "c13 = {e11, e12, e19}\nc16 = {e16, e17, e20}\n"
    )
    code, report = run_json(capsys, "embed", DATA / "g1.txt", "--config", config)
    assert code == 0
    assert report["configuration"]["rim"]["edges"] == [1, 4, 6, 14, 18, 19, 20]
    assert report["rotation"]["closed"]


def test_hamilton_exit_codes(capsys):
    code, report = run_json(capsys, "hamilton", DATA / "dodecahedron.txt")
    assert code == 0 and report["hamilton"]["status"] == "found"
    code, report = run_json(capsys, "hamilton", DATA / "petersen.txt")
    assert code == 3 and report["hamilton"]["evidence"]


def test_usage_error(capsys):
    code, _, err = run(capsys, "basis", DATA / "g1.txt", "--bogus")
    assert code == 64 and "planecycles" in err
    assert run(capsys, "basis", DATA / "g1.txt", "--trials", 0)[0] == 64
    assert run(capsys)[0] == 64


def test_missing_file_is_an_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "cycles", tmp_path / "absent.txt")
    assert code == 66 and err


def test_malformed_graph_is_a_data_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n")
    assert run(capsys, "cycles", bad)[0] == 65


def test_bad_cycle_listing_is_a_data_error(capsys, tmp_path):
    listing = tmp_path / "cycles.txt"
    listing.write_text("c1 = {e1, e2}\n")
    assert run(capsys, "basis", DATA / "g1.txt", "--cycles", listing)[0] == 65


def test_report_directory(capsys, tmp_path):
    out = tmp_path / "report"
    code, text, _ = run(capsys, "planarize", DATA / "g1.txt", "--report", out)
    assert code == 0 and text
    names = sorted(p.name for p in out.iterdir())
    assert names == ["loads.csv", "loads.png", "trace.csv", "trace.png"]
    rows = (out / "trace.csv").read_text().splitlines()
    assert rows[0] == "stage,step,cycle,edge,F"
    assert rows[-1].endswith(",0")
    assert (out / "loads.png").read_bytes()[:4] == b"\x89PNG"


@pytest.mark.skipif(shutil.which("planecycles") is None, reason="console script not installed")
def test_console_script():
    done = subprocess.run(
        ["planecycles", "cycles", str(DATA / "g1.txt")], capture_output=True, text=True
    )
    assert done.returncode == 0
    assert "Cycles (isometric): 16" in done.stdout


def test_module_entry():
    done = subprocess.run(
        [sys.executable, "-m", "planecycles.cli", "hamilton", str(DATA / "petersen.txt")],
        capture_output=True,
        text=True,
    )
    assert done.returncode == 3
