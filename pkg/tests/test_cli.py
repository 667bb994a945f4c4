import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "slicelab.cli", *args],
        capture_output=True,
        text=True,
    )


def test_analyze_impossible_caterpillar_json():
    r = run_cli("analyze", "C(-,+,-;3,1,2)", "--json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["result"]["verdict"]["result"] == "impossible"
    rows = data["result"]["morse_table"]["rows"]
    assert len(rows) == 7  # six crossing rows plus the submanifold row
    assert data["engine_version"]


def test_analyze_deterministic():
    a = run_cli("analyze", "8+(1)", "--json")
    b = run_cli("analyze", "8+(1)", "--json")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    ta = run_cli("analyze", "8+(1)")
    tb = run_cli("analyze", "8+(1)")
    assert ta.stdout == tb.stdout


def test_relation_obstructed():
    r = run_cli("relation", "--bottom", "8+(2)", "--top", "8+(1)")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["result"]["result"] == "obstructed"
    assert data["result"]["capacity"] == "c-"
    assert data["result"]["bottom"] == -2.0
    assert data["result"]["top"] == -1.0


def test_invalid_input_exit_2():
    r = run_cli("analyze", "C(+,-,+;1,3,1)")
    assert r.returncode == 2
    r = run_cli("analyze", "8+(")
    assert r.returncode == 2


def test_non_generic_exit_3():
    r = run_cli("analyze", "C(-,+,-;2,2,1)")
    assert r.returncode == 3


def test_slice_preset(tmp_path):
    out = tmp_path / "slice.json"
    r = run_cli(
        "slice", "--family", "P-eight", "--level", "-0.12", "--out", str(out)
    )
    assert r.returncode == 0
    data = json.loads(out.read_text())
    assert data["result"]["classification"]["family"] == "8+"


def test_slice_non_generic_exit_3():
    r = run_cli("slice", "--family", "P-eight", "--level", "-0.2936")
    assert r.returncode == 3


def test_svg_emission(tmp_path):
    svg = tmp_path / "d.svg"
    r = run_cli("analyze", "8+(1)", "--svg", str(svg))
    assert r.returncode == 0
    content = svg.read_text()
    assert content.startswith("<svg")
    assert "path" in content


def test_analyze_accepts_diagram_json_path(tmp_path):
    import slicelab.api as api

    diagram = api.diagram_from_request("8-(2)")
    path = tmp_path / "diagram.json"
    path.write_text(json.dumps(diagram.to_json_dict()))
    r = run_cli("analyze", str(path), "--json")
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["verdict"]["result"] == "impossible"


def test_presets_listing():
    r = run_cli("presets")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    names = [p["name"] for p in data["result"]["presets"]]
    assert "P-eight" in names
