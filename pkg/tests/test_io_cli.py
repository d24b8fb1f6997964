from __future__ import annotations

import io
import json

import numpy as np
import pytest

from bernfractal.bernstein import Triangle
from bernfractal.cli import main
from bernfractal.errors import ParseError, TooFewPoints, UnsortedInput, VertexMismatch
from bernfractal.fif1d import AttractorCloud, build_ifs_1d, chaos_game_1d
from bernfractal.fif2d import build_ifs_2d, chaos_game_2d
from bernfractal.io import (export_attractor, ingest_dataset, read_attractor_csv,
                            write_table)
from bernfractal.presets import FIELDS
from bernfractal.reproduce import reproduce_table, thread_count
from bernfractal.trimesh import attach_samples, dump_mesh_csv, partition

from test_trimesh import ROUNDED_LISTING

UNIT_TRI = Triangle((0, 0), (1, 0), (0.5, 1))


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


@pytest.fixture
def signal_csv(tmp_path):
    path = tmp_path / "signal.csv"
    p = np.linspace(-1, 1, 7)
    path.write_text("p,q\n" + "".join(f"{float(a)!r},{float(np.sin(3 * a))!r}\n" for a in p))
    return path


def test_two_rows_suffice(tmp_path):
    path = tmp_path / "two.csv"
    path.write_text("0,1\n1,3\n")
    data = ingest_dataset(path)
    assert data.N == 2
    sys = build_ifs_1d(data, 0.2)
    assert len(sys.maps) == 1


def test_one_row_is_too_few(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("0,1\n")
    with pytest.raises(TooFewPoints):
        ingest_dataset(path)


def test_unsorted_rows(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1\n2,3\n1,0\n")
    with pytest.raises(UnsortedInput):
        ingest_dataset(path)


def test_parse_error_reports_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("p,q\n0,1\n1,abc\n")
    with pytest.raises(ParseError) as exc:
        ingest_dataset(path)
    assert exc.value.line == 3


def test_printed_vertex_listing_attaches_with_loose_tolerance(tmp_path):
    path = tmp_path / "scatter.csv"
    f = FIELDS["exp-field"].fn
    path.write_text("x,y,z\n" + "".join(f"{x},{y},{f(x, y)}\n" for x, y in ROUNDED_LISTING))
    part = ingest_dataset(path, "2d", UNIT_TRI, 4, tol=0.01)
    assert part.n_vertices == 21
    with pytest.raises(VertexMismatch):
        ingest_dataset(path, "2d", UNIT_TRI, 4)


def test_scatter_row_count_mismatch(tmp_path):
    path = tmp_path / "scatter.csv"
    path.write_text("0,0,1\n1,0,2\n")
    with pytest.raises(VertexMismatch):
        ingest_dataset(path, "2d", UNIT_TRI, 3)


def test_mesh_file_detected(tmp_path):
    part = attach_samples(partition(UNIT_TRI, 3), FIELDS["exp-field"].fn)
    path = tmp_path / "mesh.csv"
    dump_mesh_csv(part, path)
    back = ingest_dataset(path, "2d")
    np.testing.assert_array_equal(back.z, part.z)


def test_attractor_csv_round_trip_is_exact(tmp_path, signal_csv):
    sys = build_ifs_1d(ingest_dataset(signal_csv), 0.3)
    cloud = chaos_game_1d(sys, 500, seed=11)
    path = export_attractor(cloud, tmp_path / "a.csv")
    np.testing.assert_array_equal(read_attractor_csv(path), cloud.points)
    cloud2 = chaos_game_2d(build_ifs_2d(attach_samples(partition(UNIT_TRI, 3), FIELDS["exp-field"].fn)), 300)
    path = export_attractor(cloud2, tmp_path / "b.csv")
    np.testing.assert_array_equal(read_attractor_csv(path), cloud2.points)


def test_empty_cloud_exports(tmp_path):
    empty = AttractorCloud(np.empty((0, 2)), 0, 100, (1.0,), 1)
    path = export_attractor(empty, tmp_path / "e.csv")
    assert path.read_text().strip() == "p,q"
    with pytest.raises(ValueError):
        export_attractor(empty, tmp_path / "e.svg")


def test_svg_has_one_marker_per_point(tmp_path, signal_csv):
    cloud = chaos_game_1d(build_ifs_1d(ingest_dataset(signal_csv), 0.3), 250, seed=1)
    text = export_attractor(cloud, tmp_path / "a.svg").read_text()
    assert text.count("<circle") == 250
    assert 'viewBox="0 0 800 600"' in text
    cloud2 = chaos_game_2d(build_ifs_2d(attach_samples(partition(UNIT_TRI, 3), FIELDS["exp-field"].fn)), 100)
    assert export_attractor(cloud2, tmp_path / "b.svg").read_text().count("<circle") == 200


def test_json_export(tmp_path, signal_csv):
    cloud = chaos_game_1d(build_ifs_1d(ingest_dataset(signal_csv), 0.3), 20, seed=4)
    doc = json.loads(export_attractor(cloud, tmp_path / "a.json").read_text())
    assert doc["seed"] == 4 and len(doc["points"]) == 20


def test_write_table_csv_and_json(tmp_path):
    rows = [{"d": 4, "M": 0.1 + 0.2}]
    text = write_table(rows, tmp_path / "t.csv", {"alpha": 0.001}).read_text()
    assert text.splitlines() == ["# alpha: 0.001", "d,M", "4,0.30000000000000004"]
    doc = json.loads(write_table(rows, tmp_path / "t.json", {"alpha": 0.001}).read_text())
    assert doc["rows"] == rows


def test_cli_one_dimensional_verbs(tmp_path, signal_csv):
    code, text = run(["check", "-i", str(signal_csv), "--alpha", "0.2"])
    assert code == 0 and json.loads(text)["hyperbolic"]
    code, text = run(["eval", "-i", str(signal_csv), "--alpha", "0.2", "--at", "-1", "1"])
    vals = [r["value"] for r in json.loads(text)["values"]]
    np.testing.assert_allclose(vals, np.sin([-3.0, 3.0]), atol=1e-12)
    code, text = run(["integrate", "-i", str(signal_csv), "-m", "2", "--oracle", "0"])
    doc = json.loads(text)
    assert code == 0 and doc["degree"] == 2 and doc["n_pieces"] == 6
    code, text = run(["build", "-i", str(signal_csv)])
    assert len(json.loads(text)["maps"]) == 6
    out = tmp_path / "a.svg"
    code, _ = run(["attractor", "-i", str(signal_csv), "-n", "100", "-o", str(out)])
    assert code == 0 and out.read_text().count("<circle") == 100


def test_cli_two_dimensional_verbs(tmp_path):
    mesh = tmp_path / "mesh.csv"
    code, text = run(["mesh", "--field", "exp-field", "-d", "4", "-o", str(mesh)])
    assert code == 0 and "27 triangles" in text
    code, text = run(["integrate", "--mode", "2d", "-i", str(mesh)])
    M = json.loads(text)["fractal_value"]
    code, text = run(["integrate", "--field", "exp-field", "-d", "4"])
    assert json.loads(text)["fractal_value"] == M
    assert abs(M - 0.8502) < 0.02
    code, text = run(["eval", "--field", "exp-field", "--at", "0.5", "1.0"])
    assert json.loads(text)["values"][0]["value"] == pytest.approx(FIELDS["exp-field"].fn(0.5, 1.0))


def test_cli_reports_errors(tmp_path, signal_csv, capsys):
    code, _ = run(["check", "-i", str(signal_csv), "--alpha", "1.5"])
    assert code == 1
    assert "error:" in capsys.readouterr().err
    code, _ = run(["eval", "-i", str(tmp_path / "missing.csv"), "--at", "0"])
    assert code == 1


def test_config_precedence(tmp_path, signal_csv):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"input": str(signal_csv), "degree": 2, "alpha": 0.3}))
    _, text = run(["integrate", "--config", str(cfg)])
    assert json.loads(text)["degree"] == 2
    _, text = run(["integrate", "--config", str(cfg), "-m", "1"])
    assert json.loads(text)["degree"] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "blue"}))
    assert run(["integrate", "--config", str(bad)])[0] == 1


def test_repeat_runs_are_byte_identical(tmp_path, signal_csv):
    paths = []
    for k in range(2):
        out = tmp_path / f"run{k}.csv"
        main(["attractor", "-i", str(signal_csv), "--seed", "9", "-n", "400", "-o", str(out)],
             out=io.StringIO())
        paths.append(out.read_bytes())
    assert paths[0] == paths[1]
    tables = []
    for k in range(2):
        out = tmp_path / f"table{k}.csv"
        main(["reproduce", "exp-field", "-o", str(out)], out=io.StringIO())
        tables.append(out.read_bytes())
    assert tables[0] == tables[1]


def test_reproduce_table3_rows():
    rows, header = reproduce_table("matyas")
    assert [r["d"] for r in rows] == [4, 10]
    assert [r["N"] for r in rows] == [27, 183]
    assert all(r["I_oracle"] == pytest.approx(2600) for r in rows)
    assert abs(rows[1]["error_deg1"]) < abs(rows[0]["error_deg1"])
    assert all(r["ratio_deg1"] < 1 for r in rows)
    assert header["alpha"] == 0.001


def test_reproduce_signal_sweep(tmp_path):
    out = tmp_path / "sine.csv"
    code, text = run(["reproduce", "sin-series", "--sweep", "-o", str(out)])
    assert code == 0
    assert "# best_alpha: 0.04" in text
    assert out.read_text().startswith("# target: sin-series")


def test_thread_count(monkeypatch):
    monkeypatch.setenv("FRACTAL_BERN_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("FRACTAL_BERN_THREADS", "0")
    assert thread_count() >= 1
    monkeypatch.setenv("FRACTAL_BERN_THREADS", "many")
    with pytest.raises(ValueError):
        thread_count()
