import csv
import io
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from qwalknet import reports
from qwalknet.cli import main, parse_time


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def write_edges(path, pairs):
    path.write_text("".join(f"{u} {v}\n" for u, v in pairs))
    return path


def test_parse_time():
    assert parse_time("100pi") == pytest.approx(100 * math.pi)
    assert parse_time("pi") == pytest.approx(math.pi)
    assert parse_time("314.159265358979") == 314.159265358979
    with pytest.raises(Exception):
        parse_time("abc")


def test_centrality_karate(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["centrality", "--dataset", "karate", "-o", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["node", "centrality", "population"]
    assert len(rows) == 35
    assert abs(sum(float(r[2]) for r in rows[1:]) - 1) < 1e-9
    err = capsys.readouterr().err
    assert "spearman_rho=" in err and float(err.split("spearman_rho=")[1].split()[0]) > 0.7
    manifest = json.loads((tmp_path / "c.csv.manifest.json").read_text())
    assert manifest["command"] == "centrality" and "duration_seconds" in manifest
    assert manifest["parameters"]["T"] == pytest.approx(100 * math.pi)


def test_centrality_json(tmp_path):
    out = tmp_path / "c.json"
    assert main(["centrality", "--dataset", "karate", "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["nodes"]) == 34 and doc["spearman_rho"] > 0.7
    assert doc["manifest"]["parameters"]["dataset"] == "karate"


def test_centrality_path_file(tmp_path, capsys):
    f = write_edges(tmp_path / "p3.edges", [(1, 2), (2, 3)])
    assert main(["centrality", "--input", str(f)]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 4


def test_missing_file_no_output(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["centrality", "--input", str(tmp_path / "nope.edges"), "-o", str(out)]) == 2
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []


def test_malformed_file_exit_code(tmp_path):
    f = tmp_path / "bad.edges"
    f.write_text("1 1\n")
    assert main(["centrality", "--input", str(f)]) == 2


def test_usage_errors_exit_1(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["centrality"])
    assert info.value.code == 1
    assert main(["centrality", "--dataset", "karate", "--dt-frac", "0.3"]) == 1


def test_sweep_karate(tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", "--dataset", "karate", "-o", str(out)]) == 0
    deltas = read_csv(out / "deltas.csv")
    assert deltas[0][:4] == ["k", "u", "v", "1"] and len(deltas[0]) == 3 + 34
    assert len(deltas) == 79
    for row in deltas[1:]:
        assert abs(sum(float(x) for x in row[3:])) < 1e-9
    signs = read_csv(out / "signs.csv")
    assert {x for row in signs[1:] for x in row[3:]} == {"1", "-1"}
    assert len(read_csv(out / "baseline.csv")) == 35
    sweep, graph, manifest = reports.read_sweep(out / "sweep.json")
    assert graph.k == 78 and manifest["command"] == "sweep"
    assert "duration_seconds" not in manifest
    assert "duration_seconds" in json.loads((out / "manifest.json").read_text())


def test_sweep_single_edge(tmp_path):
    f = write_edges(tmp_path / "k2.edges", [(1, 2)])
    assert main(["sweep", "--input", str(f), "-o", str(tmp_path / "s")]) == 0
    rows = read_csv(tmp_path / "s" / "deltas.csv")
    assert len(rows) == 2
    assert abs(sum(float(x) for x in rows[1][3:])) < 1e-9


def test_sweep_localized_requires_start(tmp_path):
    assert main(["sweep", "--dataset", "karate", "--initial", "localized", "-o", str(tmp_path)]) == 1
    assert main(["sweep", "--dataset", "karate", "--initial", "localized", "--start", "40",
                 "-o", str(tmp_path)]) == 1


def test_sweep_jobs_independent(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["sweep", "--dataset", "karate", "--jobs", "1", "-o", str(a)]) == 0
    assert main(["sweep", "--dataset", "karate", "--jobs", "3", "-o", str(b)]) == 0
    for name in ("baseline.csv", "deltas.csv", "signs.csv", "sweep.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_csv_roundtrip(tmp_path):
    out = tmp_path / "s"
    assert main(["sweep", "--dataset", "karate", "-o", str(out)]) == 0
    for name in ("baseline.csv", "deltas.csv", "signs.csv"):
        text = (out / name).read_text()
        header, rows = reports.parse_csv(text)
        assert reports.csv_text(header, rows) == text


def test_affinity_from_sweep_and_direct(tmp_path, capsys):
    s = tmp_path / "s"
    assert main(["sweep", "--dataset", "karate", "-o", str(s)]) == 0
    a1, a2 = tmp_path / "a1", tmp_path / "a2"
    assert main(["affinity", "--sweep", str(s / "sweep.json"), "-o", str(a1)]) == 0
    assert main(["affinity", "--dataset", "karate", "-o", str(a2)]) == 0
    assert (a1 / "affinity.csv").read_bytes() == (a2 / "affinity.csv").read_bytes()
    rows = read_csv(a1 / "affinity.csv")
    assert rows[0] == ["node", *map(str, range(1, 35))] and len(rows) == 35
    m = np.array([[float(x) for x in r[1:]] for r in rows[1:]])
    assert np.all(np.diag(m) == 1.0)
    assert m[0, 33] < 0 and m[0, 1] > 0
    root = ET.parse(a1 / "affinity.svg").getroot()
    assert root.tag.endswith("svg")
    cells = root.find("{http://www.w3.org/2000/svg}g[@id='cells']")
    assert len(cells) == 34 * 34
    assert "with_reference=" in capsys.readouterr().err


def test_affinity_svg_scales_with_n():
    small = ET.fromstring(reports.heatmap_svg(np.eye(3)).split("\n", 1)[1])
    large = ET.fromstring(reports.heatmap_svg(np.eye(30)).split("\n", 1)[1])
    assert int(large.get("width")) > int(small.get("width"))
    assert int(large.get("height")) > int(small.get("height"))


def test_diverging_scale_symmetric():
    assert reports.diverging_color(0.0) == "#f7f7f7"
    assert reports.diverging_color(1.0) == "#b2182b"
    assert reports.diverging_color(-1.0) == "#2166ac"
    assert reports.diverging_color(5) == reports.diverging_color(1)


def test_affinity_needs_source(tmp_path):
    assert main(["affinity", "-o", str(tmp_path)]) == 1
    bad = tmp_path / "x.json"
    bad.write_text("{}")
    assert main(["affinity", "--sweep", str(bad), "-o", str(tmp_path / "o")]) == 2


def test_compare(tmp_path, capsys):
    ring = write_edges(tmp_path / "c6.edges", [(j, j % 6 + 1) for j in range(1, 7)])
    out = tmp_path / "cmp.csv"
    assert main(["compare", "--input", str(ring), "--start", "2", "-o", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["node", "pop_adjacency", "pop_laplacian", "diff"]
    assert max(abs(float(r[3])) for r in rows[1:]) < 1e-9
    assert main(["compare", "--dataset", "karate", "--start", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert max(abs(float(r.split(",")[3])) for r in lines[1:]) > 0.01
    assert main(["compare", "--dataset", "karate", "--start", "35"]) == 1


def test_contrast(capsys):
    assert main(["contrast", "--dataset", "karate"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["adjacency_uniform"]["overall"] > doc["laplacian_localized"]["overall"]


def test_generate(tmp_path):
    args = ["generate", "-c", "2", "-s", "20", "--pin", "0.5", "--pout", "0.05", "--seed", "42"]
    assert main([*args, "-o", str(tmp_path / "a")]) == 0
    assert main([*args, "-o", str(tmp_path / "b")]) == 0
    for ext in (".edges", ".labels"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()
    assert len((tmp_path / "a.labels").read_text().splitlines()) == 40
    assert main(["centrality", "--input", str(tmp_path / "a.edges"),
                 "--labels", str(tmp_path / "a.labels")]) == 0


def test_generate_rejects_bad_probabilities(tmp_path):
    assert main(["generate", "-c", "2", "-s", "5", "--pin", "0", "--pout", "0",
                 "-o", str(tmp_path / "x")]) == 1
    assert not list(tmp_path.iterdir())


def test_module_entry_point(tmp_path):
    f = write_edges(tmp_path / "p3.edges", [(1, 2), (2, 3)])
    res = subprocess.run([sys.executable, "-m", "qwalknet", "centrality", "--input", str(f)],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "node,centrality,population"
