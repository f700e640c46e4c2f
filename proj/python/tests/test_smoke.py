import json
import math
from pathlib import Path

import jsonschema
import pytest

import coarsetree as ct

ROOT = Path(__file__).resolve().parents[2]
SCENES = sorted((ROOT / "scenes").glob("*.json"))


def schema(name):
    return json.loads((ROOT / "schemas" / name).read_text())


def floyd(n, edges):
    d = [[0.0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for a, b, w in edges:
        d[a][b] = d[b][a] = min(d[a][b], w)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                d[i][j] = min(d[i][j], d[i][k] + d[k][j])
    return d


def four_point(d):
    n = len(d)
    best = 0.0
    for w in range(n):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    gp = lambda a, b: 0.5 * (d[a][w] + d[b][w] - d[a][b])
                    best = max(best, min(gp(x, z), gp(y, z)) - gp(x, y))
    return best


def test_distances_match_floyd():
    g = ct.MetricGraph(5)
    for a, b, w in [(0, 1, 1.5), (1, 2, 2.0), (2, 3, 0.5), (3, 4, 1.0), (4, 0, 3.0), (1, 3, 4.0)]:
        g.add_edge(a, b, w)
    for row, want in zip(ct.distances(g), floyd(5, g.edges())):
        assert row == pytest.approx(want)


def test_delta_tree_and_cycle():
    assert ct.delta(ct.path_graph(6))["delta"] == 0
    c = ct.cycle_graph(8)
    assert ct.delta(c)["delta"] == pytest.approx(four_point(ct.distances(c)))
    assert ct.delta(c, "slim_intervals")["delta"] == 2


def test_geodesic_and_gromov_product():
    g = ct.grid_graph(3, 3)
    path, length = ct.geodesic(g, 0, 8)
    assert length == 4 and path[0] == 0 and path[-1] == 8
    assert ct.gromov_product(ct.path_graph(3), 0, 2, 1) == 0


def test_k0_exact():
    assert ct.k0(1, 1, 2) == (9261000.0, "9261000")


def test_automorphism():
    r = ct.weak_hyperbolicity_test(*ct.FIBONACCI, 3, 1.5, 5, 1)
    assert r["checked"] == 480
    assert sorted(r["violators"]) == sorted(["ABab", "BAba", "BAbab", "BABab"])
    terms, lengths = ct.pseudo_orbit(*ct.FIBONACCI, "a", 0, 6)
    assert lengths == [1, 2, 3, 5, 8, 13]
    ident = ct.weak_hyperbolicity_test(["a", "b"], ["a", "b"], 3, 1.5, 5, 1)
    assert not ident["pass"] and len(ident["violators"]) == ident["checked"]


def test_errors():
    g = ct.MetricGraph(2)
    with pytest.raises(ct.StructuralError):
        g.add_edge(0, 1, -1.0)
    with pytest.raises(ct.StructuralError):
        ct.parse_scene('{"schema_version": "1.0", "bogus": 1}')


@pytest.mark.parametrize("path", SCENES, ids=lambda p: p.stem)
def test_scene_files_validate(path):
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, schema("scene.schema.json"))
    s = ct.load_scene(str(path))
    assert s.schema_version == ct.SCENE_SCHEMA_VERSION


@pytest.mark.parametrize(
    "command,scene,params,code",
    [
        ("flaring", "doubling_bundle", "uniform", 0),
        ("flaring", "constant_bundle", "uniform", 2),
        ("relhyp", "horoball_pair", "{}", 0),
        ("automorphism", "f2_fibonacci", "{}", None),
        ("analyze", "separated_tripod", "{}", 0),
    ],
)
def test_reports_validate_and_repeat(command, scene, params, code):
    s = ct.load_scene(str(ROOT / "scenes" / f"{scene}.json"))
    out, exit_code = ct.run_command(command, s, params, 7)
    again, _ = ct.run_command(command, s, params, 7)
    assert out == again
    doc = json.loads(out)
    jsonschema.validate(doc, schema("report.schema.json"))
    assert doc["report_schema_version"] == ct.REPORT_SCHEMA_VERSION
    if code is not None:
        assert exit_code == code
    text, _ = ct.run_command(command, s, params, 7, "text")
    assert "paper vs measured" in text
