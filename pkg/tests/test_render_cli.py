import json
import xml.etree.ElementTree as ET

import pytest

from fewlines.cli import main
from fewlines.drawing import draw_4connected_triangulation, draw_transversal
from fewlines.drawing_types import Drawing
from fewlines.graph import k4, octahedron, pyr5
from fewlines.render import render_svg

SVG = "{http://www.w3.org/2000/svg}"


def cover_lines(svg):
    root = ET.fromstring(svg.encode())
    return [e for e in root.iter(SVG + "line") if "cover" in e.get("class", "").split()]


def test_svg_p5_has_two_cover_lines():
    svg = render_svg(draw_transversal(pyr5()).drawing)
    assert len(cover_lines(svg)) == 2
    assert svg == render_svg(draw_transversal(pyr5()).drawing)


def test_svg_empty():
    root = ET.fromstring(render_svg(Drawing({}, ())).encode())
    assert root.tag == SVG + "svg" and len(root) == 0


def test_svg_oct6():
    svg = render_svg(draw_4connected_triangulation(octahedron()).drawing)
    assert len(cover_lines(svg)) <= 3


@pytest.fixture
def files(tmp_path):
    (tmp_path / "pyr5.json").write_text(pyr5().to_json())
    (tmp_path / "oct6.json").write_text(octahedron().to_json())
    (tmp_path / "k4.json").write_text(k4().to_json())
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(files, capsys):
    code, out, _ = run(["validate", files / "pyr5.json"], capsys)
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(["validate", files / "k4.json"], capsys)
    assert code == 1 and not json.loads(out)["valid"]


def test_color_and_poset(files, capsys):
    code, out, _ = run(["color", files / "pyr5.json"], capsys)
    assert code == 0 and len(json.loads(out)["edges"]) == 4
    grid = files / "grid.json"
    code, out, _ = run(["poset", files / "pyr5.json", "--grid", grid], capsys)
    assert code == 0 and json.loads(out)["realizer"][0] == list("savbt")
    assert json.loads(grid.read_text())["t"] == [4, 4]


def test_gk(files, capsys):
    code, out, _ = run(["gk", files / "pyr5.json"], capsys)
    res = json.loads(out)
    assert code == 0
    assert res["shape"] == [3, 1, 1] and res["partition"] == "3+1+1"
    assert res["boundary_point"] == [1, 1]
    assert res["pair"]["chains"] == [["s", "v", "t"]]


def test_draw_verify_render(files, capsys):
    out_json, svg = files / "d.json", files / "d.svg"
    inter = files / "inter"
    code, _, err = run(["draw", files / "pyr5.json", "-o", out_json, "--svg", svg, "--keep-intermediate", inter],
                       capsys)
    assert code == 0 and json.loads(err)["ok"]
    assert {p.name for p in inter.iterdir()} == {"transversal.json", "poset.json", "pair.json"}
    assert svg.read_text().startswith("<?xml")
    code, out, _ = run(["verify", out_json, files / "pyr5.json"], capsys)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["render", out_json], capsys)
    assert code == 0 and "<svg" in out


def test_verify_rejects_perturbed(files, capsys):
    out_json = files / "d.json"
    run(["draw", files / "pyr5.json", "-o", out_json], capsys)
    d = json.loads(out_json.read_text())
    d["points"]["v"][0] = "7/3"
    bad = files / "bad.json"
    bad.write_text(json.dumps(d))
    code, out, _ = run(["verify", bad, files / "pyr5.json"], capsys)
    assert code == 1 and not json.loads(out)["crossings_host_vertices"]


def test_draw_triangulation_and_lattice(files, capsys):
    code, out, _ = run(["draw", files / "oct6.json"], capsys)
    assert code == 0
    d = Drawing.from_json(out)
    assert d.total_lines <= 3
    poset = files / "p.json"
    run(["poset", files / "pyr5.json", "-o", poset], capsys)
    code, out, _ = run(["draw-lattice", poset], capsys)
    assert code == 0 and Drawing.from_json(out).total_lines == 2


def test_draw_is_deterministic(files, capsys):
    outs = [run(["draw", files / "oct6.json"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_generate_and_bench(files, capsys):
    code, out, _ = run(["generate", "--n", "12", "--seed", "3"], capsys)
    assert code == 0 and len(json.loads(out)["vertices"]) == 12
    code, out, _ = run(["generate", "--n", "9", "--kind", "4-gon"], capsys)
    assert code == 0 and len(json.loads(out)["outer_face"]) == 4
    code, out, _ = run(["bench", "--sizes", "10,12", "--quiet"], capsys)
    rows = json.loads(out)
    assert code == 0 and [r["n"] for r in rows] == [10, 12] and all(r["verified"] for r in rows)


def test_usage_errors(files, capsys):
    assert run(["validate", files / "missing.json"], capsys)[0] == 2
    assert run(["draw", files / "k4.json"], capsys)[0] == 2
    assert run(["generate", "--n", "3"], capsys)[0] == 2
    with pytest.raises(SystemExit):
        main(["nonsense"])
