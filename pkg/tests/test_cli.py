import json
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from arithlimit import cli
from arithlimit.cache import cache_path, dumps, loads, read_cache, write_cache, CacheMismatch
from arithlimit.config import format_config, load_config, parse_config
from arithlimit.errors import DetNotOne, NotIntegral, NormNotOne, ParseError, UnsupportedRank
from arithlimit.limitsets import sample_furstenberg, sample_projective, DirectionSample, \
    FurstenbergSample, SampleMode
from arithlimit.render import render_svg

from conftest import CONFIG_NAMES, cfg_path, elements

BASE = "field.minpoly = x^2 - 2\n"


# --- config parsing ----------------------------------------------------------

def test_parse_valid():
    c = parse_config(BASE + "gen.E = [[1+t,0],[0,t-1]]\n")
    assert c.group.labels == ("E",) and c.group.r == 2


def test_parse_det_not_one():
    with pytest.raises(DetNotOne):
        parse_config(BASE + "gen.B = [[1,1],[0,2]]\n")


def test_parse_not_integral():
    with pytest.raises(NotIntegral):
        parse_config(BASE + "gen.C = [[1, t/2],[0,1]]\n")


def test_parse_norm_not_one():
    with pytest.raises(NormNotOne):
        parse_config(BASE + "quat.a = 3\nquat.b = t\nqgen.P = (1, 1, 0, 0)\n")


@pytest.mark.parametrize("text, line, col", [
    (BASE + "gen.X = [[1, 2 +], [0, 1]]\n", 2, 17),
    (BASE + "gen.X = [[1, 0], [0, 1]\n", 2, None),
    (BASE + "bogus = 1\n", 2, 1),
    (BASE + "gen.X = [[1,0],[0,1]]\ngen.X = [[1,0],[0,1]]\n", 3, 1),
    (BASE + "gen.X = [[1, 0], [0, 1 % 2]]\n", 2, 24),
])
def test_parse_error_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.line == line
    if col is not None:
        assert info.value.column == col


def test_expression_grammar():
    c = parse_config(BASE + "gen.X = [[(1 + t)^2 - 2*t - 2, -(4/2)*t + t*2], [3/3 - 1, 1]]\n")
    g = c.group.generators[0]
    assert g.a == c.field(1) and g.b.is_zero() and g.c.is_zero()


@pytest.mark.parametrize("name", CONFIG_NAMES)
def test_round_trip(name):
    c = load_config(cfg_path(name))
    again = parse_config(format_config(c))
    assert again == c
    assert format_config(again) == format_config(c)


# --- cache -------------------------------------------------------------------

def test_cache_round_trip(tmp_path):
    c = load_config(cfg_path("quaternion"))
    E = elements("quaternion", 4)
    write_cache(E, c.hash, tmp_path)
    E2 = read_cache(c.group, c.hash, 4, tmp_path)
    assert list(E2.records) == list(E.records)
    assert [r.word for r in E2] == [r.word for r in E]
    assert [str(r.tclass) for r in E2] == [str(r.tclass) for r in E]
    assert read_cache(c.group, c.hash, 5, tmp_path) is None


def test_cache_mismatch():
    c = load_config(cfg_path("mixed"))
    text = dumps(elements("mixed", 2), c.hash)
    with pytest.raises(CacheMismatch):
        loads(text, c.group, "0" * 64)


# --- commands ----------------------------------------------------------------

def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_classify_mixed(capsys):
    status, out, _ = run_cli(capsys, "classify", "--config", str(cfg_path("mixed")))
    assert status == 0
    row = out.splitlines()[0]
    assert row.startswith("M\tMixed: Hyperbolic(l=")
    assert "EllipticInfinite" in row
    import math
    ell = 2 * math.acosh(1 + math.sqrt(2) / 2)
    assert f"{ell:.12g}" in row


def test_plimit_rational_diagonal(capsys):
    status, out, _ = run_cli(capsys, "plimit", "--config", str(cfg_path("rational_diagonal")),
                             "--max-word-length", "6")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "theta,w1,w2,word"
    assert len(lines) == 2 and lines[1].startswith("0.5,0.5,0.5,")


def test_flimit_header(capsys):
    status, out, _ = run_cli(capsys, "flimit", "--config", str(cfg_path("generic_sqrt2")),
                             "--max-word-length", "3")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "alpha1,alpha2,word"
    for line in lines[1:]:
        a1, a2, _ = line.split(",")
        assert 0 <= float(a1) < 1 and 0 <= float(a2) < 1


def test_tracefield_and_predict(capsys):
    path = str(cfg_path("rational_diagonal"))
    _, out, _ = run_cli(capsys, "tracefield", "--config", path)
    assert "k 2" in out.splitlines()
    _, out, _ = run_cli(capsys, "predict", "--config", path, "--max-word-length", "4")
    lines = out.splitlines()
    assert "m 0" in lines and "dim_P 0" in lines and "F L x (dH2)^0" in lines


def test_discreteness_command(capsys):
    _, out, _ = run_cli(capsys, "discreteness", "--config", str(cfg_path("mixed")),
                        "--max-word-length", "3")
    assert out.splitlines()[1].startswith("place 2\tNondiscreteCertified\tEllipticInfinite")


def test_out_directory_and_manifest(tmp_path, capsys):
    status, out, _ = run_cli(capsys, "plimit", "--config", str(cfg_path("mixed")),
                             "--max-word-length", "4", "--out", str(tmp_path))
    assert status == 0 and out == ""
    assert (tmp_path / "plimit.csv").read_text().startswith("theta,w1,w2,word\n")
    m = json.loads((tmp_path / "manifest.json").read_text())
    assert m["command"] == "plimit" and m["params"]["L"] == 4


def test_exit_code_config_error(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text(BASE + "gen.B = [[1,1],[0,2]]\n")
    status, _, err = run_cli(capsys, "classify", "--config", str(bad))
    assert status == 2
    assert json.loads(err)["error"] == "DetNotOne"
    status, _, err = run_cli(capsys, "classify", "--config", str(tmp_path / "missing.cfg"))
    assert status == 2


def test_exit_code_computation_error(tmp_path, capsys):
    # r = 3 samples cannot be rendered
    cfg = tmp_path / "cubic.cfg"
    cfg.write_text("field.minpoly = x^3 - 3*x - 1\ngen.A = [[2, 1], [1, 1]]\n")
    status, _, err = run_cli(capsys, "render", "--config", str(cfg), "--max-word-length", "2")
    assert status == 3
    assert json.loads(err)["error"] == "UnsupportedRank"


def test_exit_code_verify_failure(tmp_path, capsys):
    # a purely elliptic group has no hyperbolic tuple: the precheck fails
    cfg = tmp_path / "elliptic.cfg"
    cfg.write_text(BASE + "gen.M = [[1 + t, t], [1, 1]]\ngen.R = [[0, -1], [1, 0]]\n")
    status, out, _ = run_cli(capsys, "verify", "--config", str(cfg), "--max-word-length", "2")
    assert status == 4
    assert out.startswith("FAIL\tnonelementarity precheck")


def test_verify_passes(capsys):
    status, out, _ = run_cli(capsys, "verify", "--config", str(cfg_path("mixed")),
                             "--max-word-length", "5")
    assert status == 0, out
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_enumerate_determinism_and_env_override(tmp_path, capsys, monkeypatch):
    path = str(cfg_path("generic_sqrt2"))
    a, b = tmp_path / "a", tmp_path / "b"
    run_cli(capsys, "enumerate", "--config", path, "--max-word-length", "4", "--cache", str(a))
    monkeypatch.setenv("LIMITSET_CACHE", str(b))
    run_cli(capsys, "enumerate", "--config", path, "--max-word-length", "4", "--cache", str(a))
    fa, fb = sorted(os.listdir(a)), sorted(os.listdir(b))
    assert fa == fb and len(fa) == 1
    assert (a / fa[0]).read_bytes() == (b / fb[0]).read_bytes()


def test_cached_plimit_matches_fresh(tmp_path, capsys):
    path = str(cfg_path("mixed"))
    _, fresh, _ = run_cli(capsys, "plimit", "--config", path, "--max-word-length", "4")
    run_cli(capsys, "enumerate", "--config", path, "--max-word-length", "4",
            "--cache", str(tmp_path))
    _, cached, _ = run_cli(capsys, "plimit", "--config", path, "--max-word-length", "4",
                           "--cache", str(tmp_path))
    assert cached == fresh


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "arithlimit", "classify", "--config",
                          str(cfg_path("rational_diagonal"))], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("G1\tHyperbolic")


# --- rendering ---------------------------------------------------------------

def _circles(svg):
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    return root, root.findall(f".//{ns}circle"), root.findall(f".//{ns}line")


def test_render_rational_diagonal():
    E = elements("rational_diagonal", 5)
    svg = render_svg(sample_furstenberg(E), sample_projective(E))
    root, circles, _ = _circles(svg)
    assert root.get("viewBox") == "0 0 800 800"
    assert circles
    for c in circles:
        # square at (100, 40) of side 600; alpha2 grows upwards
        x = (float(c.get("cx")) - 100) / 600
        y = (640 - float(c.get("cy"))) / 600
        assert abs(x - y) < 1e-9


def test_render_single_and_empty():
    from arithlimit.isometry import BoundaryPoint, Direction
    pt = (BoundaryPoint.from_real(0.0), BoundaryPoint.from_real(1.0))
    one = render_svg(FurstenbergSample([(pt, "g")]),
                     DirectionSample(SampleMode.PROJECTIVE_LIMIT, [(Direction((0.5, 0.5)), "g")]))
    _, circles, _ = _circles(one)
    assert len(circles) == 1
    ns = "{http://www.w3.org/2000/svg}"
    ticks = ET.fromstring(one).findall(f".//{ns}g[@class='directions']/{ns}line")
    assert len(ticks) == 1
    empty = render_svg(FurstenbergSample([]), DirectionSample(SampleMode.PROJECTIVE_LIMIT, []))
    _, circles, lines = _circles(empty)
    assert not circles and lines


def test_render_rank_check():
    from arithlimit.isometry import BoundaryPoint
    pt = tuple(BoundaryPoint.from_real(0.0) for _ in range(3))
    with pytest.raises(UnsupportedRank):
        render_svg(FurstenbergSample([(pt, "g")]))
