import json
import shutil
import subprocess
import sys

import pytest

from isoweave.cli import run

from _data import DATA

GOLDEN = DATA / "golden"


def weave(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_satin(capsys):
    code, out, _ = weave(capsys, "analyze", GOLDEN / "10-1-1.wv")
    assert code == 0
    lines = out.splitlines()
    for expected in ("order 20? no, order 10", "isonemal yes", "hangs together yes", "class quarter-turn", "species 36_s", "name 10-1-1"):
        assert expected in lines


def test_analyze_fall_apart(capsys):
    code, out, _ = weave(capsys, "analyze", GOLDEN / "8-27-5.wv")
    assert code == 0 and "hangs together yes" in out


def test_symmetries(capsys):
    code, out, _ = weave(capsys, "symmetries", GOLDEN / "8-27-5.wv")
    assert code == 0
    assert out.startswith("32 elements modulo the 8x8 period")
    assert "mirror with tau" in out


def test_stripe_writes_pattern(capsys, tmp_path):
    dest = tmp_path / "s.wv"
    code, out, _ = weave(capsys, "stripe", GOLDEN / "8-27-5.wv", "--phase", "1", "--out", dest)
    assert code == 0
    assert "name 8-5-3*" in out
    assert "; falls apart yes" in dest.read_text()


def test_stripe_reverse_to_stdout(capsys):
    code, out, _ = weave(capsys, "stripe", GOLDEN / "10-1-1.wv", "--view", "reverse")
    assert code == 0 and "; isonemal no" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["stripe", "--bogus", GOLDEN / "8-27-5.wv"],
        ["stripe", "--phase", "5", GOLDEN / "8-27-5.wv"],
        ["analyze", "/nonexistent/x.wv"],
        ["perfect", GOLDEN / "8-27-5.wv", "--colouring", "sideways"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert weave(capsys, *argv)[0] == 2


def test_bad_pattern_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.wv"
    bad.write_text("#x\n")
    code, _, err = weave(capsys, "analyze", bad)
    assert code == 1 and "column 2" in err


def test_perfect(capsys):
    code, out, _ = weave(capsys, "perfect", GOLDEN / "10-1-1.wv", "--colouring", "thin 0")
    assert code == 0 and "perfect yes" in out


def test_perfect_colouring_file(capsys, tmp_path):
    colours = tmp_path / "c.txt"
    colours.write_text("warps DP\nwefts PD\n")
    code, out, _ = weave(capsys, "perfect", GOLDEN / "10-1-1.wv", "--colouring", colours)
    assert code == 0 and "perfect yes" in out


def test_fallsapart(capsys, tmp_path):
    p = tmp_path / "one.wv"
    p.write_text("#\n")
    code, out, _ = weave(capsys, "fallsapart", p)
    assert code == 0
    assert out.splitlines() == ["hangs together no", "mode layer", "liftable w0"]


def test_enumerate_order20(capsys, tmp_path):
    dest = tmp_path / "c.jsonl"
    code, out, _ = weave(capsys, "enumerate", "--order", "20", "--mode", "thin", "--out", dest, "--verify")
    assert code == 0
    lines = dest.read_text().splitlines()
    assert len(lines) == 42
    assert {json.loads(x)["index"] for x in lines} == {341, 4433, 16709, 1109, 4373, 5141, 17477, 17489, 17669}
    assert "all checks passed" in out


def test_unstripe_writes_candidates(capsys, tmp_path):
    pat = tmp_path / "stripes.wv"
    pat.write_text("-#\n")
    code, out, _ = weave(capsys, "unstripe", pat, "--out", tmp_path / "f")
    assert code == 0
    files = out.split()
    assert len(files) >= 2 and all(f.endswith(".wv") for f in files)


def test_unstripe_order40_fails(capsys):
    code, out, _ = weave(capsys, "unstripe", DATA / "order40_twillin.wv")
    assert code == 1
    assert out.startswith("FAILURE")
    assert "obstructing lattice unit 4δx10δ" in out


def test_render_pbm(capsys, tmp_path):
    p = tmp_path / "c.wv"
    p.write_text("#-\n-#\n")
    dest = tmp_path / "c.pbm"
    assert weave(capsys, "render", p, "--out", dest)[0] == 0
    assert dest.read_bytes() == b"P1\n2 2\n1 0\n0 1\n"


def test_render_overlay(capsys, tmp_path):
    dest = tmp_path / "s.svg"
    assert weave(capsys, "render", GOLDEN / "10-1-1.wv", "--overlay", "--out", dest)[0] == 0
    assert "centre quarter-turn tau" in dest.read_text()
    assert weave(capsys, "render", GOLDEN / "10-1-1.wv", "--overlay", "--format", "pbm")[0] == 2


@pytest.mark.skipif(shutil.which("weave") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["weave", "analyze", str(GOLDEN / "8-11-1.wv")], capture_output=True, text=True)
    assert r.returncode == 0 and "name 8-11-1" in r.stdout


def test_module_entry():
    r = subprocess.run([sys.executable, "-m", "isoweave.cli", "stripe", "--bogus", "x"], capture_output=True, text=True)
    assert r.returncode == 2
