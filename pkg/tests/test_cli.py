import io
import json
import subprocess
import sys

import pytest

from beltedfal.cli import main
from beltedfal.core import isomorphism, parse
from beltedfal.fixtures import load, path
from beltedfal.volume import V8


def run(argv, stdin=None, capsys=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def fixture(name):
    return str(path(name))


def test_prime(capsys):
    code, out, _ = run(["prime", fixture("PRISM1")], capsys=capsys)
    doc = json.loads(out)
    assert code == 0 and doc["b_prime"] is False and doc["witness_cut"]["edges"] == [6, 7, 8]
    code, out, _ = run(["prime", fixture("PRISM3")], capsys=capsys)
    assert json.loads(out) == {"b_prime": True, "witness_cut": None}


def test_volume_from_stdin(capsys, monkeypatch):
    code, out, _ = run(["volume"], stdin=path("BORR").read_text(), capsys=capsys, monkeypatch=monkeypatch)
    assert code == 0 and abs(json.loads(out)["volume"] - 7.327724753) < 1e-6


def test_validate_exit_code(capsys, monkeypatch, tmp_path):
    code, out, _ = run(["validate", fixture("BORR")], capsys=capsys)
    assert code == 0 and json.loads(out)["ok"] is True
    doc = json.loads(path("BORR").read_text())
    doc["painted"] = [2, 3]
    bad = tmp_path / "bad.crush"
    bad.write_text(json.dumps(doc))
    code, out, err = run(["validate", str(bad)], capsys=capsys)
    assert code == 1 and json.loads(out)["ok"] is False and err == ""
    code, out, err = run(["prime", str(bad)], capsys=capsys)
    assert code == 1 and "perfect matching" in out and "invalid" in err
    code, out, _ = run(["validate"], stdin="{not json", capsys=capsys, monkeypatch=monkeypatch)
    assert code == 1 and json.loads(out)["ok"] is False


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["prime", "--bogus"])
    assert exc.value.code == 2
    code, _, err = run(["sum", fixture("BORR")], capsys=capsys)
    assert code == 2 and "usage" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(["prime", str(tmp_path / "nope.crush")], capsys=capsys)
    assert code == 1 and "nope.crush" in err


def test_decompose_then_sum(capsys, tmp_path):
    out_dir = tmp_path / "d"
    code, out, _ = run(["decompose", fixture("PRISM1"), "--out-dir", str(out_dir)], capsys=capsys)
    assert code == 0
    files = sorted(out_dir.glob("summand_*.crush"))
    assert len(files) == 2
    for f in files:
        s = parse(f.read_text())
        assert isomorphism(s, load("BORR")) is not None and s.painted - s.twisted
    code, out, _ = run(["sum", "--tree", str(out_dir / "tree.json")], capsys=capsys)
    g = parse(out)
    assert code == 0 and isomorphism(g, load("PRISM1")) is not None and not g.twisted


def test_refined_decompose(capsys, tmp_path):
    code, out, _ = run(
        ["decompose", fixture("PRISM1"), "--refine-whitehead", "--out-dir", str(tmp_path)], capsys=capsys
    )
    assert code == 0 and len(json.loads(out)["summands"]) == 4
    code, out, _ = run(["sum", "--tree", str(tmp_path / "tree.json")], capsys=capsys)
    assert code == 0 and isomorphism(parse(out), load("PRISM1")) is not None


def test_sum_two_files(capsys):
    argv = ["sum", fixture("BORR"), fixture("BORR"), "--edge1", "0", "--edge2", "0", "--orient", "reverse"]
    code, out, _ = run(argv, capsys=capsys)
    assert code == 0 and parse(out).c == 3
    code, _, err = run(["sum", fixture("BORR"), fixture("BORR"), "--edge1", "2", "--edge2", "0"], capsys=capsys)
    assert code == 1 and "not painted" in err


@pytest.mark.parametrize("sub", ["nerve", "cuts", "disks", "pairs", "pack"])
def test_json_subcommands(capsys, sub):
    code, out, _ = run([sub, fixture("PRISM1")], capsys=capsys)
    assert code == 0
    json.loads(out)


def test_cuts_and_pairs_content(capsys):
    _, out, _ = run(["cuts", "--nontrivial", fixture("PRISM3")], capsys=capsys)
    assert [k["painted_count"] for k in json.loads(out)["cuts"]] == [3]
    _, out, _ = run(["pairs", fixture("BORR-tt")], capsys=capsys)
    assert json.loads(out) == {"pairs": []}
    _, out, _ = run(["disks", fixture("BORR-tt")], capsys=capsys)
    assert json.loads(out)["notes"]


def test_pack_schema(capsys):
    _, out, _ = run(["pack", fixture("BORR"), "--tol", "1e-12"], capsys=capsys)
    doc = json.loads(out)
    assert len(doc["circles"]) == 4 and doc["residual"] < 1e-11


def test_render_and_svg_formats(capsys, tmp_path):
    _, a, _ = run(["render", fixture("BORR")], capsys=capsys)
    _, b, _ = run(["render", fixture("BORR")], capsys=capsys)
    assert a == b and a.startswith("<?xml")
    target = tmp_path / "p.svg"
    run(["render", fixture("BORR"), "--what", "packing", "--out", str(target)], capsys=capsys)
    assert target.read_text().count('class="tangency"') == 6
    _, out, _ = run(["nerve", fixture("BORR"), "--format", "svg"], capsys=capsys)
    assert "<svg" in out


def test_census_csv(capsys, tmp_path):
    code, out, err = run(["census", "--c-max", "3", "--out-dir", str(tmp_path)], capsys=capsys)
    assert code == 0 and (tmp_path / "census.csv").read_text() == out
    assert "b-prime iff fully twisted" in err
    assert len(list((tmp_path / "instances").glob("*.json"))) == 3
    code, out, _ = run(["census", "--c-max", "3", "--format", "json"], capsys=capsys)
    assert [r["n_fals"] for r in json.loads(out)["rows"]] == [1, 2]


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "beltedfal.cli", "volume", fixture("THETA")], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and abs(json.loads(proc.stdout)["volume"] - V8) < 1e-6
