import json

import pytest

from cliffordtopo import FORMAT_VERSION
from cliffordtopo.cli import main
from cliffordtopo.golden import GOLDEN_SOURCES, golden_text, load_golden
from cliffordtopo.models import kane_mele

# subcommand argv that regenerates each reference table
GOLDEN_ARGV = {
    "chessboard": ["chessboard", "--rows", "8", "--cols", "8"],
    "ko_table_real": ["ko-table", "--real"],
    "ko_table_complex": ["ko-table", "--complex"],
    "index_table_real": ["index-table", "--real"],
    "index_table_complex": ["index-table", "--complex"],
    "periodic_table": ["periodic-table"],
    "groups_real": ["groups", "--real"],
    "groups_complex": ["groups", "--complex"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_every_golden_file_has_a_command():
    assert set(GOLDEN_ARGV) == set(GOLDEN_SOURCES)


@pytest.mark.parametrize("name", sorted(GOLDEN_ARGV))
def test_golden_json_reproduced(capsys, name):
    code, out, _ = run(capsys, *GOLDEN_ARGV[name], "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"] == load_golden(name)
    assert doc["format_version"] == FORMAT_VERSION


@pytest.mark.parametrize("name", sorted(GOLDEN_ARGV))
def test_golden_text_reproduced(capsys, name):
    code, out, _ = run(capsys, *GOLDEN_ARGV[name])
    assert code == 0
    assert out == golden_text(name, "txt")


def test_output_is_deterministic(capsys):
    argv = ["chern", "--phi", "1.5708", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_format_flag_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "json", "classify", "--p", "2", "--q", "0")
    assert code == 0
    assert json.loads(out)["result"]["algebra"] == "H"


def test_classify(capsys):
    assert run(capsys, "classify", "--p", "2", "--q", "0")[1] == "H\n"
    assert run(capsys, "classify", "--p", "0", "--q", "5")[1] == "H(2)+H(2)\n"


def test_chessboard_csv(capsys):
    code, out, _ = run(capsys, "chessboard", "--rows", "2", "--cols", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["s\\n,0,1", "0,R,C", "1,R+R,R(2)"]


def test_periodic_table_csv_rows(capsys):
    out = run(capsys, "periodic-table", "--format", "csv")[1]
    assert len(out.splitlines()) == 11


def test_argument_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--p", "x", "--q", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "chessboard", "--rows", "0")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "classify", "--p", "1", "--q", "1", "--format", "csv")
    assert code == 2


def test_genus(capsys, tmp_path):
    code, out, _ = run(capsys, "genus", "--series", "todd", "--degree", "4")
    assert code == 0 and out == "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2\n"
    k3 = tmp_path / "k3.json"
    k3.write_text('{"p1": "-48"}')
    code, out, _ = run(capsys, "genus", "--series", "ahat", "--degree", "4", "--eval", str(k3),
                       "--k", "4", "--format", "json")
    ev = json.loads(out)["result"]["evaluation"]
    assert code == 0 and ev == {"dimension": 4, "value": "2", "k": 4, "index": 1}
    bad = tmp_path / "bad.json"
    bad.write_text('{"p1": "-24"}')
    code, _, err = run(capsys, "genus", "--series", "ahat", "--degree", "4", "--eval", str(bad), "--k", "4")
    assert code == 1 and "1/2" in err
    cp2 = tmp_path / "cp2.json"
    cp2.write_text('{"c1^2": "9", "c2": "3"}')
    code, out, _ = run(capsys, "genus", "--series", "todd", "--degree", "2", "--eval", str(cp2))
    assert code == 0 and "value on 4-manifold: 1" in out
    code, _, _ = run(capsys, "genus", "--series", "todd", "--degree", "4", "--eval", str(k3))
    assert code == 2


def test_model_check(capsys, tmp_path):
    path = tmp_path / "km.json"
    path.write_text(json.dumps(kane_mele(1.0, 0.06, 0.05, 0.1).to_dict()))
    code, out, _ = run(capsys, "model", "check", "--file", str(path), "--symmetry", "T", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["command"] == "model check"
    assert doc["result"]["passed"] and doc["result"]["az_class"] == "AII"
    code, _, _ = run(capsys, "model", "check", "--file", str(path), "--symmetry", "C")
    assert code == 2
    broken = kane_mele().to_dict()
    broken["d"]["12"].append({"fn": "const", "harmonic": [0, 0], "amp": 0.05})
    path.write_text(json.dumps(broken))
    code, _, err = run(capsys, "model", "check", "--file", str(path), "--symmetry", "T")
    assert code == 1 and "violated" in err
    code, _, _ = run(capsys, "model", "check", "--file", str(tmp_path / "missing.json"), "--symmetry", "T")
    assert code == 2


def test_chern_command(capsys):
    code, out, _ = run(capsys, "chern", "--model", "haldane", "--t1", "1", "--t2", "0.2",
                       "--phi", "1.5708", "--M", "0", "--grid", "24")
    assert code == 0 and out == "-1\n"
    assert run(capsys, "chern", "--M", "2.0")[1] == "0\n"
    code, _, err = run(capsys, "chern", "--phi", "0", "--M", "0")
    assert code == 1 and "gap" in err
    code, out, _ = run(capsys, "chern", "--occupied", "1")
    assert code == 0 and out == "1\n"


def test_z2_command(capsys):
    code, out, _ = run(capsys, "z2", "--model", "kane-mele", "--t", "1", "--lso", "0.06",
                       "--lr", "0.05", "--M", "0.1", "--grid", "24")
    assert code == 0 and out == "1\n"
    assert run(capsys, "z2", "--M", "0.4")[1] == "0\n"
    code, _, _ = run(capsys, "z2", "--lso", "0", "--M", "0")
    assert code == 1


def test_phase_diagram_command(capsys, tmp_path):
    out_file = tmp_path / "pd.csv"
    code, out, _ = run(capsys, "phase-diagram", "--model", "haldane", "--out", str(out_file),
                       "--resolution", "9", "--grid", "12")
    assert code == 0 and out.startswith("wrote ")
    lines = out_file.read_text().splitlines()
    assert lines[0] == "phi,m_over_t2,chern,gap_min" and len(lines) == 82
    code, out, _ = run(capsys, "phase-diagram", "--resolution", "5", "--grid", "12", "--format", "csv")
    assert out.splitlines()[0] == "phi,m_over_t2,chern,gap_min"
