import pytest

from braidmono.cli import main
from braidmono.fixtures import data_path

SMALL = "conic 0 0 1 -1 0 0 p\nline 1/3 1/5 a\nline -1/2 2 b\n"


@pytest.fixture
def small_curve(tmp_path):
    p = tmp_path / "small.txt"
    p.write_text(SMALL)
    return p


def test_analyze_prints_table(small_curve, capsys):
    assert main(["analyze", str(small_curve)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "n=4 model=K1 labels=1,2,3,4 base=right"
    assert out[-1] == "j=6 type=a1 lpair=(1,2) delta=D12R<1>"


def test_analyze_writes_file_from_left(small_curve, tmp_path, capsys):
    out = tmp_path / "table.txt"
    assert main(["analyze", str(small_curve), "--basepoint", "left", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    lines = out.read_text().splitlines()
    assert "base=left" in lines[0]
    assert lines[1] == "j=6 type=a2 lpair=P1 delta=DR12<1>"


def test_analyze_verbose_lists_ignored_events(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text(SMALL + "window 1 20\n")
    assert main(["analyze", str(p), "--verbose"]) == 0
    assert "# outside window: x=0 (p)" in capsys.readouterr().out


def test_analyze_output_feeds_check(tmp_path, capsys):
    table = tmp_path / "s1.txt"
    assert main(["analyze", str(data_path("s1_curve_a.txt")), "--out", str(table)]) == 0
    assert main(["check", str(table), str(data_path("s1_expected.txt"))]) == 0
    assert "matched 27/27 rows" in capsys.readouterr().out


def test_monodromy_on_mirrored_table(capsys):
    assert main(["monodromy", str(data_path("s2_table.txt")), "--format", "words"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("phi_M = F1 * F1^rho^-1  (rho = D<2,3>^1 D<9,10>^1")
    assert len(lines) == 29
    assert all(ln.startswith("j=") and "pretty=" not in ln for ln in lines[1:])


def test_check_passes_on_s2(capsys):
    assert main(["check", str(data_path("s2_table.txt")), str(data_path("s2_expected.txt"))]) == 0
    out = capsys.readouterr().out
    assert "matched 26/26 rows; convention-defaulted rows: 2/2 agree" in out
    assert "[convention-defaulted]" in out


def test_check_reports_mismatch_with_exit_3(tmp_path, capsys):
    text = data_path("s1_expected.txt").read_text().replace("j=1 Z2[4,5]", "j=1 Z-2[4,5]")
    bad = tmp_path / "bad.txt"
    bad.write_text(text)
    assert main(["check", str(data_path("s1_table.txt")), str(bad)]) == 3
    captured = capsys.readouterr()
    assert "j=1 MISMATCH" in captured.out
    assert "mismatch in rows 1" in captured.err


def test_check_needs_expected_file(capsys):
    assert main(["check", str(data_path("s1_table.txt"))]) == 1


def test_dict_command(capsys):
    assert main(["dict"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 9 and lines[-1] == "8/8"


@pytest.mark.parametrize(
    "argv_text, code",
    [
        (["frobnicate"], 1),
        (["analyze", "{missing}"], 1),
        (["analyze", "{dup}"], 1),
        (["analyze", "{collide}"], 2),
        (["monodromy", "{badtable}"], 1),
        (["monodromy", "{threading}"], 2),
    ],
)
def test_exit_codes(tmp_path, capsys, argv_text, code):
    files = {
        "missing": tmp_path / "nope.txt",
        "dup": tmp_path / "dup.txt",
        "collide": tmp_path / "collide.txt",
        "badtable": tmp_path / "bad.txt",
        "threading": tmp_path / "thread.txt",
    }
    files["dup"].write_text("line 1 0\nline 1 0\n")
    files["collide"].write_text("line 1 0\nline -1 0\nconic 0 0 1 -1 0 -1\n")
    files["badtable"].write_text("j=1 type=c lpair=(1,2) delta=D<1,2>^1\n")
    files["threading"].write_text("n=4 model=K2\nj=1 type=a1 lpair=(2,3) delta=D12R<2>\n")
    argv = [a.format(**{k: str(v) for k, v in files.items()}) for a in argv_text]
    assert main(argv) == code


def test_output_is_deterministic(capsys):
    runs = []
    for _ in range(2):
        assert main(["monodromy", str(data_path("s1_table.txt"))]) == 0
        runs.append(capsys.readouterr().out.encode())
    assert runs[0] == runs[1]
