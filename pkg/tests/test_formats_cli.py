import io
import subprocess
import sys
from pathlib import Path

import pytest

from qcsp.cli import main, run_command
from qcsp.fixtures import FIXTURES, K2
from qcsp.formats import (FormatError, dump_sentence, dump_structure, parse_sentence,
                          parse_structure)
from qcsp.logic import PHSentence

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def fx(name):
    return str(FIXTURE_DIR / name)


@pytest.mark.parametrize("path", sorted(FIXTURE_DIR.glob("*.rel")), ids=lambda p: p.name)
def test_structure_files_round_trip(path):
    text = path.read_text()
    s = parse_structure(text)
    assert dump_structure(s) == text
    assert s == FIXTURES[path.stem]


@pytest.mark.parametrize("path", sorted(FIXTURE_DIR.glob("*.ph")), ids=lambda p: p.name)
def test_sentence_files_round_trip(path):
    text = path.read_text()
    assert dump_sentence(parse_sentence(text)) == text


def test_parse_comments_and_constants():
    s = parse_structure("# k2\ndomain 2  # two\nrelation E 2\n0 1\n1 0\nend\n")
    assert s == K2
    phi = parse_sentence("prefix E y\natom E @0 y\n")
    assert str(phi.body[0]) == "E(@0,y)"
    assert parse_sentence("false\n") == PHSentence.bottom()
    assert parse_sentence("prefix A x\n") == PHSentence((("A", "x"),), ())


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("domain x\n", 1, 8),
    ("domain 2\nrelation E 2\n0 5\nend\n", 3, 3),
    ("domain 2\nrelation E 2\n0\nend\n", 3, 1),
    ("domain 2\nrelation E 2\n0 1\n", 4, 1),
    ("domain 2\nbogus\n", 2, 1),
])
def test_structure_errors(text, line, column):
    with pytest.raises(FormatError) as info:
        parse_structure(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize("text,line,column", [
    ("prefix Q x\n", 1, 8),
    ("prefix A x\natom E x y\n", 2, 10),
    ("prefix A x A x\n", 1, 14),
    ("atom E @0 @0\nprefix A x\n", 2, 1),
    ("prefix A x\natom E x @z\n", 2, 10),
    ("prefix A x\nfalse\n", 2, 1),
])
def test_sentence_errors(text, line, column):
    with pytest.raises(FormatError) as info:
        parse_sentence(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_cli_solve_game_yes():
    code, out = run_command(["solve", "--structure", fx("K2.rel"),
                             "--sentence", fx("forall-exists-edge.ph"), "--mode", "game"])
    assert (code, out) == (0, "yes\n")


def test_cli_solve_modes():
    common = ["--structure", fx("K2.rel"), "--sentence", fx("common-neighbour.ph")]
    assert run_command(["solve", *common]) == (1, "no\n")
    assert run_command(["solve", *common, "--mode", "collapse", "--k", "2"]) == (1, "no\n")
    assert run_command(["solve", *common, "--normalize"]) == (1, "no\n")
    code, out = run_command(["solve", *common, "--mode", "csp"])
    assert code == 2 and "primitive positive" in out


def test_cli_nu():
    assert run_command(["nu", "--structure", fx("K3.rel"), "--arity", "3"]) == \
        (1, "none (arity 3 searched)\n")
    code, out = run_command(["nu", "--structure", fx("K2.rel")])
    assert code == 0 and out.startswith("operation 3 2\n") and "0 1 1 -> 1" in out


def test_cli_microcosm_backward_writes_bottom(tmp_path):
    target = tmp_path / "out.ph"
    code, out = run_command(["microcosm", "backward", "--sentence", fx("a2a-path.ph"),
                             "--f-symbol", "F", "-o", str(target)])
    assert (code, out) == (0, "")
    assert target.read_text() == "false\n"


def test_cli_microcosm_build_and_forward():
    code, out = run_command(["microcosm", "build", "--structure", fx("K2.rel")])
    assert code == 0 and parse_structure(out).size == 3
    code, out = run_command(["microcosm", "forward", "--sentence", fx("forall-exists-edge.ph"),
                             "--structure", fx("K2.rel")])
    assert code == 0 and out.startswith("prefix A a A x E y\n")


def test_cli_core_iso_collapse(tmp_path):
    plus = tmp_path / "plus.rel"
    plus.write_text(dump_structure(K2.with_isolated()))
    code, out = run_command(["core", "--structure", str(plus)])
    assert code == 0
    core = tmp_path / "core.rel"
    core.write_text(out)
    assert run_command(["iso", "--structure", str(core), "--other", fx("K2.rel")]) == (0, "yes\n")
    assert run_command(["iso", "--structure", fx("P1.rel"), "--other", fx("K2.rel")]) == (1, "no\n")
    code, out = run_command(["collapse", "--structure", fx("K2.rel"),
                             "--sentence", fx("common-neighbour.ph"), "--survivors", "u1",
                             "--emit", "chen"])
    assert code == 0 and "v[u1=0]" in out
    code, out = run_command(["collapse", "--structure", fx("K2.rel"),
                             "--sentence", fx("common-neighbour.ph"), "--emit", "structure"])
    assert code == 0 and out.startswith("domain 3\n")


def test_cli_errors_and_budget(tmp_path):
    bad = tmp_path / "bad.rel"
    bad.write_text("domain 2\nrelation E 2\n0 9\nend\n")
    code, out = run_command(["core", "--structure", str(bad)])
    assert code == 2 and "line 3, column 3" in out
    assert run_command(["core", "--structure", str(tmp_path / "missing.rel")])[0] == 2
    assert run_command(["frobnicate"])[0] == 2
    big = tmp_path / "big.ph"
    big.write_text("prefix" + "".join(f" A u{i}" for i in range(8)) + "\n")
    code, out = run_command(["solve", "--structure", fx("K2.rel"), "--sentence", str(big),
                             "--budget", "10"])
    assert code == 3 and "budget" in out
    assert run_command(["nu", "--structure", fx("K3.rel"), "--arity", "9"])[0] == 3


def test_cli_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("prefix A x E y\natom E x y\n"))
    assert main(["solve", "--structure", fx("P1.rel"), "--sentence", "-"]) == 1
    assert capsys.readouterr().out == "no\n"


def test_cli_verify_small():
    code, out = run_command(["verify", "--suite", "fo", "--samples", "5", "--seed", "1"])
    assert code == 0 and "0 discrepancies" in out
    assert out == run_command(["verify", "--suite", "fo", "--samples", "5", "--seed", "1"])[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qcsp", "solve", "--structure", fx("K2.rel"),
                           "--sentence", fx("forall-exists-edge.ph")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "yes\n"
