import pytest

from spaths.cli import main
from spaths.instance import parse


@pytest.fixture
def path_file(tmp_path):
    f = tmp_path / "a.sp"
    f.write_text("3 2 2\n1\n3\n1 2\n2 3\n")
    return str(f)


def test_solve(path_file, capsys):
    assert main(["solve", "--quiet", path_file]) == 0
    out = capsys.readouterr().out
    assert out in ("1\n1 2 3\n", "1\n3 2 1\n")


def test_solve_verify_and_dump(path_file, capsys):
    assert main(["solve", "--verify", "--seed-dump", path_file]) == 0
    cap = capsys.readouterr()
    assert cap.out.startswith("1\n")
    assert "B: terminals=1,3 edges=1-2" in cap.err


def test_missing_file_exits_2(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "missing.sp")]) == 2


def test_malformed_file_exits_2(tmp_path, capsys):
    f = tmp_path / "bad.sp"
    f.write_text("3 1 1\n1\n2 2\n")
    assert main(["solve", str(f)]) == 2
    assert "self-loop" in capsys.readouterr().err


def test_oracle(path_file, capsys):
    assert main(["oracle", path_file]) == 0
    assert capsys.readouterr().out == "1\n"


def test_oracle_cap_exits_4(tmp_path, capsys):
    f = tmp_path / "big.sp"
    main(["gen", "12", "14", "4", "2", "1", "-o", str(f)])
    assert main(["oracle", str(f)]) == 4


def test_gen_roundtrip_and_solve(tmp_path, capsys):
    f = tmp_path / "g.sp"
    assert main(["gen", "5", "6", "4", "2", "7", "-o", str(f)]) == 0
    inst = parse(f.read_text())
    assert (inst.n, inst.m, inst.k, len(inst.blocks)) == (5, 6, 4, 2)
    assert main(["gen", "5", "6", "4", "2", "7"]) == 0
    assert parse(capsys.readouterr().out) == inst
    assert main(["solve", "--quiet", str(f)]) == 0


def test_gen_bad_parameters(capsys):
    assert main(["gen", "5", "4", "6", "2", "0"]) == 2


def test_stats(path_file, capsys):
    assert main(["stats", path_file]) == 0
    lines = dict(l.split("=", 1) for l in capsys.readouterr().out.split())
    assert lines["q"] == "3" and lines["p"] == "1"


def test_invariant_failure_exits_3(path_file, monkeypatch, capsys):
    from spaths import cli
    from spaths.base import InvariantError

    def broken(*args, **kwargs):
        raise InvariantError("forced")

    monkeypatch.setattr(cli, "solve", broken)
    assert main(["solve", path_file]) == 3
