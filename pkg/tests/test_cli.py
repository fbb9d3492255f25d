import subprocess
import sys

import pytest

from dict2d.cli import main


def write(tmp_path, name, data):
    (tmp_path / name).write_bytes(data)
    return tmp_path / name


@pytest.fixture
def session(tmp_path):
    write(tmp_path, "p1.txt", b"2 2\nab\ncd\n")
    write(tmp_path, "p2.txt", b"1 2\nxx\n")
    write(tmp_path, "t.txt", b"3 3\nabx\ncdx\nxxx\n")
    return tmp_path


@pytest.mark.parametrize("engine", ["auto", "linear", "blocked", "grouped"])
def test_run_script(session, capsys, engine):
    script = write(
        session,
        "s.txt",
        b"# demo\nadd p1.txt\nadd p2.txt\n\nsearch t.txt\nremove 2\nsearch t.txt\nstats\n",
    )
    assert main(["run", str(script), "--engine", engine]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:2] == ["1", "2"]
    assert out[2:5] == ["MATCH 1 1 1", "MATCH 2 3 1", "MATCH 2 3 2"]
    assert out[5] == "MATCH 1 1 1"
    assert out[6:10] == ["d=1", "ell=4", "m_bar=2", "m_prime=2"]
    assert out[10].startswith("tau=") and out[11].startswith("comparisons=")


@pytest.mark.parametrize(
    "body,needle",
    [
        (b"add missing.txt\n", "line 1"),
        (b"add p1.txt\nremove 7\n", "line 2"),
        (b"frobnicate\n", "line 1"),
        (b"add p1.txt\nadd bad.txt\n", "line 2"),
        (b"remove x\n", "line 1"),
    ],
)
def test_script_errors(session, capsys, body, needle):
    write(session, "bad.txt", b"2 2\nab\n")
    script = write(session, "s.txt", body)
    assert main(["run", str(script)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("dict2d: ") and needle in err and err.count("\n") == 1


def test_missing_script(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope")]) == 2


def test_generate_is_deterministic_and_parses(capsys):
    from dict2d import parse_matrix

    assert main(["generate", "--rows", "3", "--cols", "5", "--seed", "4", "--period", "2"]) == 0
    a = capsys.readouterr().out
    main(["generate", "--rows", "3", "--cols", "5", "--seed", "4", "--period", "2"])
    assert capsys.readouterr().out == a
    T = parse_matrix(a.encode())
    assert T.height == 3 and all(r[0] == r[2] == r[4] for r in T.rows)


def test_console_entry_point(session):
    script = write(session, "s.txt", b"add p1.txt\nsearch t.txt\n")
    res = subprocess.run(
        [sys.executable, "-m", "dict2d.cli", "run", str(script)], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0 and res.stdout == "1\nMATCH 1 1 1\n"
