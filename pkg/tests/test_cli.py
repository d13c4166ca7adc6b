import json
import subprocess
import sys

import pytest

from superleavitt.cli import run_cli


def run(capsys, *args):
    code = run_cli(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf(capsys):
    assert run(capsys, "nf", "--graph", "rose2", "-e", "e2.e2*") == (0, "- e1.e1* + v\n", "")


def test_radical(capsys):
    code, out, _ = run(capsys, "radical", "--graph", "arrow", "-e", "e")
    assert code == 0 and "member: true" in out
    code, out, _ = run(capsys, "radical", "--graph", "arrow", "-e", "v + e")
    assert "member: false" in out and "bosonic projection: v" in out


def test_confluence(capsys):
    code, out, _ = run(capsys, "confluence", "--graph", "line2", "--max-len", "4")
    assert code == 0 and "0 disagreements" in out


def test_mul_and_grade(capsys):
    assert run(capsys, "mul", "--graph", "arrow", "-e", "v", "-e", "e")[:2] == (0, "e\n")
    code, out, _ = run(capsys, "grade", "--graph", "grass", "-e", "w1.w2 + 3 w1")
    assert out == "even: w1.w2\nodd: 3 w1\nparity: inhomogeneous\n"
    code, _, err = run(capsys, "mul", "--graph", "arrow", "-e", "v")
    assert code == 1 and "two" in err


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--graph", "arrow", "--max-len", "2")
    assert out.splitlines() == ["1: v w e e*", "2: v.w"]
    code, out, _ = run(capsys, "basis", "--graph", "arrow", "--max-len", "2", "--count-only", "--json")
    assert json.loads(out)["cumulative"] == [4, 5]


def test_growth(capsys):
    code, out, _ = run(capsys, "growth", "--graph", "chainx", "--max-len", "60", "--json")
    d = json.loads(out)
    assert code == 0 and d["agreement"] and d["theory"]["gk_estimate"] == 3
    code, _, err = run(capsys, "growth", "--graph", "loop", "--max-len", "3")
    assert code == 1 and "too short" in err


def test_info_and_dump_spec(tmp_path, capsys):
    code, out, _ = run(capsys, "info", "--graph", "line2", "--json")
    assert json.loads(out)["has_identity"] is True
    code, spec, _ = run(capsys, "info", "--graph", "chainx", "--dump-spec")
    path = tmp_path / "chainx.graph"
    path.write_text(spec)
    code, again, _ = run(capsys, "info", "--graph", str(path), "--dump-spec")
    assert code == 0 and again == spec


def test_input_errors(tmp_path, capsys):
    assert run(capsys, "nf", "--graph", "nosuch", "-e", "v")[0] == 1
    assert run(capsys, "nf", "--graph", "arrow", "-e", "v*")[0] == 1
    bad = tmp_path / "bad.graph"
    bad.write_text("bosonic v\nfield gf 2\n")
    code, _, err = run(capsys, "info", "--graph", str(bad))
    assert code == 1 and "line 2" in err
    assert run(capsys, "frobnicate")[0] == 1


def test_field_from_file(tmp_path, capsys):
    path = tmp_path / "g.graph"
    path.write_text("field gf 5\nbosonic v\nedge c v -> v\n")
    code, out, _ = run(capsys, "nf", "--graph", str(path), "-e", "1/2 c.c*.c")
    assert (code, out) == (0, "3 c\n")


def test_invariant_violation_exit_code(monkeypatch, capsys):
    import superleavitt.cli as cli

    monkeypatch.setattr(cli, "conforms_to_monomial_form", lambda g, w: False)
    code, _, err = run(capsys, "nf", "--graph", "loop", "-e", "c")
    assert code == 2 and "invariant" in err


def test_deterministic(capsys):
    args = ("confluence", "--graph", "chainx", "--max-len", "3", "--seed", "4", "--json")
    assert run(capsys, *args) == run(capsys, *args)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "superleavitt", "nf", "--graph", "loop", "-e", "c*.c"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "v\n"
