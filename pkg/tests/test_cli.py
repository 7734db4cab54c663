import io
import json
import subprocess
import sys

import pytest

from sghilb.cli import run_command

TWISTED_LEX = "ring x y z t\nideal x^2, x*y, x*z, x*t^2, y^4, y^3*z\n"
K2 = "ring x y z t\nideal x^2 - x*t, x*y, x*z^2, y^4\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def doc(tmp_path):
    def write(text, name="ideal.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_hf_and_hp(doc):
    f = doc(TWISTED_LEX)
    code, out, _ = run("hf", f, "--max-degree", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ideal"] == [0, 0, 3, 10, 22] and data["quotient"] == [1, 4, 7, 10, 13]
    assert run("hp", f)[1].strip() == "3*d + 1"
    assert run("regularity", f)[1].strip() == "4"
    assert run("sat", f)[1].strip() == "<x, y^4, y^3*z>"


def test_lex_segment_and_borel_enum():
    code, out, _ = run("lex-segment", "--hf", "0,0,3,10,22", "--poly", "3d+1")
    assert code == 0 and out.strip() == "<x^2, x*y, x*z, x*t^2, y^4, y^3*z>"
    code, out, _ = run("borel-enum", "--hf", "0,0,3,10,22", "--poly", "3d+1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 3
    assert data["ideals"][-1] == ["x^2", "x*y", "y^2"]
    code, out, _ = run("borel-enum", "--poly", "3d+1", "--saturated", "--max-degree", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["ideals"] == [["x", "y^4", "y^3*z"], ["x^2", "x*y", "x*z", "y^3"], ["x^2", "x*y", "y^2"]]


def test_borel_enum_is_sorted_and_stable():
    a = run("borel-enum", "--hf", "0,0,2,8,19,36,60", "--poly", "4d", "--format", "json")[1]
    b = run("borel-enum", "--hf", "0,0,2,8,19,36,60", "--poly", "4d", "--format", "json")[1]
    assert a == b
    ideals = json.loads(a)["ideals"]
    assert len(ideals) == 4
    assert ideals[0] == ["x^2", "x*y", "x*z^2", "x*z*t^2", "x*t^4", "y^5", "y^4*z^2"]


def test_borel_check_exit_codes(doc):
    assert run("borel-check", doc(TWISTED_LEX))[0] == 0
    code, out, _ = run("borel-check", doc("ring x y z t\nideal y^2\n"), "--format", "json")
    assert code == 1
    assert json.loads(out)["strongly_stable"] is False


def test_gb_initial_gin(doc):
    f = doc(K2)
    assert run("gb", f, "--order", "lex")[1].split("\n")[0] == "x^2 - x*t"
    assert run("initial", f)[1].strip() == "<x^2, x*y, x*z^2, y^4>"
    code, out, _ = run("gin", f, "--format", "json", "--seed", "3")
    assert code == 0 and json.loads(out)["ideal"] == ["x^2", "x*y", "x*z^2", "y^4"]


def test_tangent(doc):
    code, out, _ = run("tangent", doc(TWISTED_LEX), "--format", "json", "--syzygies", "taylor")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 18 and data["syzygy_source"] == "taylor"


def test_specialize_and_find_weight(doc):
    src = doc("ring x y z t\nideal x^2, x*y, x*z, x*t^2 - y^3\n", "w0.txt")
    tgt = doc(TWISTED_LEX, "lex.txt")
    code, out, _ = run("find-weight", src, "--target", tgt, "--format", "json")
    assert code == 0
    w = json.loads(out)["weight"]
    code, out, _ = run("specialize", src, "--target", tgt, "--weight", ",".join(map(str, w)))
    assert code == 0
    assert run("specialize", src, "--target", tgt, "--weight", "0,0,0,0")[0] == 1


def test_input_errors_exit_2(doc):
    code, _, err = run("hf", doc("ring x y z t\nideal x^2, x*y +* z\n"))
    assert code == 2 and "line 2" in err
    assert run("hf", doc("ring x y z t\nideal x^2 + y\n"))[0] == 2
    assert run("hf", doc("ring x y z t\nideal x^2 + w^2\n"))[0] == 2
    assert run("hf", "/nonexistent/file.txt")[0] == 2
    assert run("no-such-command")[0] == 2
    assert run("gin", doc(K2), "--trials", "1")[0] == 2
    assert run("hf", doc(K2), "--order", "weight:1,2")[0] == 2
    assert run("verify-paper", "--case", "nope")[0] == 2


def test_lex_segment_rejects_bad_function():
    assert run("lex-segment", "--hf", "0,5,3")[0] == 2


def test_verify_paper_single_case_json_is_deterministic():
    a = run("verify-paper", "--case", "gotzmann-h2", "--format", "json", "--no-timing")
    b = run("verify-paper", "--case", "gotzmann-h2", "--format", "json", "--no-timing")
    assert a[0] == 0 and a[1] == b[1]
    data = json.loads(a[1])
    assert data["case"] == "gotzmann-h2" and data["elapsed_ms"] == 0
    assert all(c["pass"] for c in data["checks"])


def test_verify_paper_text_output():
    code, out, _ = run("verify-paper", "--case", "plane-h1")
    assert code == 0
    assert out.startswith("case plane-h1: PASS")
    assert "tangent:I1" in out


def test_module_entry_point(doc):
    res = subprocess.run([sys.executable, "-m", "sghilb", "tangent", doc(TWISTED_LEX)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "18"


def test_stdin_input(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(TWISTED_LEX))
    assert run("regularity", "-")[1].strip() == "4"


def test_gin_reports_disagreement(doc):
    # seed 1 draws a matrix with a zero entry that is special for this ideal
    code, out, _ = run("gin", doc(K2), "--seed", "1")
    assert code == 1 and "another --seed" in out
