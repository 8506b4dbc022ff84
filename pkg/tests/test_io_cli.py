import json
import shutil
import subprocess
from fractions import Fraction

import pytest

from ninner import io
from ninner.cli import main
from ninner.errors import DimensionMismatchError, ParseError
from ninner.scalar import FLOAT

TRIPLE_FILE = "# x, u, v\n1,0,0\n1,1,1\n2,1,2\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- parsing --------------------------------------------------------------


def test_parse_vectors():
    vs = io.parse_vectors("1, 1/2 ,0.25\n\n# note\n-3,0,1e1\n")
    assert vs[0].coords == (1, Fraction(1, 2), Fraction(1, 4))
    assert vs[1].coords == (-3, 0, 10)
    assert io.parse_vectors("0.1", FLOAT)[0].coords == (0.1,)


def test_parse_vectors_errors():
    with pytest.raises(DimensionMismatchError) as info:
        io.parse_vectors("1,2\n3,4\n5\n")
    assert info.value.line == 3
    with pytest.raises(ParseError, match="line 2"):
        io.parse_vectors("1,2\n3,abc\n")
    with pytest.raises(ParseError):
        io.parse_vectors("# nothing\n")


def test_parse_matrix():
    m = io.parse_matrix("1,2\n3,4\n")
    assert m.rows() == [[1, 2], [3, 4]]
    with pytest.raises(DimensionMismatchError):
        io.parse_matrix("1,2,3\n4,5,6\n")


def test_parse_dataset():
    ds = io.parse_dataset("a,b,c,d\n1,2,3,4\n5,6,7,8\n0,0,0,1\n", x="d", y="a", z="b")
    assert ds.x == (4, 8, 1) and ds.y == (1, 5, 0) and ds.z == (2, 6, 0)
    ds = io.parse_dataset("x,y,z\n1,2,1/3\n0,1,0\n2,2,2\n")
    assert ds.z == (Fraction(1, 3), 0, 2)
    with pytest.raises(ParseError, match="no column"):
        io.parse_dataset("x,y,z\n1,2,3\n", z="w")
    with pytest.raises(ParseError, match="line 3"):
        io.parse_dataset("x,y,z\n1,2,3\n1,2\n")
    with pytest.raises(Exception, match="at least 3"):
        io.parse_dataset("x,y,z\n1,2,3\n")


def test_format_rows_roundtrip():
    rows = [[Fraction(1, 3), Fraction(-2)], [Fraction(0), Fraction(7, 2)]]
    assert io.parse_matrix(io.format_rows(rows)).rows() == rows


# --- product --------------------------------------------------------------


def test_product_iterated(capsys, files):
    f = files("triple.vec", TRIPLE_FILE)
    code, out, _ = run(capsys, "product", "iterated", "--file", f, "--x", "0", "--y", "0", "--cond", "1,2")
    assert code == 0
    assert out.splitlines()[0].endswith(": 9")
    code, out, _ = run(capsys, "product", "iterated", "--file", f, "--x", "0", "--y", "0", "--cond", "1,2", "--swap-roles", "--json")
    data = json.loads(out)
    assert code == 0 and data["value"] == "1" and data["x"] == 2 and data["conditioners"] == [1, 0]


def test_product_standard_json(capsys, files):
    f = files("triple.vec", TRIPLE_FILE)
    code, out, _ = run(capsys, "--json", "product", "standard", "--file", f, "--x", "0", "--y", "0", "--cond", "1,2")
    data = json.loads(out)
    assert code == 0
    assert (data["value"], data["iterated"], data["e_factor"], data["residual"]) == ("1", "9", "9", "0")


def test_product_float(capsys, files):
    f = files("triple.vec", TRIPLE_FILE)
    code, out, _ = run(capsys, "product", "iterated", "--mode", "float", "--json", "--file", f, "--x", "0", "--y", "0", "--cond", "1,2")
    assert code == 0 and json.loads(out)["value"] == 9.0


def test_env_default_mode(capsys, files, monkeypatch):
    monkeypatch.setenv("NINNER_DEFAULT_MODE", "float")
    f = files("triple.vec", TRIPLE_FILE)
    code, out, _ = run(capsys, "product", "iterated", "--json", "--file", f, "--x", "0", "--y", "0", "--cond", "1,2")
    assert json.loads(out)["mode"] == "float"


@pytest.mark.parametrize("text,argv,code", [
    ("1,2\n3\n", ["--x", "0", "--y", "0", "--cond", "1"], 3),
    ("1,2\n3,q\n", ["--x", "0", "--y", "0", "--cond", "1"], 2),
    (TRIPLE_FILE, ["--x", "0", "--y", "0", "--cond", "7"], 2),
    (TRIPLE_FILE, ["--x", "0", "--y", "0"], 2),
])
def test_product_errors(capsys, files, text, argv, code):
    f = files("v.vec", text)
    got, _, err = run(capsys, "product", "iterated", "--file", f, *argv)
    assert got == code
    assert err.startswith("error:")


def test_missing_file(capsys):
    code, _, err = run(capsys, "dodgson", "--file", "/nonexistent/m.txt")
    assert code == 2 and "error" in err


def test_bad_usage_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["product"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "--seed", "-1"])
    assert info.value.code == 2


# --- verify ---------------------------------------------------------------


def test_verify_axioms_reports_i2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "axioms", "--n", "3", "--trials", "5")
    assert code == 0
    assert "XFAIL axioms/I2/iterated" in out
    assert '"value": "9"' in out


def test_verify_dodgson_n0(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dodgson", "--n", "0", "--dim", "6", "--trials", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert [c["name"] for c in data["checks"]] == ["order_3", "order_4", "order_5", "order_6"]


@pytest.mark.parametrize("argv", [["--n", "1"], ["--n", "9"], ["--n", "4", "--dim", "3"], ["--trials", "0"]])
def test_verify_config_errors(capsys, argv):
    code, _, _ = run(capsys, "verify", *argv)
    assert code == 2


def test_verify_float(capsys):
    code, out, _ = run(capsys, "verify", "--mode", "float", "--trials", "5", "--n", "4")
    assert code == 0, out


# --- regress --------------------------------------------------------------


def test_regress_synthetic(capsys, files):
    rows = ["p,q,r"] + [f"{a},{b},{2 * a + 3 * b + 5}" for a, b in [(1, 0), (0, 1), (2, 3), (5, 1), (3, -2)]]
    f = files("d.csv", "\n".join(rows) + "\n")
    code, out, _ = run(capsys, "regress", "--file", f, "--predictors", "p,q", "--response", "r", "--json")
    data = json.loads(out)
    assert code == 0 and data["agree"] and data["max_discrepancy"] == "0"
    for fit in data["fits"].values():
        assert (fit["a"], fit["b"], fit["c"], fit["residual_sum_squares"]) == ("2", "3", "5", "0")
    code, out, _ = run(capsys, "regress", "--file", f)
    assert code == 0 and "a=2  b=3  c=5" in out


def test_regress_collinear(capsys, files):
    f = files("c.csv", "x,y,z\n1,1,2\n2,2,3\n3,3,9\n")
    code, _, err = run(capsys, "regress", "--file", f, "--predictors", "x,y", "--response", "z")
    assert code == 4 and "vanishing" in err
    code, _, _ = run(capsys, "regress", "--mode", "float", "--file", f, "--predictors", "x,y", "--response", "z")
    assert code == 4


def test_regress_bad_column(capsys, files):
    f = files("c.csv", "x,y,z\n1,1,2\n")
    code, _, err = run(capsys, "regress", "--file", f, "--predictors", "x,w", "--response", "z")
    assert code == 2 and "w" in err


# --- dodgson --------------------------------------------------------------


def test_dodgson_command(capsys, files):
    f = files("m.txt", "1,2,3\n4,0,6\n7,8,10\n")
    code, out, _ = run(capsys, "dodgson", "--file", f, "--json")
    data = json.loads(out)
    assert code == 0
    assert data["determinant"] == data["condensation"]["value"] == "52"
    assert data["condensation"]["rotations"] >= 1
    assert data["residual_interior"] == "0"


def test_dodgson_nonsquare_and_small(capsys, files):
    code, _, _ = run(capsys, "dodgson", "--file", files("a.txt", "1,2,3\n4,5,6\n"))
    assert code == 3
    code, _, _ = run(capsys, "dodgson", "--file", files("b.txt", "1,2\n3,4\n"))
    assert code == 2


@pytest.mark.skipif(shutil.which("ninner") is None, reason="console script not installed")
def test_console_script(tmp_path):
    p = tmp_path / "r.vec"
    p.write_text(TRIPLE_FILE)
    res = subprocess.run(["ninner", "product", "iterated", "--file", str(p), "--x", "0", "--y", "0", "--cond", "1,2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and ": 9" in res.stdout
