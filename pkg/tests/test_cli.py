import pytest

from nilcohom import catalog, cli
from nilcohom.cohomology import CrossCheck


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_preset(capsys):
    code, out, _ = run(capsys, "validate", "--preset", "iwasawa")
    assert code == 0
    assert out.splitlines()[0] == "valid; 2-step nilpotent; holomorphically parallelizable"


def test_validate_invalid_file(tmp_path, capsys):
    f = tmp_path / "bad.eq"
    f.write_text("ndim 3\nd f1 = 0\nd f2 = (1,0) f3^F1\nd f3 = (1,0) f1^f2\n")
    code, out, _ = run(capsys, "validate", "--file", str(f))
    assert code == 1
    assert "d^2" in out


def test_malformed_file_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.eq"
    f.write_text("ndim 3\nd f1 = 0\nd f2 = 0\nd f3 = (-1,0 f1^f2\n")
    code, _, err = run(capsys, "table", "--file", str(f))
    assert code == 2
    assert "line 4" in err


def test_bad_arguments(capsys):
    assert run(capsys, "table", "--preset", "nope")[0] == 2
    assert run(capsys, "table")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "harmonic", "--preset", "iwasawa", "--p", "5", "--q", "0")[0] == 2


def test_table_derham(capsys):
    code, out, _ = run(capsys, "table", "--preset", "iwasawa", "--which", "derham")
    assert code == 0
    assert [int(x) for x in out.splitlines()[-1].split("|")[1:]] == [1, 4, 8, 10, 8, 4, 1]


def test_table_csv_roundtrip(capsys):
    code, out, _ = run(capsys, "table", "--preset", "class-iii-b", "--format", "csv")
    assert code == 0
    got = catalog.read_expected(out)
    exp = catalog.get("class-iii-b").expected
    for th, tab in exp.items():
        for key, d in tab.items():
            assert got[th][key] == d


def test_table_mismatch_exit(monkeypatch, capsys):
    monkeypatch.setattr(cli, "cross_check",
                        lambda pres, theories=None: CrossCheck(mismatches=[("BC", (1, 1), 4, 5)]))
    code, _, err = run(capsys, "table", "--preset", "iwasawa")
    assert code == 3
    assert "mismatch" in err


def test_table_deterministic(capsys):
    a = run(capsys, "table", "--preset", "class-ii-b")[1]
    b = run(capsys, "table", "--preset", "class-ii-b")[1]
    assert a == b


def test_harmonic(capsys):
    code, out, _ = run(capsys, "harmonic", "--preset", "iwasawa", "--p", "1", "--q", "0", "--which", "bc")
    assert code == 0 and out.split() == ["f1", "f2"]
    code, out, _ = run(capsys, "harmonic", "--preset", "iwasawa", "--p", "3", "--q", "0")
    assert out.split() == ["f1^f2^f3"]


def test_check_all(capsys):
    code, out, _ = run(capsys, "check", "--preset", "iwasawa")
    assert code == 0
    assert "ddbar-lemma: NOT satisfied (first failure at (1,0))" in out
    assert "FAIL" not in out.replace("NOT satisfied", "")


def test_check_torus_lemma(capsys):
    code, out, _ = run(capsys, "check", "--preset", "torus3", "--lemma")
    assert code == 0 and out.strip() == "ddbar-lemma: satisfied at all (p,q)"


def test_check_fails_for_nonunimodular(tmp_path, capsys):
    f = tmp_path / "s.eq"
    f.write_text("ndim 3\nd f1 = 0\nd f2 = 0\nd f3 = (1,0) f1^f3\n")
    code, out, _ = run(capsys, "check", "--file", str(f), "--dualities")
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize("sigma, first", [
    ("(-1,0)(0,0)(0,0)(0,0)(0,0)", "(i)"),
    ("(-1,0)(1,0)(0,0)(0,0)(0,0)", "(ii.a)"),
    ("(-1,0)(0,0)(1,0)(0,2)(0,0)", "(iii.b)"),
])
def test_classify(capsys, sigma, first):
    code, out, _ = run(capsys, "classify", "--sigma", sigma)
    assert code == 0 and out.split(";")[0] == first


def test_classify_bad_sigma(capsys):
    assert run(capsys, "classify", "--sigma", "(1,0)")[0] == 2


def test_diagram(capsys):
    code, out, _ = run(capsys, "diagram", "--preset", "iwasawa")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("cluster_") == 16
    assert 'label="del"' in out and 'label="delbar"' in out
