import json

import pytest

from findim.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pd_s1(capsys):
    code, out, _ = run(capsys, "pd", "--module", "S1", "--algebra", "A2", "--cutoff", "20")
    assert code == 0
    assert out.splitlines()[1] == "pd finite 1"


def test_header(capsys):
    _, out, _ = run(capsys, "gldim", "--algebra", "fixture:LOOP2", "--seed", "42", "--cutoff", "7")
    head = out.splitlines()[0]
    assert "0.1.0" in head and "p=65521" in head and "seed=42" in head and "cutoff=7" in head


def test_bound_33(capsys):
    code, out, _ = run(capsys, "bound", "--theorem", "3.3", "--glue", "GLUE2")
    assert code == 0 and out.rstrip().endswith("bound 3 certified")


def test_hypothesis_failure_exit(tmp_path, capsys):
    doc = tmp_path / "d.txt"
    doc.write_text("glue H from LOOP3 { blocks {1}; }\n")
    # rad B = rad A here, so rad B is an ideal; fail via an incomplete user list instead
    doc.write_text("list L over LOOP3 { S1 }\n")
    code, out, _ = run(capsys, "bound", "--theorem", "2.5", "--algebra", "LOOP3", "--list", "L", "--input", str(doc), "--samples", "20")
    assert code == 1 and "fail" in out


def test_parse_error_exit(tmp_path, capsys):
    doc = tmp_path / "bad.txt"
    doc.write_text("algebra X {\n  field 7;\n  vertices 1 2;\n  arrows a: 1 -> 3;\n  nilpotency 2;\n}\n")
    code, _, err = run(capsys, "check", "--algebra", "X", "--input", str(doc))
    assert code == 2 and "4:" in err


def test_unknown_name_exit(capsys):
    code, _, err = run(capsys, "gldim", "--algebra", "NOPE")
    assert code == 2 and "NOPE" in err


def test_json(capsys):
    code, out, _ = run(capsys, "psi", "--algebra", "TWOSOURCE", "--module", "S1", "--module", "S2", "--json")
    data = json.loads(out)
    assert data["result"]["psi"] == "1 certified" and data["seed"] == 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.txt"
    run(capsys, "glue", "--glue", "GSQUARE", "--out", str(target))
    assert "dim 6" in target.read_text()


def test_determinism(capsys):
    args = ("findim-search", "--algebra", "SQUARE", "--samples", "15", "--seed", "123")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


@pytest.mark.parametrize(
    "args",
    [
        ("check", "--algebra", "GSQUARE"),
        ("resolve", "--algebra", "SQUARE", "--module", "S1"),
        ("phi", "--algebra", "LOOP3", "--module", "S1"),
        ("radical-conditions", "--glue", "GLUE2"),
        ("lemma23-check", "--glue", "GLUE2", "--module", "S1", "--i", "3"),
        ("explore", "--class", "genDA", "--algebra", "LOOP3", "--samples", "10"),
        ("end-gldim", "--algebra", "A2"),
        ("bound", "--theorem", "3.1", "--chain", "GLUE2CHAIN"),
        ("bound", "--theorem", "3.5", "--chain", "GLUE2CHAIN"),
    ],
)
def test_commands_succeed(capsys, args):
    code, out, err = run(capsys, *args)
    assert code == 0, err
    assert out.startswith("# findim")


def test_module_from_file(tmp_path, capsys):
    doc = tmp_path / "m.txt"
    doc.write_text("module M over A2 { dims 1=1 2=1; arrow a = [[1]]; }\n")
    code, out, _ = run(capsys, "pd", "--algebra", "A2", "--module", "M", "--input", str(doc))
    assert code == 0 and "pd finite 0" in out


def test_prime_override(capsys):
    _, out, _ = run(capsys, "gldim", "--algebra", "SQUARE", "--prime", "101")
    assert "p=101" in out and "gldim finite 2" in out
