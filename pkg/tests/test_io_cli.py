import csv
import io
import json

import pytest

from notpowers import errors
from notpowers.cli import main, parse_checks, report_csv
from notpowers.families import make
from notpowers.io import Config, cayley_text, ingest_group, load_corpus, load_source, parse_group
from notpowers.verifier import run_suite

C4_FILE = """# label: C4
order 4
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
"""


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------- parsing


def test_parse_cayley():
    G = parse_group(C4_FILE)
    assert G.order == 4 and G.label == "C4"
    assert G.same_table(make("cyclic:4"))


def test_parse_permutations():
    G = parse_group("# S3 from a transposition and a 3-cycle\ndegree 3\n1 0 2\n\n1 2 0\n")
    assert G.order == 6 and not G.is_abelian()


@pytest.mark.parametrize("text, line, col", [
    ("order 2\n0 1\n1 x\n", 3, 2),
    ("order 2\n0 1\n1\n", 3, 2),
    ("order 3\n0 1 2\n", 2, None),
    ("size 2\n0 1\n1 0\n", 1, 1),
    ("order -2\n", 1, 2),
    ("degree 3\n0 0 1\n", 2, 1),
    ("degree 3\n0 1\n", 2, 3),
])
def test_parse_errors_locate_problem(text, line, col):
    with pytest.raises(errors.ParseError) as info:
        parse_group(text, "g.txt")
    assert (info.value.line, info.value.col) == (line, col)
    assert "g.txt" in str(info.value)


def test_empty_file():
    with pytest.raises(errors.ParseError):
        parse_group("# nothing\n\n")


def test_validation_errors_pass_through():
    with pytest.raises(errors.NotAssociative):
        parse_group("order 3\n0 1 2\n1 0 0\n2 0 0\n")


@pytest.mark.parametrize("spec", ["cyclic:1", "symmetric:3", "dicyclic:3", "dp:cyclic:2|dihedral:3", "alternating:5"])
def test_export_ingest_round_trip(tmp_path, spec):
    G = make(spec)
    path = tmp_path / "g.cayley"
    path.write_text(cayley_text(G))
    H = ingest_group(path)
    assert H.same_table(G)
    assert H.label == "g.cayley"


def test_load_source(tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text(C4_FILE)
    assert load_source(f"file:{path}").order == 4
    assert load_source(str(path)).order == 4
    assert load_source("family:dihedral:4").order == 8
    with pytest.raises(errors.ParseError):
        load_source("nonsense")


def test_load_corpus(tmp_path):
    (tmp_path / "b.txt").write_text(C4_FILE)
    (tmp_path / "a.txt").write_text("degree 3\n1 2 0\n")
    groups = load_corpus(f"dir:{tmp_path}")
    assert [G.label for G in groups] == ["a.txt", "b.txt"]
    assert len(load_corpus("builtin:6")) == 8
    with pytest.raises(errors.GroupError):
        load_corpus("builtin:0")
    with pytest.raises(errors.ParseError):
        load_corpus("builtin:x")
    with pytest.raises(errors.ParseError):
        load_corpus("zip:foo")


def test_config_validation():
    with pytest.raises(errors.InvalidParameters):
        Config(lattice_cap=0)
    with pytest.raises(errors.InvalidParameters):
        Config(format="xml")


# ---------------------------------------------------------------- CLI


def test_analyze_json(capsys):
    code, out, _ = cli(capsys, "analyze", "family:cyclic:4", "--k", "2")
    assert code == 0
    data = json.loads(out)
    assert (data["order"], data["n_k"], data["k_or_p"]) == (4, 2, 2)
    assert data["theta_histogram"] == {"2": 2}


def test_analyze_prime_profile(capsys):
    code, out, _ = cli(capsys, "analyze", "family:dicyclic:3", "--prime", "3")
    data = json.loads(out)
    assert code == 0 and data["type"] == [3, 6] and data["length"] == 2
    assert [c["size"] for c in data["classes"]] == [2, 2]


def test_analyze_text(capsys):
    code, out, _ = cli(capsys, "analyze", "family:cyclic:4", "--k", "2", "--format", "text")
    assert code == 0 and "n_k = 2" in out


def test_analyze_from_file(capsys, tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text(C4_FILE)
    code, out, _ = cli(capsys, "analyze", f"file:{path}", "--k", "2")
    assert code == 0 and json.loads(out)["group_label"] == "c4.txt"


@pytest.mark.parametrize("argv", [
    ["analyze", "family:cyclic:4"],
    ["analyze", "family:cyclic:4", "--k", "2", "--prime", "2"],
    ["analyze", "family:cyclic:4", "--prime", "4"],
    ["analyze", "family:cyclic:4", "--k", "0"],
    ["analyze", "family:torus:4", "--k", "2"],
    ["verify", "--corpus", "builtin:0"],
    ["verify", "--corpus", "builtin:6", "--checks", "bogus"],
    ["classify", "family:symmetric:3", "--prime", "2"],
    ["classify", "family:symmetric:3", "--prime", "5"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = cli(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_bad_file_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("order 2\n0 1\n1 q\n")
    code, _, err = cli(capsys, "analyze", f"file:{path}", "--k", "2")
    assert code == 2 and "bad.txt:3:2" in err
    code, _, _ = cli(capsys, "analyze", f"file:{tmp_path / 'missing.txt'}", "--k", "2")
    assert code == 2


@pytest.mark.parametrize("spec, p, case", [
    ("metacyclic_frobenius:7,6", 7, 1),
    ("dicyclic:3", 3, 2),
    ("metacyclic_frobenius:7,3", 7, 3),
    ("alternating:4", 3, 4),
])
def test_classify(capsys, spec, p, case):
    code, out, _ = cli(capsys, "classify", f"family:{spec}", "--prime", str(p))
    assert code == 0 and json.loads(out)["case"] == case


def test_verify_formats_agree(capsys):
    code, out, _ = cli(capsys, "verify", "--corpus", "builtin:12", "--checks", "theoremB,new_jumps",
                       "--jobs", "1", "--full")
    assert code == 0
    data = json.loads(out)
    code, out_csv, _ = cli(capsys, "verify", "--corpus", "builtin:12", "--checks", "theoremB,new_jumps",
                           "--jobs", "1", "--full", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    assert len(rows) == len(data["results"])
    for row, res in zip(rows, data["results"]):
        assert row["check_id"] == res["check_id"] and row["status"] == res["status"]
        assert json.loads(row["witness"]) == res["witness"]
    code, out_text, _ = cli(capsys, "verify", "--corpus", "builtin:12", "--checks", "theoremB", "--format", "text")
    assert code == 0 and "theoremB" in out_text


def test_verify_failure_exits_1(capsys, monkeypatch):
    from notpowers import verifier
    monkeypatch.setattr(verifier, "count_non_powers", lambda G, k: 1)
    code, out, _ = cli(capsys, "verify", "--corpus", "builtin:6", "--checks", "theoremB", "--jobs", "1")
    assert code == 1
    assert json.loads(out)["tallies"]["theoremB"]["fail"] > 0


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert main(["analyze", "family:cyclic:4", "--k", "2", "-o", str(target)]) == 0
    assert json.loads(target.read_text())["n_k"] == 2
    assert capsys.readouterr().out == ""


def test_export_cli(capsys, tmp_path):
    code, out, _ = cli(capsys, "export", "family:symmetric:3")
    assert code == 0
    assert parse_group(out).same_table(make("symmetric:3"))


def test_parse_checks():
    assert parse_checks("all")[0] == "divisible"
    assert parse_checks("theoremB, newbound") == ["theoremB", "newbound"]


def test_csv_header_without_results():
    report = run_suite([make("cyclic:2")], ["divisible"], jobs=1)
    assert report_csv(report, full=False) == "check_id,group_label,param,status,witness\n"
