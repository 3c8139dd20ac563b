import json

import pytest

from qforest.cli import main
from qforest.formulas import fano_h


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_count_cycle(capsys):
    rep = report(capsys, "count", "--family", "cycle:4", "--kind", "g", "--q", "2", "--threads", "1")
    assert rep["results"]["count"] == "4"
    assert set(rep) == {"command", "parameters", "results", "algorithm", "shards", "elapsed_ms"}


def test_count_graph_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("3\n1 2\n2 3\n1 3\n")
    rep = report(capsys, "count", "--graph", str(path), "--q", "3^1", "--threads", "1")
    assert rep["results"]["count"] == "18"


def test_threads_and_shards_do_not_change_counts(capsys, monkeypatch):
    args = ["count", "--family", "complete-minus-clique:5,2", "--q", "3"]
    one = report(capsys, *args, "--threads", "1")["results"]["count"]
    two = report(capsys, *args, "--threads", "2")["results"]["count"]
    monkeypatch.setenv("QFOREST_THREADS", "3")
    env = report(capsys, *args)["results"]["count"]
    parts = [int(report(capsys, *args, "--threads", "1", "--shard", f"{i}/3")["results"]["count"])
             for i in range(3)]
    assert one == two == env == str(sum(parts))


def test_support_fano(capsys):
    rep = report(capsys, "support", "--fano", "--q", "2", "--algo", "span-dp", "--threads", "1")
    assert int(rep["results"]["count"]) == fano_h(2)


def test_formula(capsys):
    rep = report(capsys, "formula", "--name", "g-complete", "--n", "4", "--q", "2")
    assert rep["results"]["value"] == "28"


def test_formula_boundary_exit_code(capsys):
    code, _, err = run(capsys, "formula", "--name", "conjecture-knk", "--n", "5", "--k", "4",
                       "--q", "2", "--strict")
    assert code == 4 and "boundary-ambiguous" in err


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "count", "--family", "complete:8", "--q", "5", "--threads", "1")
    assert code == 3 and json.loads(err)["estimate"]


def test_usage_errors(capsys):
    assert run(capsys, "count", "--q", "2")[0] == 2
    assert run(capsys, "count", "--family", "cycle:4", "--q", "6")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
    capsys.readouterr()


def test_csv_profile(capsys):
    code, out, _ = run(capsys, "sym-census", "--n", "2", "--q", "2", "--csv", "--threads", "1")
    assert code == 0 and out == "r,count\n0,1\n1,3\n2,4\n"


def test_rank_profile_and_zeroset(capsys):
    rep = report(capsys, "rank-profile", "--family", "complete-minus-clique:4,3", "--q", "2", "--threads", "1")
    assert rep["results"]["profile"] == ["1", "3", "3", "1"]
    rep = report(capsys, "zeroset", "--family", "cycle:4", "--zero-set", "1", "--q", "3", "--threads", "1")
    assert rep["results"]["count"] == "8"


def test_matroid(capsys):
    rep = report(capsys, "matroid", "--matroid", "u24", "--q", "9", "--threads", "1")
    assert rep["results"]["count"] == "5832"


def test_fit_modes(tmp_path, capsys):
    path = tmp_path / "v.csv"
    path.write_text("q,count\n" + "".join(f"{q},{q * (q - 1) * (q * q - 2)}\n" for q in (2, 3, 4, 5, 7, 8)))
    rep = report(capsys, "fit", "--values", str(path), "--mode", "poly", "--degree-bound", "4")
    assert rep["results"]["verdict"] == "polynomial"
    assert rep["results"]["integer_coefficients"] is True
    code, out, _ = run(capsys, "fit", "--values", str(path), "--mode", "interpolate", "--csv")
    assert out.splitlines()[0] == "degree,coefficient" and out.splitlines()[-1] == "4,1"


def test_bases_and_isotropic(tmp_path, capsys):
    path = tmp_path / "p.txt"
    path.write_text("3\n1 3\n2 3\n")
    assert report(capsys, "bases", "--graph", str(path), "--q", "2")["results"]["count"] == "2"
    assert report(capsys, "isotropic", "--n", "2", "--q", "2", "--form", "minus")["results"]["count"] == "4"


def test_verify_quick_subset(capsys):
    rep = report(capsys, "verify", "--only", "6,13", "--seed", "5", "--threads", "1")
    assert rep["results"]["passed"] is True
    assert [c["criterion"] for c in rep["results"]["criteria"]] == ["6", "13"]
