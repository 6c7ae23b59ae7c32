import json

import pytest
from hypothesis import given, settings, strategies as st

from gkzjump import cli

M0134 = '{"rows": [[1,1,1,1],[0,1,3,4]]}'


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_analyze_0134(capsys):
    code, rep = run(capsys, "analyze", M0134)
    assert code == 0
    assert rep["schema"] == "gkzjump/v1"
    assert rep["volume"] == 4 and rep["cohen_macaulay"] is False
    assert rep["projective_dimension"] == 3
    assert rep["exceptional_strata"] == [{"shift": [1, 2], "face": [], "face_dim": 0, "indices": [1]}]
    assert rep["crosscheck"]["mismatches"] == []
    assert list(rep) == ["schema", "command", "matrix", "pointedness_certificate", "faces", "toric_ideal",
                         "volume", "resolution", "projective_dimension", "cohen_macaulay",
                         "exceptional_strata", "crosscheck"]


def test_analyze_identity(capsys):
    code, rep = run(capsys, "analyze", "[[1,0],[0,1]]")
    assert code == 0 and rep["cohen_macaulay"] and rep["exceptional_strata"] == []


def test_analyze_not_pointed(capsys):
    code, rep = run(capsys, "analyze", "[[1,-1]]")
    assert code == 2 and rep["error"] == "NotPointed" and rep["witness"] == [1, 1]


def test_not_full_rank_and_garbage(capsys):
    assert run(capsys, "faces", "[[1,2],[2,4]]")[0] == 2
    assert run(capsys, "faces", '{"cols": 3}')[0] == 2


def test_csv_and_file_input(capsys, tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("1,1,1,1\n0,1,3,4\n")
    code, rep = run(capsys, "volume", str(p))
    assert code == 0 and rep["lex"] == rep["reverse"] == 4 and rep["hilbert_multiplicity"] == 4
    q = tmp_path / "a.json"
    q.write_text(M0134)
    assert run(capsys, "volume", str(q))[1] == rep


def test_is_jumping(capsys):
    code, rep = run(capsys, "is-jumping", M0134, "--beta", "1,2")
    assert code == 0 and rep["jumping"] and rep["generic_rank"] == 4
    assert rep["witness"]["shift"] == [1, 2]
    assert not run(capsys, "is-jumping", M0134, "--beta", "0,0")[1]["jumping"]
    assert not run(capsys, "is-jumping", "[[1,0],[0,1]]", "--beta", "5,7")[1]["jumping"]


def test_is_jumping_bad_dimension(capsys):
    code, rep = run(capsys, "is-jumping", M0134, "--beta", "1,2,3")
    assert code == 3 and rep["error"] == "InvalidQuery"


def test_crosscheck(capsys):
    code, rep = run(capsys, "crosscheck", M0134, "--box", "8")
    assert code == 0 and rep["mismatches"] == [] and rep["degrees_checked"] == 289
    assert rep["nonzero"] == [{"degree": [-1, -2], "index": 1, "dim": 1}]
    code, rep = run(capsys, "crosscheck", M0134, "--box", "0")
    assert code == 0 and rep["degrees_checked"] == 1
    assert run(capsys, "crosscheck", M0134, "--box", "-1")[0] == 3


def test_crosscheck_exit_code_on_mismatch(capsys, monkeypatch):
    from gkzjump import localcoh as lc
    monkeypatch.setattr(lc.ExtData, "dual_degree", lambda self, a: tuple(-x for x in a))
    code, rep = run(capsys, "crosscheck", "[[1,1,1,1],[0,1,3,4]]", "--box", "2")
    assert code == 4 and rep["mismatches"]


def test_other_subcommands(capsys):
    assert run(capsys, "faces", M0134)[1]["count"] == 4
    assert len(run(capsys, "toric-ideal", M0134)[1]["generators"]) == 4
    assert run(capsys, "resolution", M0134)[1]["ranks"] == [1, 4, 4, 1]
    ext = run(capsys, "ext", M0134, "--j", "3")[1]
    assert ext["quasidegrees"] == [{"shift": [5, 10], "face": [], "face_dim": 0}]
    assert run(capsys, "exceptional", M0134)[1]["strata"][0]["shift"] == [1, 2]
    lcoh = run(capsys, "localcoh", M0134, "--alpha=-1,-2")[1]
    assert lcoh["combinatorial"] == lcoh["homological"] == [0, 1, 0]
    coh = run(capsys, "coherence", M0134)[1]
    assert all(f["finite"] for f in coh["faces"])


def test_stats_go_to_stderr(capsys):
    code = cli.main(["--stats", "volume", M0134])
    captured = capsys.readouterr()
    assert code == 0
    json.loads(captured.out)
    assert "finished" in captured.err


def test_corpus_is_deterministic():
    params = cli.CorpusSpec(seed=1, d_min=2, d_max=2, n_max=4, bound=4, count=25)
    a = cli.generate_corpus(params)
    assert len(a) == 25 and a == cli.generate_corpus(params)
    assert all(len(m) == 2 and len(m[0]) <= 4 for m in a)


def test_corpus_empty(tmp_path):
    rep = cli.run_corpus(cli.CorpusSpec(count=0), str(tmp_path))
    assert rep["count"] == 0 and rep["entries"] == []


def test_corpus_bound_one_is_cohen_macaulay(tmp_path):
    params = cli.CorpusSpec(seed=3, d_min=2, d_max=2, n_max=4, bound=1, count=8)
    rep = cli.run_corpus(params, str(tmp_path))
    assert all(e["exceptional_strata"] == [] and e["cohen_macaulay"] for e in rep["entries"])
    assert all(rep["all_checks"].values())
    assert (tmp_path / "m000.json").exists() and (tmp_path / "report.json").exists()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=3))
def test_parse_matrix_formats_agree(rows):
    as_json = json.dumps({"rows": rows})
    as_list = json.dumps(rows)
    as_csv = "\n".join(",".join(map(str, r)) for r in rows)
    assert cli.parse_matrix(as_json) == cli.parse_matrix(as_list) == cli.parse_matrix(as_csv) == rows
