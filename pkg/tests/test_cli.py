import json

import pandas as pd
import pytest

from stcsolver.cli import EXIT_INVALID, EXIT_LIMIT, EXIT_OK, EXIT_PARSE, main
from stcsolver.instance_io import emit_instance


@pytest.fixture
def write(tmp_path):
    def _write(g, name="graph.txt", problem="stc"):
        path = tmp_path / name
        path.write_text(emit_instance(g, problem))
        return str(path)

    return _write


def run(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_solve_with_a_weak_budget(capsys, write, p3):
    code, record = run(capsys, ["solve", "stc", write(p3), "--k", "1"])
    assert code == EXIT_OK
    assert record["schema_version"] == "1.0"
    assert record["verdict"] == "yes"
    assert record["weak_count"] == 1
    assert record["solver"] == "gallai-vc"


def test_a_no_verdict_still_exits_zero(capsys, write, c4):
    code, record = run(capsys, ["solve", "stc", write(c4), "--k", "0"])
    assert code == EXIT_OK
    assert record["verdict"] == "no"
    assert record["certificate"] is None


def test_solve_optimal_on_the_complement_of_c7(capsys, write, fig3b):
    code, record = run(capsys, ["solve", "stc", write(fig3b), "--optimal", "--trace"])
    assert code == EXIT_OK
    assert record["strong_count"] == 7
    assert record["weak_count"] == 7


def test_solve_cluster_target(capsys, write, c4):
    code, record = run(capsys, ["solve", "cd", write(c4, problem="cd"), "--ell", "2"])
    assert code == EXIT_OK
    assert record["problem"] == "cd"
    assert record["objective"] == 2
    assert record["solver"] == "matching"


def test_auto_dispatch(capsys, write, c4):
    code, record = run(capsys, ["solve", "stc", write(c4), "--optimal", "--auto"])
    assert code == EXIT_OK
    assert record["solver"] == "triangle-free"
    assert record["problem"] == "stc"
    assert (record["parameterization"], record["budget"], record["strong_count"]) == ("k", 2, 2)

    code, record = run(capsys, ["solve", "stc", write(c4), "--ell", "3", "--auto"])
    assert record["verdict"] == "no"


def test_approximation_is_stc_only(write, c4):
    with pytest.raises(SystemExit):
        main(["solve", "cd", write(c4), "--optimal", "--approx"])


@pytest.mark.parametrize("flag", ["--k", "--ell"])
def test_approximation_refuses_a_budget(capsys, write, p3, flag):
    with pytest.raises(SystemExit) as info:
        main(["solve", "stc", write(p3), flag, "0", "--approx"])
    assert info.value.code == EXIT_PARSE
    assert capsys.readouterr().out == ""


def test_approximation_reports_its_weak_count_as_the_budget(capsys, write, p3):
    code, record = run(capsys, ["solve", "stc", write(p3), "--optimal", "--approx"])
    assert code == EXIT_OK
    assert record["solver"] == "gallai-2approx"
    assert record["verdict"] == "yes"
    assert record["parameterization"] == "k"
    assert record["budget"] == record["weak_count"] == 2


def test_budget_flags_must_be_non_negative(write, c4):
    with pytest.raises(SystemExit):
        main(["solve", "stc", write(c4), "--k", "-1"])


def test_bad_input_exits_with_two(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p stc 2 1\ne 1 1\n")
    assert main(["solve", "stc", str(bad), "--k", "1"]) == EXIT_PARSE
    assert main(["recognize", str(tmp_path / "missing.txt")]) == EXIT_PARSE
    assert capsys.readouterr().out == ""


def test_kernelize_once_and_exhaustively(capsys, write, rule1_demo, tmp_path):
    path = write(rule1_demo)
    output = tmp_path / "kernel.txt"
    code, report = run(capsys, ["kernelize", "stc", path, "--k", "1", "--once", "--output", str(output)])
    assert code == EXIT_OK
    assert (report["vertices"], report["reduced_budget"], report["vertex_map"]) == (1, 0, [4])
    assert report["trace"][0]["removed"] == [1, 2, 3]
    assert output.read_text() == "p stc 1 0\n"

    _, report = run(capsys, ["kernelize", "stc", path, "--k", "1"])
    assert report["vertices"] == 0
    assert len(report["trace"]) == 2


def test_kernelize_when_rule1_does_not_apply(capsys, write, c4):
    _, report = run(capsys, ["kernelize", "stc", write(c4), "--k", "1", "--once"])
    assert report["reason"] == "rule 1 does not apply"
    assert report["vertices"] == 4


def test_kernelize_with_rule2(capsys, write, star3):
    _, report = run(capsys, ["kernelize", "stc", write(star3), "--ell", "2"])
    assert report["vertices"] == 3
    assert report["partition_bounds"]["V_M"] == {"size": 2, "bound": 4, "holds": True}


def test_recognize(capsys, write, c4):
    code, report = run(capsys, ["recognize", write(c4)])
    assert code == EXIT_OK
    assert report["patterns"]["c4"] == {"status": "contains", "witness": [1, 2, 3, 4]}
    assert report["patterns"]["k3"]["status"] == "free"
    assert report["dispatch"] == "triangle-free"


def test_compare_on_the_first_worked_example(capsys, write, fig3a):
    code, report = run(capsys, ["compare", write(fig3a)])
    assert code == EXIT_OK
    assert (report["stc"], report["cd"], report["corresponds"]) == (8, 7, False)


def test_compare_beyond_the_oracle_budget(capsys, monkeypatch, write, fig3a):
    monkeypatch.setenv("ORACLE_MAX_EDGES", "5")
    assert main(["compare", write(fig3a)]) == EXIT_LIMIT


@pytest.mark.parametrize("raw", ["abc", "0"])
def test_bad_oracle_override_exits_with_two(capsys, monkeypatch, write, p3, raw):
    monkeypatch.setenv("ORACLE_MAX_EDGES", raw)
    assert main(["compare", write(p3)]) == EXIT_PARSE
    assert capsys.readouterr().out == ""


def test_generate_writes_files_and_a_manifest(capsys, tmp_path):
    out = tmp_path / "corpus"
    code, report = run(capsys, ["generate", "gnp", "--n", "5", "--count", "3", "--seed", "4",
                                "--out", str(out)])
    assert code == EXIT_OK
    assert report["count"] == 3
    manifest = pd.read_csv(out / "manifest.csv")
    assert list(manifest["file"]) == ["gnp_0000.txt", "gnp_0001.txt", "gnp_0002.txt"]
    assert list(manifest["seed"]) == [4, 5, 6]
    assert (out / "gnp_0002.txt").read_text().startswith("p stc 5 ")


def test_generate_the_worked_examples(capsys, tmp_path):
    code, report = run(capsys, ["generate", "fig3", "--out", str(tmp_path)])
    assert report["count"] == 2
    assert (tmp_path / "fig3_a.txt").read_text().startswith("p stc 8 18\n")


def test_verify_accepts_and_rejects(capsys, write, tmp_path, c4):
    path = write(c4)
    _, record = run(capsys, ["solve", "stc", path, "--optimal"])
    result = tmp_path / "result.json"
    result.write_text(json.dumps(record))
    code, report = run(capsys, ["verify", path, str(result)])
    assert (code, report["valid"]) == (EXIT_OK, True)

    record["certificate"] = {"strong": [[1, 2], [2, 3], [3, 4], [1, 4]], "weak": []}
    record["strong_count"] = 4
    result.write_text(json.dumps(record))
    code, report = run(capsys, ["verify", path, str(result)])
    assert (code, report["valid"]) == (EXIT_INVALID, False)
    assert "P3" in report["reason"]


def test_verify_checks_clusters_for_cd(capsys, write, tmp_path, fig3a):
    path = write(fig3a)
    _, record = run(capsys, ["solve", "stc", path, "--k", "10"])
    record["problem"] = "cd"
    result = tmp_path / "result.json"
    result.write_text(json.dumps(record))
    code, report = run(capsys, ["verify", path, str(result)])
    assert (code, report["valid"]) == (EXIT_INVALID, False)


def test_verify_accepts_a_bare_no(capsys, write, tmp_path, c4):
    path = write(c4)
    result = tmp_path / "result.json"
    result.write_text(json.dumps({"problem": "stc", "verdict": "no", "certificate": None}))
    code, report = run(capsys, ["verify", path, str(result)])
    assert (code, report["valid"]) == (EXIT_OK, True)
