import json

import pytest

from stcsolver.errors import InstanceParseError, LabelingContractError
from stcsolver.gallai import solve_stc_k
from stcsolver.graph_core import Graph
from stcsolver.instance_io import (
    ResultRecord,
    certificate_labeling,
    emit_instance,
    parse_instance,
    read_instance,
)
from stcsolver.results import minimize_budget

P3_TEXT = "c a path\np stc 3 2\ne 1 2\ne 2 3\n"


def test_parse_p3():
    instance = parse_instance(P3_TEXT)
    assert instance.problem == "stc"
    assert instance.graph == Graph(3, [(0, 1), (1, 2)])


def test_edge_order_follows_the_file():
    instance = parse_instance("p cd 3 2\ne 3 2\n\ne 1 2\n")
    assert instance.problem == "cd"
    assert instance.graph.edges == ((1, 2), (0, 1))


@pytest.mark.parametrize(
    "text, line",
    [
        ("p stc 3 1\ne 1 1\n", 2),
        ("p stc 3 1\ne 1 4\n", 2),
        ("p stc 3 1\ne 0 1\n", 2),
        ("p stc 3 2\ne 1 2\ne 2 1\n", 3),
        ("p stc 3 1\ne 1 x\n", 2),
        ("p stc 3 1\ne 1\n", 2),
        ("e 1 2\np stc 3 1\n", 1),
        ("p stc 3 1\np stc 3 1\n", 2),
        ("p max 3 1\n", 1),
        ("p stc -3 1\n", 1),
        ("p stc 3 1\nx 1 2\n", 2),
        ("p stc 3 2\ne 1 2\n", 2),
        ("c nothing here\n", 1),
    ],
)
def test_malformed_instances_name_the_line(text, line):
    with pytest.raises(InstanceParseError) as info:
        parse_instance(text)
    assert info.value.line_number == line
    assert str(info.value).startswith(f"line {line}:")


def test_emit_round_trips_the_example(tmp_path):
    g = parse_instance(P3_TEXT).graph
    text = emit_instance(g, comments=["a path"])
    assert text == P3_TEXT
    path = tmp_path / "p3.txt"
    path.write_text(text)
    assert read_instance(path).graph == g


def test_emit_rejects_unknown_problems(p3):
    with pytest.raises(ValueError):
        emit_instance(p3, "max-cut")


def test_result_record_for_a_yes(p3):
    result = solve_stc_k(p3, 1)
    record = result.to_record(p3).to_dict()
    assert list(record)[0] == "schema_version"
    assert record["schema_version"] == "1.0"
    assert record["verdict"] == "yes"
    assert record["weak_count"] == 1
    assert record["strong_count"] == 1
    assert sorted(record["certificate"]["strong"] + record["certificate"]["weak"]) == [[1, 2], [2, 3]]
    assert set(record["stats"]) == {"nodes_explored", "rules_fired"}
    assert set(record["timing"]) == {"wall_time"}


def test_result_record_for_a_no(c4):
    record = ResultRecord.from_result(solve_stc_k(c4, 1), c4)
    assert record.verdict == "no"
    assert record.certificate is None
    assert record.objective is None
    assert json.loads(record.to_json())["certificate"] is None


def test_trace_can_be_left_out(rule1_demo):
    result = solve_stc_k(rule1_demo, 1)
    assert result.to_record(rule1_demo).trace[0] == {
        "rule": "rule1",
        "removed": [1, 2, 3],
        "budget_delta": 1,
    }
    assert result.to_record(rule1_demo, include_trace=False).trace == []


def test_certificate_labeling_rebuilds_the_labeling(c4):
    result = minimize_budget(solve_stc_k, c4)
    record = json.loads(result.to_record(c4).to_json())
    assert certificate_labeling(c4, record) == result.certificate
    assert certificate_labeling(c4, {"certificate": None}) is None


def test_certificate_labeling_rejects_bad_pairs(p3):
    with pytest.raises(LabelingContractError):
        certificate_labeling(p3, {"certificate": {"strong": [[1, 3]], "weak": [[1, 2]]}})
    with pytest.raises(LabelingContractError):
        certificate_labeling(p3, {"certificate": {"strong": [[1, 2]], "weak": [[1, 2]]}})
    with pytest.raises(LabelingContractError):
        certificate_labeling(p3, {"certificate": {"strong": [[1, 2]], "weak": []}})
