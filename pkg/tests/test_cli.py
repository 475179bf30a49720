import json

import pytest
from click.testing import CliRunner

from gridpmu import cli


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args, code=0):
    result = runner.invoke(cli.main, args, catch_exceptions=False)
    assert result.exit_code == code, result.output
    return result


def test_caseio_dump(runner):
    result = invoke(runner, ["caseio", "dump", "case9"])
    data = json.loads(result.output)
    assert data["n"] == 9
    assert data["slack_bus"] == 1


def test_unknown_case(runner):
    result = runner.invoke(cli.main, ["caseio", "dump", "nosuch"])
    assert result.exit_code != 0
    assert "cannot find case" in result.output


def test_case_dir_and_path(runner, tmp_path, case9):
    from gridpmu import caseio
    (tmp_path / "mine.m").write_text(caseio.serialize_case(case9))
    result = invoke(runner, ["caseio", "dump", "mine",
                             "--case-dir", str(tmp_path)])
    assert json.loads(result.output)["n"] == 9
    result = invoke(runner, ["caseio", "dump", str(tmp_path / "mine.m")])
    assert json.loads(result.output)["n"] == 9


def test_netmat_ybus_csv(runner):
    result = invoke(runner, ["netmat", "ybus", "case9"])
    lines = result.output.strip().splitlines()
    assert lines[0] == "bus,1,2,3,4,5,6,7,8,9"
    assert len(lines) == 10


def test_netmat_jacobian(runner):
    result = invoke(runner, ["netmat", "jacobian", "case9"])
    assert len(result.output.strip().splitlines()) == 10


def test_resistance_default_subcommand(runner):
    explicit = invoke(runner, ["resistance", "matrix", "case9"])
    implicit = invoke(runner, ["resistance", "case9"])
    assert implicit.output == explicit.output


def test_resistance_check(runner):
    result = invoke(runner, ["resistance", "check", "case9"])
    data = json.loads(result.output)
    assert data["passed"] is True
    assert data["max_triangle_violation"] <= 1e-9


def test_resistance_ground_option(runner):
    a = invoke(runner, ["resistance", "case9"])
    b = invoke(runner, ["resistance", "case9", "--ground", "5"])
    # distances are ground-invariant up to rounding in the 12th digit
    assert a.output.splitlines()[0] == b.output.splitlines()[0]


def test_eadj_csv_and_dot(runner):
    csv = invoke(runner, ["eadj", "case9"])
    assert csv.output.splitlines()[0] == "bus,1,2,3,4,5,6,7,8,9"
    dot = invoke(runner, ["eadj", "case9", "--format", "dot"])
    assert dot.output.startswith("graph electrical {")


def test_eadj_edges_option(runner):
    dot = invoke(runner, ["eadj", "case9", "--edges", "3",
                          "--format", "dot"])
    assert dot.output.count(" -- ") == 3


def test_place_topo(runner):
    result = invoke(runner, ["place", "case9"])
    data = json.loads(result.output)
    assert data["count"] == 3
    assert data["status"] == "optimal"
    assert len(data["pmu_buses"]) == 3


def test_place_elec(runner):
    result = invoke(runner, ["place", "case9", "--structure", "elec"])
    assert json.loads(result.output)["structure"] == "elec"


def test_place_budget_exit_code(runner):
    result = runner.invoke(cli.main,
                           ["place", "case118", "--budget", "1e-6"])
    assert result.exit_code == cli.EXIT_UNPROVEN
    data = json.loads(result.output)
    assert data["status"] == "feasible-upper-bound"


def test_structural_analyze(runner):
    result = invoke(runner, ["structural", "case9"])
    data = json.loads(result.output)
    assert data["edge_count"] == 9
    assert data["heuristic_count"] == 3


def test_structural_compare(runner):
    result = invoke(runner, ["structural", "compare", "case14"])
    data = json.loads(result.output)
    assert data["consistent"] is True
    assert data["ilp_count"] == data["heuristic_count"]


def test_table_text_and_json(runner):
    text = invoke(runner, ["table", "case9", "case14"])
    assert "case9" in text.output
    assert "diff against published" in text.output
    js = invoke(runner, ["table", "case9", "--format", "json"])
    rows = json.loads(js.output)
    assert rows[0]["topo_count"] == rows[0]["published_topo"] == 3


def test_export_lambda(runner):
    result = invoke(runner, ["export", "case9", "--which", "lambda-elec"])
    lines = result.output.strip().splitlines()
    assert lines[0] == "bus,lambda,is_argmin,x"
    assert len(lines) == 10


def test_export_graph(runner):
    result = invoke(runner, ["export", "case9", "--which", "graph-topo"])
    assert result.output.startswith("graph topological {")


def test_out_option_writes_file(runner, tmp_path):
    target = tmp_path / "e.csv"
    invoke(runner, ["eadj", "case9", "--out", str(target)])
    assert target.read_text().startswith("bus,1,")


def test_pipeline_deterministic(runner):
    args_sets = [
        ["table", "case9", "case14", "case30"],
        ["resistance", "case30"],
        ["place", "case30", "--structure", "elec"],
        ["export", "case14", "--which", "lambda-elec"],
    ]
    for args in args_sets:
        first = invoke(runner, args)
        second = invoke(runner, args)
        assert first.output == second.output
