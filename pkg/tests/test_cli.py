"""CLI surface: exit codes, JSON output, the decision pipeline."""
import json

import pytest

from crepant_lab import cli
from crepant_lab.grouptype import parse_type


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    payload = json.loads(out)
    assert payload["schema"] == "crepant-lab/1"
    return payload


def test_exit_code_parse_error(capsys):
    code, _, err = run(capsys, "analyze", "1/12(1,2")
    assert code == 64
    assert "error" in err
    code, _, _ = run(capsys, "analyze", "garbage")
    assert code == 64


def test_exit_code_not_gorenstein(capsys):
    code, _, err = run(capsys, "analyze", "1/12(1,2,3,5)")
    assert code == 65
    assert "Gorenstein" in err


def test_exit_code_budget(capsys):
    code, _, err = run(capsys, "triangulate", "1/12(1,2,3,6)", "--budget-nodes", "1")
    assert code == 70
    assert "budget" in err


def test_json_deterministic(capsys):
    a = run_json(capsys, "analyze", "1/12(1,2,3,6)")
    out1 = capsys.readouterr()
    b = run_json(capsys, "analyze", "1/12(1,2,3,6)")
    assert a == b
    # byte-identical serialization
    s1 = json.dumps(a, sort_keys=True)
    s2 = json.dumps(b, sort_keys=True)
    assert s1 == s2


def test_analyze_exam12(capsys):
    payload = run_json(capsys, "analyze", "1/12(1,2,3,6)")
    assert payload["structure"]["age_histogram"] == [5, 5, 1]
    assert len(payload["elements"]) == 11


def test_count_exam12(capsys):
    payload = run_json(capsys, "count", "1/12(1,2,3,6)")
    assert payload["hstar"] == [1, 5, 5, 1]
    assert payload["normalized_volume"] == 12
    assert payload["values"]["1"] == 9


def test_count_mp_closed_form(capsys):
    payload = run_json(capsys, "count", "1/12(2,2,3,5)")
    assert payload["mp_count"] == 7


def test_hilbert_subcommand(capsys):
    payload = run_json(capsys, "hilbert", "1/7(1,1,2,3)")
    assert len(payload["elements"]) == 8
    assert payload["first_criterion"] is False
    assert payload["witnesses"]
    payload = run_json(capsys, "hilbert", "1/12(1,2,3,6)")
    assert payload["first_criterion"] is True


def test_criteria_subcommand(capsys):
    payload = run_json(capsys, "criteria", "1/12(2,2,3,5)")
    rep = payload["report"]
    assert rep["point_count"] == 7
    assert rep["bound"] == 10
    assert rep["passed"] is False


def test_triangulate_census(capsys):
    payload = run_json(capsys, "triangulate", "1/12(1,2,3,6)")
    assert payload["count"] == 13
    basics = [t for t in payload["triangulations"] if t["basic"]]
    assert len(basics) == 5
    for t in basics:
        assert t["h_vector"] == [1, 5, 5, 1, 0]


def test_triangulate_basic_filter_and_dot(capsys, tmp_path):
    dot = tmp_path / "flips.dot"
    payload = run_json(
        capsys, "triangulate", "1/12(1,2,3,6)", "--filter", "basic", "--dot", str(dot)
    )
    assert payload["count"] == 5
    text = dot.read_text()
    assert text.startswith("graph flips {")
    assert "--" in text


def test_series_subcommand(capsys):
    payload = run_json(capsys, "series", "twoparam", "1/11(1,1,3,6)")
    assert payload["match"]["verdict"] == "resolvable"
    assert payload["match"]["trace"]["cf"] == [2, 5]
    payload = run_json(capsys, "series", "gp", "1/15(1,2,4,8)")
    assert payload["match"]["kind"] == "gp"
    payload = run_json(capsys, "series", "oneparam", "1/11(1,1,1,8)")
    assert payload["match"]["verdict"] == "not_resolvable"


def pipeline_report(capsys, type_str, *extra):
    payload = run_json(capsys, "pipeline", type_str, *extra)
    return payload["report"]


def test_pipeline_low_dimension(capsys):
    rep = pipeline_report(capsys, "1/5(1,1,3)")
    assert rep["verdict"] == "RESOLVABLE"
    assert rep["steps"][0]["step"] == 0


def test_pipeline_order_bound_rejects(capsys):
    rep = pipeline_report(capsys, "1/12(2,2,3,5)")
    assert rep["verdict"] == "NOT_RESOLVABLE"
    assert rep["steps"][-1]["step"] == 3


def test_pipeline_series_rejects(capsys):
    rep = pipeline_report(capsys, "1/7(1,1,2,3)")
    assert rep["verdict"] == "NOT_RESOLVABLE"
    last = rep["steps"][-1]
    assert last["step"] == 2
    assert last["match"]["kind"] == "two_param"


def test_pipeline_series_accepts(capsys):
    rep = pipeline_report(capsys, "1/11(1,1,3,6)")
    assert rep["verdict"] == "RESOLVABLE"
    assert rep["steps"][-1]["step"] == 2


def test_pipeline_census_decides_exam12(capsys):
    rep = pipeline_report(capsys, "1/12(1,2,3,6)")
    assert rep["verdict"] == "RESOLVABLE"
    last = rep["steps"][-1]
    assert last["step"] == 5
    w = last["witness"]
    assert w["basic"] and len(w["simplices"]) == 12
    # the witness really is a unimodular triangulation of the configuration
    from crepant_lab import triangulate as tr

    cfg = tr.config_from_type(parse_type("1/12(1,2,3,6)"))
    t = tr.Triangulation.of(tuple(tuple(s) for s in w["simplices"]))
    assert tr.is_valid(cfg, t, expected_volume=12)
    assert tr.basicness(cfg, t)[0]


def test_pipeline_msc_reduction(capsys):
    # a zero weight is a trivially split coordinate; the core decides
    rep = pipeline_report(capsys, "1/12(0,1,2,3,6)")
    assert rep["reduced"] == "1/12(1,2,3,6)"
    assert rep["verdict"] == "RESOLVABLE"


def test_pipeline_hypersurface(capsys):
    rep = pipeline_report(capsys, "1/2(1,1,0,0)x1/2(0,1,1,0)x1/2(0,0,1,1)")
    assert rep["verdict"] == "RESOLVABLE"
    assert rep["steps"][-1]["step"] == 1


def test_pipeline_undecided_on_tiny_node_budget(capsys):
    payload = run_json(
        capsys, "pipeline", "1/12(1,2,3,6)", "--budget-nodes", "2"
    )
    rep = payload["report"]
    assert rep["verdict"] in ("UNDECIDED", "RESOLVABLE")
    if rep["verdict"] == "UNDECIDED":
        assert rep["steps"][-1]["complete"] is False


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
