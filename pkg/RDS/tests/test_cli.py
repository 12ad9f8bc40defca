"""Tests for the command-line interface: output formats and exit codes."""

import json

import pytest

from RDS.src.cli import main
from RDS.src.errors import EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE

pytestmark = pytest.mark.cli


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# =============================================================================
# spectrum
# =============================================================================


def test_spectrum_of_edge_list(capsys, data_dir):
    code, out, _ = run(capsys, "spectrum", "--graph", str(data_dir / "graphs" / "k4.edges"), "--alpha", "0.5", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    eigenvalues = data["spectra"][0]["spectrum"]["eigenvalues"]
    assert sum(e["multiplicity"] for e in eigenvalues) == 4
    assert eigenvalues[0]["value"] == pytest.approx(3.0)


def test_spectrum_of_group_for_each_alpha(capsys):
    code, out, _ = run(capsys, "spectrum", "--group", "cyclic:12", "--alpha", "0,0.5,1", "--format", "json")
    assert code == EXIT_OK
    spectra = json.loads(out)["spectra"]
    assert [s["alpha"] for s in spectra] == [0.0, 0.5, 1.0]
    assert all(sum(e["multiplicity"] for e in s["spectrum"]["eigenvalues"]) == 12 for s in spectra)


def test_spectrum_csv_schema(capsys, data_dir):
    code, out, _ = run(capsys, "spectrum", "--graph", str(data_dir / "graphs" / "petersen.edges"), "--alpha", "1", "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "alpha,value,multiplicity,source"
    assert lines[1].split(",")[2:] == ["10", "oracle"]


def test_spectrum_of_disconnected_graph_exits_3(capsys, data_dir):
    code, _, err = run(capsys, "spectrum", "--graph", str(data_dir / "graphs" / "disconnected.edges"))
    assert code == EXIT_PRECONDITION
    assert "[ERROR] DisconnectedGraph" in err


def test_empty_graph_exits_3(capsys, temp_dir):
    path = temp_dir / "empty.edges"
    path.write_text("0\n")
    code, _, err = run(capsys, "spectrum", "--graph", str(path))
    assert code == EXIT_PRECONDITION
    assert "[ERROR] DisconnectedGraph" in err


def test_missing_graph_file_exits_2(capsys, temp_dir):
    code, _, _ = run(capsys, "spectrum", "--graph", str(temp_dir / "nope.edges"))
    assert code == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("spectrum",),
        ("spectrum", "--group", "cyclic:12", "--alpha", "1.5"),
        ("spectrum", "--group", "cyclic:12", "--alpha", "0,x"),
        ("verify", "--group", "pq:3,5"),
        ("spectrum", "--group", "cyclic:12", "--tol", "-1"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_output_file(capsys, temp_dir):
    target = temp_dir / "reports" / "spectrum.json"
    code, out, err = run(capsys, "spectrum", "--group", "pq:2,3", "--alpha", "0.5", "--format", "json", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert "Saved" in err
    assert json.loads(target.read_text())["input"] == "pq:2,3"


# =============================================================================
# verify
# =============================================================================


def test_verify_dihedral_reports_deviations(capsys):
    code, out, _ = run(capsys, "verify", "--group", "dihedral:6", "--alpha", "0,0.25,0.5,0.75,1", "--format", "human")
    assert code == EXIT_OK
    assert "All checks passed" in out
    assert "reflections (general statement)" in out


def test_verify_quaternion_power_of_two_path(capsys):
    code, out, _ = run(capsys, "verify", "--group", "quaternion:4", "--alpha", "0.5", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["passed"] is True
    assert data["reports"][0]["path"] == "power-of-two corollary"


def test_verify_plan_file(capsys, data_dir):
    plan = str(data_dir / "plans" / "multipartite_3x4.json")
    code, out, _ = run(capsys, "verify", "--plan", plan, "--alpha", "0", "--format", "json")
    assert code == EXIT_OK
    report = json.loads(out)["reports"][0]
    assert report["closed_form_checks"]["complete multipartite, equal parts"]["equal"] is True


def test_verify_csv_lists_every_source(capsys):
    code, out, _ = run(capsys, "verify", "--group", "pq:3,7", "--alpha", "0.5", "--format", "csv")
    assert code == EXIT_OK
    sources = {line.rsplit(",", 1)[1] for line in out.strip().splitlines()[1:]}
    assert {"oracle", "quotient"} <= sources
    assert "explicit:nonabelian pq (general)" in sources


def test_verify_compare_printed_lists_agreeing_formulas(capsys):
    code, out, _ = run(capsys, "verify", "--group", "quaternion:2", "--alpha", "0.5", "--format", "human", "--compare-printed")
    assert code == EXIT_OK
    assert "[OK] power-of-two quotient" in out


# =============================================================================
# sweep
# =============================================================================


def test_sweep_cyclic_range_with_metrics(capsys, temp_dir):
    metrics = temp_dir / "cyclic.json"
    code, out, _ = run(
        capsys, "sweep", "--family", "cyclic", "--range", "3..14", "--alpha", "0,0.5,1",
        "--workers", "1", "--metrics", str(metrics), "--format", "human",
    )
    assert code == EXIT_OK
    summary = json.loads(metrics.read_text())
    assert summary["checks"] == 36
    assert summary["failed"] == 0
    assert "36/36 checks passed" in out


def test_sweep_elemab_params(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "elemab", "--params", "2,1..3;3,1..2", "--alpha", "0.5", "--workers", "1", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["passed"] == 5


def test_sweep_family_with_inline_range(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "dihedral:3..6", "--alpha", "0.25", "--workers", "1", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["specs"] == 4


def test_sweep_skips_invalid_groups_with_warning(capsys):
    code, _, err = run(capsys, "sweep", "--family", "pq", "--params", "2,3..5", "--alpha", "0.5", "--workers", "1", "--format", "json")
    assert code == EXIT_OK
    assert "[WARNING] skipping pq:2,4" in err


def test_sweep_empty_range_exits_2(capsys):
    code, _, _ = run(capsys, "sweep", "--family", "cyclic", "--range", "5..2")
    assert code == EXIT_USAGE


# =============================================================================
# quotient and decompose
# =============================================================================


def test_quotient_dump_for_group(capsys):
    code, out, _ = run(capsys, "quotient", "--group", "elemab:3,2", "--alpha", "0.5", "--format", "json")
    assert code == EXIT_OK
    entry = json.loads(out)["quotients"][0]
    assert entry["block_quotient"]["k"] == 5
    assert entry["closed_form_quotient"]["k"] == 2
    assert entry["closed_form_quotient"]["equitable"] is True


def test_decompose_group(capsys):
    code, out, _ = run(capsys, "decompose", "--group", "cyclic:12", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["isomorphism"]["isomorphic"] is True
    assert data["plan"]["labels"][0] == "identity and generators"


def test_decompose_human(capsys):
    code, out, _ = run(capsys, "decompose", "--group", "quaternion:3")
    assert code == EXIT_OK
    assert "[OK] structural plan vs power graph" in out
