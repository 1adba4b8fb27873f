import csv
import importlib
import io
import json

import pytest

from emspinor import cli, report
from emspinor.report import CHECKS, OPERATIONS, RunConfig, UsageError


def test_every_check_maps_to_one_existing_operation():
    for chk in CHECKS.values():
        mod, name = chk.operation.split(".")
        assert callable(getattr(importlib.import_module(f"emspinor.{mod}"), name))
        assert chk.suite in report.SUITES


def test_every_operation_is_exercised():
    covered = {c.operation for c in CHECKS.values()}
    assert covered == set(OPERATIONS)


def test_every_row_has_a_tag():
    assert all(c.tag for c in CHECKS.values())


@pytest.mark.parametrize("sizes", [(64, 32), (6, 8, 16), (9, 18, 36), ()])
def test_bad_sizes(sizes):
    with pytest.raises(UsageError):
        RunConfig(sizes=sizes).validate()


def test_unknown_tolerance_key():
    with pytest.raises(UsageError):
        RunConfig(tolerances={"nope": 1.0}).validate()


def test_unknown_suite():
    with pytest.raises(UsageError):
        report.run_suite(RunConfig(suite="optics"))


def test_convergence_needs_three_sizes():
    with pytest.raises(UsageError):
        report.convergence_study(RunConfig(sizes=(64, 128)).validate(), "massless-advection")


def test_static_zero_reports_exact():
    rows = report.convergence_study(RunConfig().validate(), "static-zero")
    assert [r["error"] for r in rows] == [0.0, 0.0, 0.0]
    assert [r["order"] for r in rows] == [None, "exact", "exact"]


def test_first_order_debug_flag():
    rows = report.convergence_study(RunConfig(first_order=True).validate(), "spin1-residual")
    assert all(abs(r["order"] - 1.0) < 0.1 for r in rows[1:])
    with pytest.raises(UsageError):
        report.convergence_study(RunConfig(first_order=True).validate(), "massless-advection")


def test_massless_advection_second_order():
    rows = report.convergence_study(RunConfig().validate(), "massless-advection")
    assert all(abs(r["order"] - 2.0) < 0.1 for r in rows[1:])


def test_informational_rows_only_in_literal_mode():
    plain = report.run_suite(RunConfig(suite="plane-waves"))
    lit = report.run_suite(RunConfig(suite="plane-waves", paper_literal=True))
    assert all(r.status == "pass" for r in plain)
    ids = {r.check_id: r.status for r in lit}
    assert ids["plane_waves.amplitude_set:paper_literal"] == "pass"
    assert ids["plane_waves.dirac_plane_residual:paper_literal"] == "informational"


def test_verify_algebra_exit_zero(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "algebra", "--out", str(out)]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert {"spec_version", "seed", "units"} <= set(doc["manifest"])
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_failing_check_gives_nonzero_exit(tmp_path):
    out = tmp_path / "r.json"
    rc = cli.main(["verify", "born-infeld", "--tol", "born_infeld.bi_weak_field=1e-30",
                   "--out", str(out)])
    assert rc == 1
    doc = json.loads(out.read_text())
    st = {c["check_id"]: c["status"] for c in doc["checks"]}
    assert st["born_infeld.bi_weak_field"] == "fail"


def test_informational_rows_never_fail_the_build(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "nonlinear", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["informational"] == 2


def test_unknown_suite_writes_nothing(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "optics", "--out", str(out)]) == 2
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []
    assert "unknown suite" in capsys.readouterr().err


def test_fixed_clock_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert cli.main(["verify", "nonlinear", "--seed", "11", "--fixed-clock",
                         "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_changes_random_sweeps(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["verify", "algebra", "--seed", "1", "--fixed-clock", "--out", str(a)])
    cli.main(["verify", "algebra", "--seed", "2", "--fixed-clock", "--out", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_csv_output_parses(tmp_path):
    out = tmp_path / "r.csv"
    cli.main(["verify", "massive-em", "--format", "csv", "--out", str(out)])
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert {r["check_id"] for r in rows} == {c.check_id for c in CHECKS.values()
                                              if c.suite == "massive-em"}
    for r in rows:
        json.loads(r["measured"])


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep settings\nseed = 5\nunits = gaussian\nn = 64,128,256\n")
    out = tmp_path / "r.json"
    cli.main(["verify", "algebra", "--config", str(cfg), "--seed", "9", "--out", str(out)])
    m = json.loads(out.read_text())["manifest"]
    assert m["seed"] == 9 and m["units"] == "gaussian" and m["sizes"] == [64, 128, 256]


def test_malformed_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert cli.main(["verify", "algebra", "--config", str(cfg)]) == 2


def test_converge_cli(capsys):
    assert cli.main(["converge", "static-zero", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["N,error,order", "128,0.0,", "256,0.0,exact", "512,0.0,exact"]


def test_profile_and_export(tmp_path):
    prof = tmp_path / "bi.csv"
    assert cli.main(["profile", "born-infeld", "--points", "5", "--out", str(prof)]) == 0
    assert prof.read_text().splitlines()[0] == "r_over_r0,D,E,eps_eff"
    grid = tmp_path / "g.csv"
    assert cli.main(["export", "grid", "--n", "16", "--steps", "4", "--out", str(grid)]) == 0
    assert len(grid.read_text().splitlines()) == 17
    assert cli.main(["export", "grid", "--n", "16", "--courant", "2", "--out",
                     str(tmp_path / "x.csv")]) == 2
    assert not (tmp_path / "x.csv").exists()
