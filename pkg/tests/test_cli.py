#!/usr/bin/env python3
"""
Configuration, run/sweep plumbing and acceptance check discovery tests
"""

import json
import math
import os
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import numpy as np
from click.testing import CliRunner

import ring1d.casimir
from cli import (CheckLevel, CheckManager, CheckStatus, ExitStatus, parse_axis, run_config, sweep,
                 worker_count)
from cli.checks.box_checks import MatterBoundCheck
from cli.checks.plumbing_checks import random_document
from cli.checks.ring_checks import CasimirOracleCheck
from config import (ConfigError, ConfigManager, MissingRequired, OutOfRange, UnknownKey,
                    default_manager, emit_config, flatten, parse_config)
from config.config_manager import DEFAULTS_PATH
from main import main
from sim_core import BOX_COLUMNS, RING_COLUMNS
from utils.helpers import load_json_file, load_yaml_file, read_csv


def _quick_ring(**overrides):
    document = {"model": "ring", "ring.t_end": 0.5, "ring.compare": False, "ring.dense_dt": 0.01}
    document.update(overrides)
    return default_manager().build(document)


def test_defaults_are_filled_in():
    manager = ConfigManager()
    ring = manager.get_default_config("ring")
    assert ring.model == "ring"
    assert ring.get("ring.M") == 1.0
    assert ring.get("ring.t_end") == 2.0
    assert ring.get("ode.method") == "DOP853"
    box = manager.get_default_config("box")
    assert box.get("box.V0") == [-0.5, 0.5]
    assert box.get("box.l") == 50.0
    assert box.section("quad") == {"rel_tol": 1e-9, "abs_tol": 1e-13}
    params = box.box_params()
    assert params.l == 50.0 and params.m_mirror == 10.0
    print("✓ defaults loaded for both models")


def test_missing_defaults_file_falls_back_to_schema():
    manager = ConfigManager(config_path="/nonexistent/defaults.json")
    assert manager.get("ring.M") == 1.0
    assert manager.get("box.V0") == [-0.5, 0.5]


def test_nested_and_bare_keys_are_flattened():
    assert flatten({"model": "box", "l": 20.0, "ode": {"tol": 1e-8}}, "box") == \
        {"model": "box", "box.l": 20.0, "ode.tol": 1e-8}
    config = parse_config("model: ring\nring:\n  M: 2\n  L0: 0.5\nt_end: 1\n")
    assert config.get("ring.M") == 2.0
    assert isinstance(config.get("ring.M"), float)
    assert config.get("ring.t_end") == 1.0
    assert config.ring_params().critical_length == 1.0 / (24.0 * math.pi)


def test_scalar_velocity_becomes_a_list():
    config = default_manager().build({"model": "box", "box.V0": 0.25})
    assert config.get("box.V0") == [0.25]


def test_configuration_errors():
    manager = default_manager()
    cases = [
        ({"model": "ring", "ring.mass": 1.0}, UnknownKey),
        ({"ring.M": 1.0}, MissingRequired),
        (None, MissingRequired),
        ({"model": "torus"}, OutOfRange),
        ({"model": "ring", "ring.M": -1.0}, OutOfRange),
        ({"model": "ring", "ring.V0": 1.0}, OutOfRange),
        ({"model": "ring", "ode.tol": 1e-15}, OutOfRange),
        ({"model": "ring", "run.deterministic": False}, OutOfRange),
        ({"model": "box", "box.V0": []}, OutOfRange),
        ({"model": "box", "box.t0": 5.0, "box.t_end": 2.0}, OutOfRange),
        ({"model": "ring", "ring.L0": 0.01}, OutOfRange),
    ]
    for document, expected in cases:
        try:
            manager.build(document)
        except expected:
            continue
        raise AssertionError(f"expected {expected.__name__} for {document}")
    # below the critical length is fine without backreaction
    assert manager.build({"model": "ring", "ring.L0": 0.01, "ring.backreaction": False})
    try:
        manager.parse("model: [ring")
    except ConfigError:
        pass
    else:
        raise AssertionError("malformed YAML should raise ConfigError")


def test_out_of_range_names_key_and_range():
    try:
        default_manager().build({"model": "ring", "ring.V0": 1.5})
    except OutOfRange as e:
        assert e.key == "ring.V0"
        assert e.value == 1.5
        assert "< 1" in e.allowed
    else:
        raise AssertionError("expected OutOfRange")


def test_config_round_trip_over_random_documents():
    manager = default_manager()
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        config = manager.build(random_document(rng))
        assert parse_config(emit_config(config)) == config
    print("✓ 1000 configurations survive emit/parse")


def test_load_reads_files_through_helpers():
    manager = default_manager()
    with tempfile.TemporaryDirectory() as out:
        good = Path(out) / "ring.yaml"
        good.write_text("model: ring\nring:\n  M: 2\n", encoding="utf-8")
        assert manager.load(str(good)).get("ring.M") == 2.0

        broken = Path(out) / "broken.yaml"
        broken.write_text("model: [ring\n", encoding="utf-8")
        try:
            manager.load(str(broken))
        except ConfigError as e:
            assert "broken.yaml" in str(e)
        else:
            raise AssertionError("malformed YAML file should raise ConfigError")

        try:
            manager.load(str(Path(out) / "absent.yaml"))
        except ConfigError:
            raise AssertionError("a missing file is an I/O problem, not a configuration error")
        except OSError:
            pass
        else:
            raise AssertionError("a missing file should raise OSError")

        assert load_yaml_file(str(good)) == {"model": "ring", "ring": {"M": 2}}
        assert load_json_file(str(DEFAULTS_PATH))["ring"]["M"] == 1.0


def test_with_value_revalidates():
    manager = default_manager()
    config = manager.get_default_config("ring")
    changed = manager.with_value(config, "ring.V0", 0.2)
    assert changed.get("ring.V0") == 0.2
    assert config.get("ring.V0") == 0.0
    try:
        manager.with_value(config, "ring.V0", 2.0)
    except OutOfRange:
        pass
    else:
        raise AssertionError("with_value must revalidate")


def test_ring_run_writes_csv_and_sidecar():
    with tempfile.TemporaryDirectory() as out:
        outcome = run_config(_quick_ring(), out)
        assert outcome.status is ExitStatus.OK
        names = sorted(path.name for path in outcome.files)
        assert names == ["ring.csv", "ring.json"]
        csv_path = Path(out) / "ring.csv"
        raw = csv_path.read_bytes()
        assert b"\r\n" not in raw
        header, rows = read_csv(str(csv_path))
        assert header == RING_COLUMNS
        assert len(rows) == 51
        assert rows[0][1] == 1.0
        meta = json.loads((Path(out) / "ring.json").read_text(encoding="utf-8"))
        assert meta["halt_reason"] == "completed"
        assert meta["truncated"] is False
        assert meta["columns"] == RING_COLUMNS
        assert meta["config"]["model"] == "ring"
        assert meta["diagnostics"]["el_residual"] < 1e-2
        energies = meta["final_energies"]
        assert set(energies) == {"casimir", "kinetic_anomaly", "creation", "kinetic", "matter_bound", "total"}
        assert math.isclose(energies["total"], rows[-1][RING_COLUMNS.index("E_total")], rel_tol=1e-12)


def test_reruns_are_byte_identical():
    with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
        config = _quick_ring()
        run_config(config, first)
        run_config(config, second)
        assert (Path(first) / "ring.csv").read_bytes() == (Path(second) / "ring.csv").read_bytes()


def test_ring_comparison_writes_both_runs():
    with tempfile.TemporaryDirectory() as out:
        outcome = run_config(_quick_ring(**{"ring.compare": True}), out)
        assert outcome.status is ExitStatus.OK
        assert set(outcome.records) == {"ring", "ring_no_backreaction"}
        assert "collapse_gap_max" in outcome.records["ring"].diagnostics


def test_box_run_writes_one_table_per_velocity():
    config = default_manager().build({"model": "box", "box.t_end": 1.5, "box.dense_dt": 0.05})
    with tempfile.TemporaryDirectory() as out:
        outcome = run_config(config, out)
        assert outcome.status is ExitStatus.OK
        tables = sorted(path.name for path in outcome.files if path.suffix == ".csv")
        assert tables == ["box_00.csv", "box_01.csv"]
        header, rows = read_csv(str(Path(out) / "box_00.csv"))
        assert header == BOX_COLUMNS
        assert rows[0][0] == 1.0
        assert rows[-1][0] == 1.5


def test_exit_codes():
    with tempfile.TemporaryDirectory() as out:
        truncated = run_config(_quick_ring(**{"ring.t_end": 3.0}), out)
        assert truncated.status is ExitStatus.TRUNCATED
        assert truncated.records["ring"].halt_reason.value == "critical_length"
        blocker = Path(out) / "occupied"
        blocker.write_text("x", encoding="utf-8")
        failed = run_config(_quick_ring(), str(blocker))
        assert failed.status is ExitStatus.ERROR
        assert "occupied" in failed.message
    assert int(ExitStatus.OK) == 0 and int(ExitStatus.ERROR) == 1 and int(ExitStatus.TRUNCATED) == 2


def test_parse_axis():
    assert parse_axis("ring.V0=0,0.1,-0.2") == ("ring.V0", [0, 0.1, -0.2])
    assert parse_axis(" box.m = 5,10") == ("box.m", [5, 10])
    for text, expected in (("ring.mass=1", UnknownKey), ("ode.method=1,2", OutOfRange),
                           ("ring.V0=a,b", OutOfRange), ("ring.V0=", MissingRequired),
                           ("ring.V0", ConfigError)):
        try:
            parse_axis(text)
        except expected:
            continue
        raise AssertionError(f"expected {expected.__name__} for {text!r}")


def test_worker_count_honours_environment():
    previous = os.environ.get("DCE_WORKERS")
    try:
        os.environ["DCE_WORKERS"] = "1"
        assert worker_count(8) == 1
        os.environ["DCE_WORKERS"] = "lots"
        assert 1 <= worker_count(3) <= 3
    finally:
        if previous is None:
            os.environ.pop("DCE_WORKERS", None)
        else:
            os.environ["DCE_WORKERS"] = previous
    assert worker_count(1) == 1


def test_sweep_writes_summary():
    with tempfile.TemporaryDirectory() as out:
        outcome = sweep(_quick_ring(), "ring.V0", [0.0, -0.1], out, workers=1)
        assert outcome.status is ExitStatus.OK
        assert outcome.summary_path == Path(out) / "summary.csv"
        assert (Path(out) / "point_000" / "ring.csv").exists()
        assert (Path(out) / "point_001" / "ring.csv").exists()
        assert [row["value"] for row in outcome.rows] == [0.0, -0.1]
        assert outcome.failed_points == []
        lines = outcome.summary_path.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("point,key,value,run,status")
        assert len(lines) == 3


def test_sweep_reports_failing_points():
    with tempfile.TemporaryDirectory() as out:
        outcome = sweep(_quick_ring(), "ring.V0", [0.0, 1.5], out, workers=1)
        assert outcome.status is ExitStatus.ERROR
        assert outcome.failed_points == [1]
        assert outcome.rows[0]["status"] == "ok"
        assert "out of range" in outcome.rows[1]["error"]


def test_check_discovery_and_ordering():
    manager = CheckManager(CheckLevel.FAST)
    checks = manager.load_checks()
    names = [check.get_name() for check in manager.ordered_checks()]
    assert len(checks) == 15
    assert names[0] == "rho2_oracle"
    assert names[-1] == "exit_codes"
    assert "creation_oracle_grid" in names


def test_fast_level_skips_the_oracle_grid():
    from cli.checks.box_checks import CreationOracleGridCheck

    result = CreationOracleGridCheck().run(CheckLevel.FAST)
    assert result.status is CheckStatus.SKIPPED
    assert not result.failed


def test_casimir_check_catches_a_wrong_coefficient():
    assert CasimirOracleCheck().run(CheckLevel.FAST).status is CheckStatus.PASS
    original = ring1d.casimir.CASIMIR_COEFFICIENT
    ring1d.casimir.CASIMIR_COEFFICIENT = math.pi / 5.0
    try:
        result = CasimirOracleCheck().run(CheckLevel.FAST)
    finally:
        ring1d.casimir.CASIMIR_COEFFICIENT = original
    assert result.status is CheckStatus.FAIL
    assert result.failed


def test_matter_bound_detail_names_the_deciding_estimate():
    result = MatterBoundCheck().run(CheckLevel.FAST)
    assert result.status in (CheckStatus.PASS, CheckStatus.DOCUMENTED_OPEN)
    assert result.computed["direct_ratio"] < 1e-2
    assert "direct estimate" in result.detail
    if result.computed["energy_balance_ratio"] >= 1e-2:
        assert result.status is CheckStatus.DOCUMENTED_OPEN
        assert "does NOT meet the limit" in result.detail


def test_command_line_run():
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("ring.yaml").write_text(
            "model: ring\nring:\n  t_end: 0.5\n  compare: false\n  dense_dt: 0.01\n", encoding="utf-8")
        result = runner.invoke(main, ["--quiet", "run", "ring.yaml", "--out", "out"])
        assert result.exit_code == 0, result.output
        assert Path("out/ring.csv").exists()

        Path("bad.yaml").write_text("model: ring\nring:\n  M: -1\n", encoding="utf-8")
        result = runner.invoke(main, ["--quiet", "run", "bad.yaml"])
        assert result.exit_code == 1


if __name__ == "__main__":
    for name, func in sorted(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
    print("✅ cli tests completed successfully!")
