"""Acceptance checks for configuration round trips, determinism and exit codes."""

import math
import tempfile
from pathlib import Path
from typing import Any, Dict

import numpy as np

from config import default_manager

from ..check_base import CheckResult, VerifyCheck
from ..runner import ExitStatus, run_config

ROUND_TRIP_SAMPLES = 1000


def random_document(rng: np.random.Generator) -> Dict[str, Any]:
    """A random flat document that satisfies every key range and cross-field rule."""
    M = float(rng.uniform(0.1, 10.0))
    t0 = float(rng.uniform(0.1, 5.0))
    candidates = {
        "ring.M": M,
        "ring.l": float(rng.uniform(0.5, 5.0)),
        "ring.m_field": float(rng.uniform(0.0, 5.0)),
        "ring.L0": float(1.0 / (12.0 * math.pi * M) * rng.uniform(1.5, 50.0)),
        "ring.V0": float(rng.uniform(-0.9, 0.9)),
        "ring.t_end": float(rng.uniform(0.1, 10.0)),
        "ring.backreaction": bool(rng.integers(2)),
        "ring.compare": bool(rng.integers(2)),
        "ring.dense_dt": float(10.0 ** rng.uniform(-4.0, -1.0)),
        "box.l": float(rng.uniform(1.0, 100.0)),
        "box.m": float(rng.uniform(0.1, 50.0)),
        "box.t0": t0,
        "box.t_end": t0 + float(rng.uniform(0.1, 20.0)),
        "box.V0": [float(v) for v in rng.uniform(-0.9, 0.9, size=int(rng.integers(1, 4)))],
        "box.m_field": float(rng.uniform(0.0, 2.0)),
        "box.time_convention": str(rng.choice(["cosmic", "conformal"])),
        "box.creation_form": str(rng.choice(["closed", "reconciled"])),
        "box.partials": str(rng.choice(["fd", "analytic"])),
        "box.dense_dt": float(10.0 ** rng.uniform(-3.0, -1.0)),
        "ode.tol": float(10.0 ** rng.uniform(-12.5, -2.5)),
        "ode.method": str(rng.choice(["DOP853", "RK45", "RK23"])),
        "quad.rel_tol": float(10.0 ** rng.uniform(-13.5, -2.5)),
        "quad.abs_tol": float(10.0 ** rng.uniform(-15.0, -8.0)),
        "output.dir": f"results/run_{int(rng.integers(1000))}",
    }
    document: Dict[str, Any] = {"model": str(rng.choice(["ring", "box"]))}
    for key, value in candidates.items():
        if key in ("box.t_end", "box.t0", "ring.M", "ring.L0"):
            continue
        if rng.random() < 0.5:
            document[key] = value
    # pairs travel together so the cross-field rules also hold against the defaults
    for pair in (("box.t0", "box.t_end"), ("ring.M", "ring.L0")):
        if rng.random() < 0.5:
            document.update({key: candidates[key] for key in pair})
    return document


class ConfigRoundTripCheck(VerifyCheck):
    order = 130

    def get_name(self) -> str:
        return "config_round_trip"

    def get_anchor(self) -> str:
        return "parse_config(emit_config(c)) == c"

    def evaluate(self) -> CheckResult:
        manager = default_manager()
        rng = np.random.default_rng(2024)
        mismatches = 0
        for _ in range(ROUND_TRIP_SAMPLES):
            config = manager.build(random_document(rng))
            if manager.parse(manager.emit(config)) != config:
                mismatches += 1
        return self.result(mismatches == 0, mismatches, 0, 0, f"{ROUND_TRIP_SAMPLES} seeded configs")


def _quick_configs():
    manager = default_manager()
    ring = manager.build({"model": "ring", "ring.t_end": 0.5, "ring.compare": False,
                          "ring.dense_dt": 0.01})
    box = manager.build({"model": "box", "box.t_end": 1.5, "box.V0": [0.5], "box.dense_dt": 0.05})
    return ring, box


class RerunDeterminismCheck(VerifyCheck):
    order = 140

    def get_name(self) -> str:
        return "rerun_determinism"

    def get_anchor(self) -> str:
        return "identical configurations produce byte-identical CSV files"

    def evaluate(self) -> CheckResult:
        differing = []
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            for config in _quick_configs():
                outcomes = [run_config(config, out) for out in (first, second)]
                if any(outcome.status is ExitStatus.ERROR for outcome in outcomes):
                    differing.append(f"{config.model} run failed")
                    continue
                for path in outcomes[0].files:
                    if path.suffix != ".csv":
                        continue
                    if path.read_bytes() != (Path(second) / path.name).read_bytes():
                        differing.append(path.name)
        return self.result(not differing, differing, [], 0, "ring and box quick runs")


class ExitCodeCheck(VerifyCheck):
    order = 150

    def get_name(self) -> str:
        return "exit_codes"

    def get_anchor(self) -> str:
        return "0 on a clean run, 2 on a truncated run, 1 on error"

    def evaluate(self) -> CheckResult:
        manager = default_manager()
        ring, _ = _quick_configs()
        collapsing = manager.build({"model": "ring", "ring.t_end": 3.0, "ring.compare": False,
                                    "ring.dense_dt": 0.01})
        codes = {}
        with tempfile.TemporaryDirectory() as out:
            codes["clean"] = int(run_config(ring, out).status)
            codes["truncated"] = int(run_config(collapsing, out).status)
            blocker = Path(out) / "occupied"
            blocker.write_text("not a directory", encoding="utf-8")
            codes["error"] = int(run_config(ring, str(blocker)).status)
        expected = {"clean": int(ExitStatus.OK), "truncated": int(ExitStatus.TRUNCATED),
                    "error": int(ExitStatus.ERROR)}
        return self.result(codes == expected, codes, expected, 0, "error path writes into a regular file")
