"""Batch execution of run configurations: CSV time series, JSON sidecars, sweeps."""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import yaml

from box3d import simulate_box
from config import (CONFIG_SCHEMA, ConfigError, MissingRequired, OutOfRange, RunConfig, UnknownKey,
                    default_manager)
from ring1d import compare_collapse, el_residual, simulate_ring
from sim_core import BOX_COLUMNS, RING_COLUMNS, SimulationRecord
from utils.helpers import ensure_directory, save_json_file, write_csv

logger = logging.getLogger(__name__)

LIBRARY_VERSION = "0.1.0"
WORKERS_ENV = "DCE_WORKERS"

SUMMARY_COLUMNS = ["point", "key", "value", "run", "status", "halt_reason", "t_final", "L_final",
                   "Ldot_final", "lenz", "error"]


class ExitStatus(IntEnum):
    OK = 0
    ERROR = 1
    TRUNCATED = 2


@dataclass
class RunOutcome:
    status: ExitStatus
    files: List[Path] = field(default_factory=list)
    records: Dict[str, SimulationRecord] = field(default_factory=dict)
    message: str = ""


def _ring_records(config: RunConfig, tol: float) -> Dict[str, SimulationRecord]:
    params = config.ring_params()
    ic = (config.get("ring.L0"), config.get("ring.V0"))
    t_end = config.get("ring.t_end")
    dense_dt = config.get("ring.dense_dt")
    method = config.get("ode.method")
    backreaction = config.get("ring.backreaction")

    if not config.get("ring.compare"):
        return {"ring": simulate_ring(params, ic, t_end, backreaction, tol, dense_dt, method)}

    comparison = compare_collapse(params, ic, t_end, tol, dense_dt, method)
    primary, other = comparison.backreaction, comparison.no_backreaction
    if not backreaction:
        primary, other = other, primary
    primary.diagnostics["collapse_gap_max"] = float(comparison.gap.max()) if comparison.gap.size else 0.0
    primary.diagnostics["collapse_accelerated"] = comparison.bkr_below(0.05)
    other_name = "ring_no_backreaction" if backreaction else "ring_backreaction"
    return {"ring": primary, other_name: other}


def _box_records(config: RunConfig, tol: float) -> Dict[str, SimulationRecord]:
    params = config.box_params()
    records = {}
    for index, v0 in enumerate(config.get("box.V0")):
        records[f"box_{index:02d}"] = simulate_box(params, (params.L0, v0), config.get("box.t_end"),
                                                   tol, config.get("box.dense_dt"),
                                                   config.get("ode.method"))
    return records


def _sidecar(name: str, record: SimulationRecord, config: RunConfig, columns: Sequence[str]) -> Dict[str, Any]:
    diagnostics = dict(record.diagnostics)
    energies = record.energy_breakdown()
    if record.model.value == "ring" and record.n_samples >= 3:
        diagnostics["el_residual"] = el_residual(record, config.ring_params(),
                                                 bool(record.params.get("backreaction", True)))
    return {
        "name": name,
        "version": LIBRARY_VERSION,
        "config": config.to_flat(),
        "columns": list(columns),
        "samples": record.n_samples,
        "halt_reason": record.halt_reason.value,
        "halt_time": record.halt_time,
        "truncated": record.truncated,
        "run_params": record.params,
        "diagnostics": diagnostics,
        "final_energies": {**asdict(energies), "total": energies.total},
    }


def write_record(record: SimulationRecord, name: str, out_dir: Path, config: RunConfig) -> List[Path]:
    columns = RING_COLUMNS if record.model.value == "ring" else BOX_COLUMNS
    csv_path = out_dir / f"{name}.csv"
    write_csv(str(csv_path), columns, record.rows(columns))
    json_path = out_dir / f"{name}.json"
    if not save_json_file(_sidecar(name, record, config, columns), str(json_path)):
        raise OSError(f"could not write {json_path}")
    return [csv_path, json_path]


def run_config(config: RunConfig, out_dir: Optional[str] = None, tol: Optional[float] = None) -> RunOutcome:
    """Simulate one configuration and emit its files; failures become an exit status."""
    target = Path(out_dir or config.get("output.dir"))
    tol = float(tol if tol is not None else config.get("ode.tol"))
    try:
        ensure_directory(str(target))
        if config.model == "ring":
            records = _ring_records(config, tol)
        else:
            records = _box_records(config, tol)

        files: List[Path] = []
        for name, record in records.items():
            files.extend(write_record(record, name, target, config))

        truncated = [name for name, record in records.items() if record.truncated]
        if truncated:
            logger.warning("Truncated run(s): %s", ", ".join(truncated))
            return RunOutcome(ExitStatus.TRUNCATED, files, records, "truncated: " + ", ".join(truncated))
        logger.info("Wrote %d files to %s", len(files), target)
        return RunOutcome(ExitStatus.OK, files, records)

    except OSError as e:
        logger.error("I/O error under %s: %s", target, e)
        return RunOutcome(ExitStatus.ERROR, message=f"{target}: {e}")
    except Exception as e:
        logger.error("Run failed: %s", e)
        return RunOutcome(ExitStatus.ERROR, message=str(e))


def parse_axis(text: str) -> Tuple[str, List[Any]]:
    """'key=v1,v2,...' -> (key, values); the key must name a numeric field."""
    if "=" not in text:
        raise ConfigError(f"sweep axis must read key=v1,v2,..., got {text!r}")
    key, _, raw = text.partition("=")
    key = key.strip()
    if key not in CONFIG_SCHEMA:
        raise UnknownKey([key])
    if CONFIG_SCHEMA[key]["type"] not in ("number", "array"):
        raise OutOfRange(key, raw, "a numeric configuration key")
    values = [yaml.safe_load(item) for item in raw.split(",") if item.strip()]
    if not values:
        raise MissingRequired(f"{key} (sweep values)")
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise OutOfRange(key, value, "numeric sweep values")
    return key, values


def worker_count(points: int) -> int:
    cap = os.environ.get(WORKERS_ENV)
    workers = os.cpu_count() or 1
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", WORKERS_ENV, cap)
    return max(1, min(workers, points))


def _failed_row(index: int, key: str, value: Any, error: str) -> Dict[str, Any]:
    return {"point": index, "key": key, "value": value, "run": "", "status": "error",
            "halt_reason": "", "t_final": float("nan"), "L_final": float("nan"),
            "Ldot_final": float("nan"), "lenz": "", "error": error.replace(",", ";").replace("\n", " ")}


def _run_point(task: Tuple[int, str, Any, Dict[str, Any], str, Optional[float]]) -> List[Dict[str, Any]]:
    index, key, value, flat, out_dir, tol = task
    try:
        config = default_manager().with_value(default_manager().build(flat), key, value)
    except ConfigError as e:
        return [_failed_row(index, key, value, str(e))]
    outcome = run_config(config, out_dir, tol)
    if outcome.status is ExitStatus.ERROR:
        return [_failed_row(index, key, value, outcome.message)]
    rows = []
    for name, record in outcome.records.items():
        final = record.final_state()
        lenz = record.diagnostics.get("lenz", "")
        rows.append({"point": index, "key": key, "value": value, "run": name,
                     "status": "truncated" if record.truncated else "ok",
                     "halt_reason": record.halt_reason.value, "t_final": final.t, "L_final": final.L,
                     "Ldot_final": final.L_dot, "lenz": lenz, "error": ""})
    return rows


@dataclass
class SweepOutcome:
    status: ExitStatus
    summary_path: Optional[Path]
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def failed_points(self) -> List[int]:
        return sorted({row["point"] for row in self.rows if row["status"] == "error"})


def sweep(config: RunConfig, key: str, values: Sequence[Any], out_dir: Optional[str] = None,
          tol: Optional[float] = None, workers: Optional[int] = None) -> SweepOutcome:
    """One run per axis value on a bounded process pool, plus a summary CSV."""
    if not values:
        raise MissingRequired(f"{key} (sweep values)")
    target = ensure_directory(str(out_dir or config.get("output.dir")))
    flat = config.to_flat()
    tasks = [(i, key, v, flat, str(target / f"point_{i:03d}"), tol) for i, v in enumerate(values)]
    workers = workers or worker_count(len(tasks))
    logger.info("Sweeping %s over %d values with %d worker(s)", key, len(tasks), workers)

    if workers == 1:
        results = [_run_point(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_point, tasks))

    rows = [row for point_rows in results for row in point_rows]
    summary_path = target / "summary.csv"
    try:
        write_csv(str(summary_path), SUMMARY_COLUMNS, ([row[c] for c in SUMMARY_COLUMNS] for row in rows))
    except OSError as e:
        logger.error("Could not write sweep summary %s: %s", summary_path, e)
        return SweepOutcome(ExitStatus.ERROR, None, rows)

    statuses = {row["status"] for row in rows}
    if "error" in statuses:
        logger.warning("Sweep finished with failed points: %s",
                       sorted({row["point"] for row in rows if row["status"] == "error"}))
        status = ExitStatus.ERROR
    elif "truncated" in statuses:
        status = ExitStatus.TRUNCATED
    else:
        status = ExitStatus.OK
    return SweepOutcome(status, summary_path, rows)
