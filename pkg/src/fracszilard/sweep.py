"""Parameter sweeps of the division cycle over (alpha, box size) grids.

A sweep evaluates the full cycle on every point of a grid and writes one
CSV row per point.  Points where the spectral series cannot be certified
within the term cap are reported with status ``truncation-failed`` and
empty numeric fields rather than aborting the sweep; points where the
device is not operating as an engine keep their heats and work but carry
status ``eta-undefined`` and an empty efficiency field.  A failed
closed-cycle energy audit, by contrast, is a code defect and propagates.

Output is deterministic: records are ordered by the configured alpha
list, then by ascending box size, independent of how many worker threads
evaluated them, and floats are written with repr-faithful precision so
repeated runs produce byte-identical files.
"""

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import constants
from .cycle import CycleConfig, run_cycle
from .thermo import SeriesTruncationError

DEFAULT_ALPHAS = (2.0, 1.8, 1.5, 1.2)
DEFAULT_A_MIN_NM = 0.5
DEFAULT_A_MAX_NM = 200.0
DEFAULT_A_COUNT = 200
DEFAULT_A_SPACING = "log"
DEFAULT_T_HOT_K = 2.0
DEFAULT_T_COLD_K = 1.0

CSV_HEADER = "alpha,a_nm,work_J,efficiency,q_ab_J,q_bc_J,q_cd_J,q_da_J,status"

STATUS_OK = "ok"
STATUS_TRUNCATION = "truncation-failed"
STATUS_ETA_UNDEFINED = "eta-undefined"

_TOP_LEVEL_KEYS = {
    "mass_kg",
    "chi",
    "t_hot_k",
    "t_cold_k",
    "tolerance",
    "term_cap",
    "alpha_list",
    "a_grid",
    "a_list_nm",
    "output_path",
}
_A_GRID_KEYS = {"min_nm", "max_nm", "count", "spacing"}


class ConfigError(ValueError):
    """A sweep configuration failed validation; the message names the field."""


@dataclass(frozen=True)
class SweepConfig:
    """Fully resolved sweep parameters (grids expanded, units SI)."""

    alpha_list: tuple
    a_list_nm: tuple
    t_hot_k: float = DEFAULT_T_HOT_K
    t_cold_k: float = DEFAULT_T_COLD_K
    mass_kg: float = constants.ELECTRON_MASS
    chi: float = constants.DEFAULT_CHI
    tolerance: float = constants.DEFAULT_TOLERANCE
    term_cap: int = constants.DEFAULT_TERM_CAP
    output_path: Optional[str] = None


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep; numeric fields are None on failure."""

    alpha: float
    a_nm: float
    work_j: Optional[float]
    efficiency: Optional[float]
    q_ab_j: Optional[float]
    q_bc_j: Optional[float]
    q_cd_j: Optional[float]
    q_da_j: Optional[float]
    status: str


def _require(condition, message):
    if not condition:
        raise ConfigError(message)


def _positive_float(raw, field):
    _require(isinstance(raw, (int, float)) and not isinstance(raw, bool),
             f"{field} must be a number, got {raw!r}")
    value = float(raw)
    _require(math.isfinite(value) and value > 0.0,
             f"{field} must be positive and finite, got {raw!r}")
    return value


def default_a_grid_nm():
    """The default box-size grid: 200 log-spaced points, 0.5 to 200 nm."""
    return tuple(
        float(a) for a in np.geomspace(DEFAULT_A_MIN_NM, DEFAULT_A_MAX_NM, DEFAULT_A_COUNT)
    )


def default_config():
    """The sweep configuration used when no file is given."""
    return SweepConfig(alpha_list=DEFAULT_ALPHAS, a_list_nm=default_a_grid_nm())


def _resolve_a_list(data):
    if "a_list_nm" in data and "a_grid" in data:
        raise ConfigError("give either a_list_nm or a_grid, not both")
    if "a_list_nm" in data:
        raw = data["a_list_nm"]
        _require(isinstance(raw, list) and raw, "a_list_nm must be a non-empty list")
        return tuple(_positive_float(v, f"a_list_nm[{i}]") for i, v in enumerate(raw))
    grid = data.get("a_grid", {})
    _require(isinstance(grid, dict), "a_grid must be an object")
    unknown = set(grid) - _A_GRID_KEYS
    _require(not unknown, f"unknown a_grid keys: {sorted(unknown)}")
    min_nm = _positive_float(grid.get("min_nm", DEFAULT_A_MIN_NM), "a_grid.min_nm")
    max_nm = _positive_float(grid.get("max_nm", DEFAULT_A_MAX_NM), "a_grid.max_nm")
    _require(min_nm < max_nm, "a_grid.min_nm must be below a_grid.max_nm")
    count_raw = grid.get("count", DEFAULT_A_COUNT)
    _require(
        isinstance(count_raw, int) and not isinstance(count_raw, bool) and count_raw >= 2,
        f"a_grid.count must be an integer >= 2, got {count_raw!r}",
    )
    spacing = grid.get("spacing", DEFAULT_A_SPACING)
    _require(spacing in ("log", "linear"),
             f"a_grid.spacing must be 'log' or 'linear', got {spacing!r}")
    if spacing == "log":
        values = np.geomspace(min_nm, max_nm, count_raw)
    else:
        values = np.linspace(min_nm, max_nm, count_raw)
    return tuple(float(a) for a in values)


def parse_config(source):
    """Build a SweepConfig from a dict, a JSON file path, or an open file.

    Unknown keys are rejected rather than ignored so that a typo in a
    config file fails loudly instead of silently running defaults.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from exc
    elif hasattr(source, "read"):
        try:
            data = json.load(source)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    else:
        data = source
    _require(isinstance(data, dict), "config root must be a JSON object")
    unknown = set(data) - _TOP_LEVEL_KEYS
    _require(not unknown, f"unknown config keys: {sorted(unknown)}")

    alphas_raw = data.get("alpha_list", list(DEFAULT_ALPHAS))
    _require(isinstance(alphas_raw, list) and alphas_raw,
             "alpha_list must be a non-empty list")
    alphas = []
    for i, raw in enumerate(alphas_raw):
        value = _positive_float(raw, f"alpha_list[{i}]")
        _require(value <= 2.0, f"alpha_list[{i}] must lie in (0, 2], got {raw!r}")
        alphas.append(value)

    tol = _positive_float(data.get("tolerance", constants.DEFAULT_TOLERANCE), "tolerance")
    _require(tol < 1.0, f"tolerance must lie in (0, 1), got {tol!r}")
    cap_raw = data.get("term_cap", constants.DEFAULT_TERM_CAP)
    _require(
        isinstance(cap_raw, int) and not isinstance(cap_raw, bool) and cap_raw >= 2,
        f"term_cap must be an integer >= 2, got {cap_raw!r}",
    )
    output_path = data.get("output_path")
    if output_path is not None:
        _require(isinstance(output_path, str) and output_path,
                 f"output_path must be a non-empty string, got {output_path!r}")

    return SweepConfig(
        alpha_list=tuple(alphas),
        a_list_nm=_resolve_a_list(data),
        t_hot_k=_positive_float(data.get("t_hot_k", DEFAULT_T_HOT_K), "t_hot_k"),
        t_cold_k=_positive_float(data.get("t_cold_k", DEFAULT_T_COLD_K), "t_cold_k"),
        mass_kg=_positive_float(data.get("mass_kg", constants.ELECTRON_MASS), "mass_kg"),
        chi=_positive_float(data.get("chi", constants.DEFAULT_CHI), "chi"),
        tolerance=tol,
        term_cap=cap_raw,
        output_path=output_path,
    )


def _evaluate_point(config, alpha, a_nm):
    cycle_config = CycleConfig(
        alpha=alpha,
        half_width_m=a_nm * 1e-9,
        t_hot_k=config.t_hot_k,
        t_cold_k=config.t_cold_k,
        mass_kg=config.mass_kg,
        chi=config.chi,
        tolerance=config.tolerance,
        term_cap=config.term_cap,
    )
    try:
        result = run_cycle(cycle_config)
    except SeriesTruncationError:
        return SweepRecord(alpha, a_nm, None, None, None, None, None, None,
                           STATUS_TRUNCATION)
    status = STATUS_OK if result.efficiency is not None else STATUS_ETA_UNDEFINED
    return SweepRecord(
        alpha=alpha,
        a_nm=a_nm,
        work_j=result.work_j,
        efficiency=result.efficiency,
        q_ab_j=result.q_ab_j,
        q_bc_j=result.q_bc_j,
        q_cd_j=result.q_cd_j,
        q_da_j=result.q_da_j,
        status=status,
    )


def run_sweep(config, workers=1):
    """Evaluate the cycle on the full grid; returns ordered SweepRecords.

    Order is the configured alpha order, ascending box size within each
    alpha, regardless of workers.  workers > 1 uses a thread pool; the
    compiled kernels release the GIL, so threads give real parallelism
    on the default backend and identical results in any case.
    """
    a_sorted = tuple(sorted(config.a_list_nm))
    points = [(alpha, a_nm) for alpha in config.alpha_list for a_nm in a_sorted]
    if workers is None:
        workers = min(8, os.cpu_count() or 1)
    workers = max(1, int(workers))
    if workers == 1:
        return [_evaluate_point(config, alpha, a_nm) for alpha, a_nm in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_evaluate_point, config, alpha, a_nm)
                   for alpha, a_nm in points]
        return [f.result() for f in futures]


def _format_field(value):
    if value is None:
        return ""
    return format(value, ".17g")


def write_csv(records, path_or_file):
    """Write sweep records as CSV with a fixed header and '\\n' endings.

    Floats use 17 significant digits, which round-trips doubles exactly;
    None fields are written empty.
    """
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", encoding="utf-8", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for rec in records:
            writer.writerow([
                _format_field(rec.alpha),
                _format_field(rec.a_nm),
                _format_field(rec.work_j),
                _format_field(rec.efficiency),
                _format_field(rec.q_ab_j),
                _format_field(rec.q_bc_j),
                _format_field(rec.q_cd_j),
                _format_field(rec.q_da_j),
                rec.status,
            ])
    finally:
        if own:
            fh.close()


def _parse_field(text):
    return None if text == "" else float(text)


def read_csv(path_or_file):
    """Read a sweep CSV back into SweepRecords (inverse of write_csv)."""
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "r", encoding="utf-8", newline="") if own else path_or_file
    try:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER.split(","):
            raise ValueError(f"unexpected CSV header: {header}")
        records = []
        for row in reader:
            if len(row) != 9:
                raise ValueError(f"expected 9 fields per row, got {len(row)}: {row}")
            records.append(SweepRecord(
                alpha=float(row[0]),
                a_nm=float(row[1]),
                work_j=_parse_field(row[2]),
                efficiency=_parse_field(row[3]),
                q_ab_j=_parse_field(row[4]),
                q_bc_j=_parse_field(row[5]),
                q_cd_j=_parse_field(row[6]),
                q_da_j=_parse_field(row[7]),
                status=row[8],
            ))
        return records
    finally:
        if own:
            fh.close()
