"""Deterministic serialization: region-scan CSV, matrix JSON, run metadata.

The CSV layout is frozen: one column per scan parameter (in axis order), then
cp, cop, cuboid, diag, reduction, exact, sampled_min.  Booleans are written as
0/1, floats with 12 significant digits, unavailable values ("exact" with no
registered predicate, skipped searches) as empty fields.  Rows are ordered
lexicographically by grid index, so output bytes depend only on inputs + seed.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

CSV_RESULT_COLUMNS = ("cp", "cop", "cuboid", "diag", "reduction", "exact", "sampled_min")


@dataclass
class RegionScan:
    axes: tuple[tuple[str, np.ndarray], ...]
    rows: list[dict]

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.axes)


def grid_axis(name: str, start: float, stop: float, step: float) -> tuple[str, np.ndarray]:
    """Inclusive-endpoint axis start, start+step, ..., stop."""
    if step <= 0:
        raise ValueError(f"axis {name}: step must be positive")
    count = int(np.floor((stop - start) / step + 1 + 1e-9))
    if count < 1:
        raise ValueError(f"axis {name}: empty range")
    return name, start + step * np.arange(count)


_WORKER_FN: Callable | None = None


def _init_worker(fn_factory, args):
    global _WORKER_FN
    _WORKER_FN = fn_factory(*args)


def _run_point(task):
    index, point, point_seed = task
    return _WORKER_FN(point, point_seed)


def run_region_scan(
    axes: Sequence[tuple[str, np.ndarray]],
    classify_point: Callable,
    seed: int,
    jobs: int = 1,
    worker_factory=None,
    worker_args=(),
) -> RegionScan:
    """Evaluate ``classify_point(point, point_seed)`` on the full grid.

    Per-point seeds derive from (seed, flat index), so results are independent
    of the number of workers; rows keep grid order.
    """
    axes = tuple((name, np.asarray(values, dtype=float)) for name, values in axes)
    points = list(itertools.product(*(vals for _, vals in axes)))
    tasks = [(i, pt, (int(seed), i)) for i, pt in enumerate(points)]
    if jobs <= 1 or worker_factory is None or len(tasks) < 4:
        rows = [classify_point(pt, s) for _, pt, s in tasks]
    else:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(worker_factory, worker_args)
        ) as pool:
            rows = list(pool.map(_run_point, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    return RegionScan(axes=axes, rows=rows)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def write_region_csv(scan: RegionScan, path: str) -> None:
    header = ",".join(scan.param_names + CSV_RESULT_COLUMNS)
    lines = [header]
    n_params = len(scan.param_names)
    for point, row in zip(itertools.product(*(vals for _, vals in scan.axes)), scan.rows):
        cells = [_format_cell(v) for v in point]
        cells += [_format_cell(row.get(col)) for col in CSV_RESULT_COLUMNS]
        lines.append(",".join(cells))
    _write_text(path, "\n".join(lines) + "\n")


def matrix_to_json_obj(matrix: np.ndarray) -> dict:
    m = np.asarray(matrix, dtype=complex)
    return {
        "dim": m.shape[0],
        "rows": [[[z.real, z.imag] for z in row] for row in m],
    }


def matrix_from_json_obj(obj: dict) -> np.ndarray:
    rows = obj["rows"]
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def write_matrix_json(matrix: np.ndarray, path: str) -> None:
    _write_text(path, json.dumps(matrix_to_json_obj(matrix), sort_keys=True) + "\n")


def read_matrix_json(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json_obj(json.load(fh))


def write_metadata(out_path: str, seed, argv: Sequence[str], extra: dict | None = None) -> str:
    """Adjacent <out>.meta.json with seed/version/command line; no timestamps, so
    repeated runs stay byte-identical."""
    from . import __version__

    meta = {
        "tool": "covmap",
        "version": __version__,
        "argv": list(argv),
        "seed": seed if not isinstance(seed, tuple) else list(seed),
    }
    if extra:
        meta.update(extra)
    meta_path = out_path + ".meta.json"
    _write_text(meta_path, json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return meta_path


def _write_text(path: str, text: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
