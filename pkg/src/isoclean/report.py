"""Statistics rows, parameter sweeps and the timing harness."""
from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

from isoclean.filtering import FilterOutcome, filter_components
from isoclean.isosurface import CubeCensus, count_cubes, marching_cubes
from isoclean.labeling import FilterMode
from isoclean.volume import VolumeGrid

__all__ = ["StatsRow", "STATS_COLUMNS", "make_row", "run_case", "sweep_thresholds",
           "sweep_isovalues", "emit", "load_rows", "thread_count"]


@dataclass(frozen=True)
class StatsRow:
    dataset: str
    isovalue: float
    mode: str
    threshold: int
    total_components: int
    components_removed: int
    removed_fraction: float
    scalar_values_modified: int
    active_cubes: int
    total_cubes: int
    label_filter_seconds: float
    mc_seconds: float

    def percent_removed(self) -> str:
        return f"{100.0 * self.removed_fraction:.1f}%"


STATS_COLUMNS = tuple(f.name for f in fields(StatsRow))
TIMING_COLUMNS = ("label_filter_seconds", "mc_seconds")


def thread_count() -> int:
    """Worker cap from ``ISOCLEAN_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("ISOCLEAN_THREADS", "1")))
    except ValueError:
        return 1


def make_row(outcome: FilterOutcome, census: CubeCensus, dataset: str,
             label_filter_seconds: float = 0.0, mc_seconds: float = 0.0) -> StatsRow:
    return StatsRow(
        dataset=dataset,
        isovalue=float(outcome.isovalue),
        mode=outcome.mode.value,
        threshold=int(outcome.threshold),
        total_components=outcome.total_components,
        components_removed=outcome.components_removed,
        removed_fraction=outcome.removed_fraction,
        scalar_values_modified=outcome.scalar_values_modified,
        active_cubes=census.active_cubes,
        total_cubes=census.total_cubes,
        label_filter_seconds=label_filter_seconds,
        mc_seconds=mc_seconds,
    )


def run_case(grid: VolumeGrid, isovalue: float, threshold: int, mode: FilterMode,
             dataset: str | None = None, extract: bool = True) -> StatsRow:
    """Filter once and census the unfiltered grid, timing both phases.

    ``label_filter_seconds`` covers labeling plus reassignment.
    ``mc_seconds`` covers the cube census plus full extraction of the
    input grid; set ``extract=False`` to skip the extraction and only
    count cubes.
    """
    t0 = time.perf_counter()
    outcome = filter_components(grid, isovalue, threshold, FilterMode(mode))
    t1 = time.perf_counter()
    census = count_cubes(grid, isovalue)
    if extract:
        marching_cubes(grid, isovalue)
    t2 = time.perf_counter()
    return make_row(outcome, census, grid.name if dataset is None else dataset,
                    t1 - t0, t2 - t1)


def _map_ordered(fn, items, workers):
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def sweep_thresholds(grid: VolumeGrid, isovalue: float, mode: FilterMode,
                     thresholds: Sequence[int], workers: int | None = None,
                     **kwargs) -> list[StatsRow]:
    thresholds = list(thresholds)
    if thresholds != sorted(thresholds):
        raise ValueError("thresholds must be sorted ascending")
    workers = thread_count() if workers is None else workers
    return _map_ordered(lambda t: run_case(grid, isovalue, t, mode, **kwargs),
                        thresholds, workers)


def sweep_isovalues(grid: VolumeGrid, isovalues: Sequence[float], threshold: int,
                    mode: FilterMode, workers: int | None = None,
                    **kwargs) -> list[StatsRow]:
    workers = thread_count() if workers is None else workers
    return _map_ordered(lambda s: run_case(grid, s, threshold, mode, **kwargs),
                        list(isovalues), workers)


def emit(rows: Iterable[StatsRow], format: str, path=None, timings: bool = True) -> str:
    """Serialize rows as CSV or JSON; write to ``path`` when given.

    Columns follow :data:`STATS_COLUMNS`. ``timings=False`` drops the
    wall-clock columns so the output is reproducible across runs.
    """
    columns = [c for c in STATS_COLUMNS if timings or c not in TIMING_COLUMNS]
    records = [{c: asdict(r)[c] for c in columns} for r in rows]
    fmt = format.lower()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        raise ValueError(f"unsupported stats format {format!r}; use 'csv' or 'json'")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_rows(path) -> list[StatsRow]:
    """Read rows written by :func:`emit` (JSON or CSV, timings included)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        records = json.loads(text)
    else:
        records = list(csv.DictReader(text.splitlines()))
    types = {f.name: f.type for f in fields(StatsRow)}
    casts = {"str": str, "float": float, "int": int}
    return [StatsRow(**{k: casts[types[k]](v) for k, v in rec.items()}) for rec in records]
